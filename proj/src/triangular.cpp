#include "atomspec/triangular.hpp"

#include <algorithm>

#include "atomspec/errors.hpp"
#include "json.hpp"

namespace atomspec {

BimoduleDescriptor BimoduleDescriptor::vector_space(long long p, int r) {
  BaseRing::prime_field(p);  // validates primality
  if (r < 0) throw UsageError("bimodule rank must be nonnegative");
  BimoduleDescriptor d;
  d.group = Group::VectorSpace;
  d.p = p;
  d.r = r;
  return d;
}

BimoduleDescriptor BimoduleDescriptor::cyclic(long long m) {
  if (m < 1) throw UsageError("cyclic bimodule modulus must be >= 1");
  BimoduleDescriptor d;
  d.group = Group::Cyclic;
  d.m = m;
  return d;
}

std::string BimoduleDescriptor::display() const {
  if (group == Group::Cyclic) return "Z/" + std::to_string(m);
  std::string s = "F" + std::to_string(p);
  if (r != 1) s += "^" + std::to_string(r);
  return s;
}

namespace {

BimoduleDescriptor parse_group_text(const std::string& text) {
  auto caret = text.find('^');
  std::string head = text.substr(0, caret);
  try {
    if (head.size() > 1 && head[0] == 'F') {
      long long p = std::stoll(head.substr(1));
      int r = 1;
      if (caret != std::string::npos)
        r = static_cast<int>(std::stoll(text.substr(caret + 1)));
      return BimoduleDescriptor::vector_space(p, r);
    }
    if (head.size() > 2 && head.rfind("Z/", 0) == 0 &&
        caret == std::string::npos)
      return BimoduleDescriptor::cyclic(std::stoll(head.substr(2)));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    // fall through to the generic rejection
  }
  throw UsageError("unknown bimodule group \"" + text +
                   "\" (expected F<p>, F<p>^<r>, or Z/<m>)");
}

// Explicit action tables must be the canonical one: the identity matrix
// (VectorSpace) or 1 (Cyclic) as the action of the ring generator 1.
void check_action(const nlohmann::json& action,
                  const BimoduleDescriptor& d, const std::string& side) {
  if (action.is_null()) return;
  if (action.is_string() && action.get<std::string>() == "canonical") return;
  bool ok = false;
  if (d.group == BimoduleDescriptor::Group::Cyclic) {
    ok = action.is_number_integer() && action.get<long long>() == 1;
  } else if (action.is_array() &&
             static_cast<int>(action.size()) == d.r) {
    ok = true;
    for (int i = 0; i < d.r && ok; ++i) {
      if (!action[i].is_array() ||
          static_cast<int>(action[i].size()) != d.r) {
        ok = false;
        break;
      }
      for (int j = 0; j < d.r; ++j) {
        long long want = i == j ? 1 : 0;
        if (!action[i][j].is_number_integer() ||
            action[i][j].get<long long>() != want) {
          ok = false;
          break;
        }
      }
    }
  }
  if (!ok)
    throw UsageError(side +
                     " action table does not match the canonical unital "
                     "action of a ring generated by 1");
}

}  // namespace

BimoduleDescriptor parse_bimodule_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad bimodule JSON: ") + e.what(), 1, 1);
  }
  if (!j.is_object() || !j.contains("group") || !j["group"].is_string())
    throw UsageError("bimodule JSON must be an object with a \"group\" field");
  BimoduleDescriptor d = parse_group_text(j["group"].get<std::string>());
  check_action(j.value("left_action", nlohmann::json()), d, "left");
  check_action(j.value("right_action", nlohmann::json()), d, "right");
  return d;
}

std::string TriangularRing::display() const {
  return "[[" + A.display() + ",0],[" + M.display() + "," + B.display() +
         "]]";
}

namespace {

// A canonical unital action of `ring` on the group exists iff the group's
// exponent divides every ring modulus relation, i.e. the natural map
// Z -> End(M) factors through the ring.
void check_compatible(const BaseRing& ring, const BimoduleDescriptor& M,
                      const std::string& side) {
  long long exponent =
      M.group == BimoduleDescriptor::Group::Cyclic ? M.m : M.p;
  if (M.group == BimoduleDescriptor::Group::VectorSpace && M.r == 0) return;
  if (M.group == BimoduleDescriptor::Group::Cyclic && exponent == 1) return;
  switch (ring.kind()) {
    case RingKind::IntegerRing:
      return;
    case RingKind::PrimeField:
    case RingKind::IntegerModN:
      if (ring.modulus() % exponent == 0) return;
      break;
  }
  throw UsageError("the bimodule " + M.display() + " carries no unital " +
                   side + " action of " + ring.display());
}

}  // namespace

TriangularRing make_triangular(const BaseRing& A, const BaseRing& B,
                               const BimoduleDescriptor& M) {
  check_compatible(B, M, "left");
  check_compatible(A, M, "right");
  return TriangularRing{A, B, M};
}

AtomSpectrum triangular_spectrum(const TriangularRing& T) {
  AtomSpectrum S;
  S.components.push_back(SpectrumComponent{
      "A", spectrum_of(T.A), "<T/[[{P},0],[M,B]]>"});
  S.components.push_back(SpectrumComponent{
      "B", spectrum_of(T.B), "<T/[[A,0],[M,{P}]]>"});
  S.status = SpectrumStatus::Complete;
  S.ring_display = T.display();
  return S;
}

CommaOracle::CommaOracle(const TriangularRing& T, CommaGuards guards)
    : guards_(guards) {
  if (T.A.kind() != RingKind::PrimeField ||
      T.B.kind() != RingKind::PrimeField || T.A.modulus() != T.B.modulus() ||
      T.M.group != BimoduleDescriptor::Group::VectorSpace ||
      T.M.p != T.A.modulus())
    throw CapabilityError(
        "the comma oracle needs A = B = F_p and M = F_p^r over one prime");
  p_ = static_cast<int>(T.A.modulus());
  r_ = T.M.r;
}

void CommaOracle::validate(const CommaObject& Z) const {
  if (Z.dx < 0 || Z.dy < 0) throw UsageError("negative dimension");
  if (static_cast<int>(Z.theta.size()) != r_)
    throw UsageError("expected one structure matrix per bimodule generator");
  for (const auto& t : Z.theta)
    if (t.rows != Z.dy || t.cols != Z.dx)
      throw UsageError("structure matrix has the wrong shape");
}

CommaObject CommaOracle::make(int dx, int dy,
                              std::vector<fp::Mat> theta) const {
  CommaObject Z{dx, dy, std::move(theta)};
  validate(Z);
  for (auto& t : Z.theta)
    for (int& v : t.a) v = fp::norm_mod(v, p_);
  return Z;
}

CommaObject CommaOracle::zero() const { return stalk_A(0); }

CommaObject CommaOracle::stalk_A(int dx) const {
  std::vector<fp::Mat> theta(r_, fp::Mat::zero(0, dx));
  return CommaObject{dx, 0, std::move(theta)};
}

CommaObject CommaOracle::stalk_B(int dy) const {
  std::vector<fp::Mat> theta(r_, fp::Mat::zero(dy, 0));
  return CommaObject{0, dy, std::move(theta)};
}

fp::Subspace CommaOracle::k_A(const CommaObject& Z) const {
  validate(Z);
  fp::Mat stacked = fp::Mat::zero(0, Z.dx);
  for (const auto& t : Z.theta) stacked = fp::vstack(stacked, t);
  return fp::Subspace::span(fp::kernel_basis(stacked, p_), Z.dx, p_);
}

fp::Subspace CommaOracle::k_B(const CommaObject& Z) const {
  validate(Z);
  return fp::Subspace::full(Z.dy, p_);
}

bool CommaOracle::is_morphism(const CommaObject& Z, const CommaObject& W,
                              const CommaMorphism& f) const {
  validate(Z);
  validate(W);
  if (f.alpha.rows != W.dx || f.alpha.cols != Z.dx || f.beta.rows != W.dy ||
      f.beta.cols != Z.dy)
    return false;
  for (int k = 0; k < r_; ++k) {
    if (fp::mat_mul(f.beta, Z.theta[k], p_) !=
        fp::mat_mul(W.theta[k], f.alpha, p_))
      return false;
  }
  return true;
}

CommaMorphism CommaOracle::identity_morphism(const CommaObject& Z) const {
  return CommaMorphism{fp::Mat::identity(Z.dx), fp::Mat::identity(Z.dy)};
}

CommaMorphism CommaOracle::zero_morphism(const CommaObject& Z,
                                         const CommaObject& W) const {
  return CommaMorphism{fp::Mat::zero(W.dx, Z.dx), fp::Mat::zero(W.dy, Z.dy)};
}

CommaMorphism CommaOracle::compose(const CommaObject& Z, const CommaObject& W,
                                   const CommaObject& V,
                                   const CommaMorphism& f,
                                   const CommaMorphism& g) const {
  if (!is_morphism(Z, W, f) || !is_morphism(W, V, g))
    throw UsageError("composition of non-morphisms");
  return CommaMorphism{fp::mat_mul(g.alpha, f.alpha, p_),
                       fp::mat_mul(g.beta, f.beta, p_)};
}

namespace {

fp::Mat basis_as_columns(const fp::Subspace& S) {
  fp::Mat m = fp::Mat::zero(S.ambient(), S.dim());
  for (int c = 0; c < S.dim(); ++c)
    for (int r = 0; r < S.ambient(); ++r) m.at(r, c) = S.basis()[c][r];
  return m;
}

std::vector<int> nonpivots(const fp::Subspace& S) {
  std::vector<int> out;
  auto it = S.pivots().begin();
  for (int c = 0; c < S.ambient(); ++c) {
    if (it != S.pivots().end() && *it == c) {
      ++it;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace

CommaKernel CommaOracle::kernel(const CommaObject& Z, const CommaObject& W,
                                const CommaMorphism& f) const {
  if (!is_morphism(Z, W, f))
    throw UsageError("the maps do not commute with the structure tables");
  fp::Subspace kx =
      fp::Subspace::span(fp::kernel_basis(f.alpha, p_), Z.dx, p_);
  fp::Subspace ky = fp::Subspace::span(fp::kernel_basis(f.beta, p_), Z.dy, p_);

  fp::Mat inc_x = basis_as_columns(kx);
  fp::Mat inc_y = basis_as_columns(ky);

  // restricted theta: coordinates in ky of theta applied to kx basis
  std::vector<fp::Mat> theta;
  for (int k = 0; k < r_; ++k) {
    fp::Mat t = fp::Mat::zero(ky.dim(), kx.dim());
    for (int c = 0; c < kx.dim(); ++c) {
      auto img = fp::mat_vec(Z.theta[k], kx.basis()[c], p_);
      auto coords = ky.coordinates(img);
      if (!coords)
        throw UsageError("kernel spaces are not stable under the pairing");
      for (int r = 0; r < t.rows; ++r) t.at(r, c) = (*coords)[r];
    }
    theta.push_back(std::move(t));
  }
  CommaObject K{kx.dim(), ky.dim(), std::move(theta)};
  return CommaKernel{std::move(K), CommaMorphism{inc_x, inc_y}};
}

CommaCokernel CommaOracle::cokernel(const CommaObject& Z,
                                    const CommaObject& W,
                                    const CommaMorphism& f) const {
  if (!is_morphism(Z, W, f))
    throw UsageError("the maps do not commute with the structure tables");
  // images of alpha and beta
  std::vector<std::vector<int>> acols, bcols;
  for (int c = 0; c < f.alpha.cols; ++c) {
    std::vector<int> v(f.alpha.rows);
    for (int r = 0; r < f.alpha.rows; ++r) v[r] = f.alpha.at(r, c);
    acols.push_back(std::move(v));
  }
  for (int c = 0; c < f.beta.cols; ++c) {
    std::vector<int> v(f.beta.rows);
    for (int r = 0; r < f.beta.rows; ++r) v[r] = f.beta.at(r, c);
    bcols.push_back(std::move(v));
  }
  fp::Subspace imx = fp::Subspace::span(acols, W.dx, p_);
  fp::Subspace imy = fp::Subspace::span(bcols, W.dy, p_);
  auto npx = nonpivots(imx);
  auto npy = nonpivots(imy);

  auto qcoords = [](const fp::Subspace& S, const std::vector<int>& np,
                    const std::vector<int>& v) {
    auto red = S.reduce(v);
    std::vector<int> out;
    out.reserve(np.size());
    for (int c : np) out.push_back(red[c]);
    return out;
  };

  std::vector<fp::Mat> theta;
  for (int k = 0; k < r_; ++k) {
    fp::Mat t = fp::Mat::zero(static_cast<int>(npy.size()),
                              static_cast<int>(npx.size()));
    for (int c = 0; c < t.cols; ++c) {
      std::vector<int> e(W.dx, 0);
      e[npx[c]] = 1;
      auto img = fp::mat_vec(W.theta[k], e, p_);
      auto qc = qcoords(imy, npy, img);
      for (int r = 0; r < t.rows; ++r) t.at(r, c) = qc[r];
    }
    theta.push_back(std::move(t));
  }

  fp::Mat proj_x = fp::Mat::zero(static_cast<int>(npx.size()), W.dx);
  for (int c = 0; c < W.dx; ++c) {
    std::vector<int> e(W.dx, 0);
    e[c] = 1;
    auto qc = qcoords(imx, npx, e);
    for (int r = 0; r < proj_x.rows; ++r) proj_x.at(r, c) = qc[r];
  }
  fp::Mat proj_y = fp::Mat::zero(static_cast<int>(npy.size()), W.dy);
  for (int c = 0; c < W.dy; ++c) {
    std::vector<int> e(W.dy, 0);
    e[c] = 1;
    auto qc = qcoords(imy, npy, e);
    for (int r = 0; r < proj_y.rows; ++r) proj_y.at(r, c) = qc[r];
  }

  CommaObject C{static_cast<int>(npx.size()), static_cast<int>(npy.size()),
                std::move(theta)};
  return CommaCokernel{std::move(C), CommaMorphism{proj_x, proj_y}};
}

CommaMorphism CommaOracle::counit_A(const CommaObject& Z) const {
  fp::Subspace ka = k_A(Z);
  return CommaMorphism{basis_as_columns(ka), fp::Mat::zero(Z.dy, 0)};
}

std::vector<CommaMorphism> CommaOracle::hom_basis(const CommaObject& Z,
                                                  const CommaObject& W) const {
  validate(Z);
  validate(W);
  int na = W.dx * Z.dx;
  int nb = W.dy * Z.dy;
  int unknowns = na + nb;
  int rows = r_ * W.dy * Z.dx;
  fp::Mat sys = fp::Mat::zero(rows, unknowns);
  int row = 0;
  // beta . theta_Z[k] - theta_W[k] . alpha = 0, entry (r, c)
  for (int k = 0; k < r_; ++k) {
    for (int r = 0; r < W.dy; ++r) {
      for (int c = 0; c < Z.dx; ++c) {
        for (int m = 0; m < Z.dy; ++m) {
          int col = na + r * Z.dy + m;  // beta(r, m)
          sys.at(row, col) = fp::norm_mod(
              sys.at(row, col) + Z.theta[k].at(m, c), p_);
        }
        for (int m = 0; m < W.dx; ++m) {
          int col = m * Z.dx + c;  // alpha(m, c)
          sys.at(row, col) = fp::norm_mod(
              sys.at(row, col) - W.theta[k].at(r, m), p_);
        }
        ++row;
      }
    }
  }
  auto kernel = fp::kernel_basis(sys, p_);
  std::vector<CommaMorphism> out;
  for (const auto& u : kernel) {
    CommaMorphism f{fp::Mat::zero(W.dx, Z.dx), fp::Mat::zero(W.dy, Z.dy)};
    for (int i = 0; i < na; ++i) f.alpha.a[i] = u[i];
    for (int i = 0; i < nb; ++i) f.beta.a[i] = u[na + i];
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<CommaMorphism> CommaOracle::all_morphisms(
    const CommaObject& Z, const CommaObject& W) const {
  auto basis = hom_basis(Z, W);
  long long count = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (count > guards_.hom_space / p_)
      throw ResourceError("hom space enumeration", count * p_,
                          guards_.hom_space);
    count *= p_;
  }
  std::vector<CommaMorphism> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<int> coeff(basis.size(), 0);
  while (true) {
    CommaMorphism f = zero_morphism(Z, W);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (coeff[b] == 0) continue;
      for (std::size_t i = 0; i < f.alpha.a.size(); ++i)
        f.alpha.a[i] = fp::norm_mod(
            f.alpha.a[i] +
                static_cast<long long>(coeff[b]) * basis[b].alpha.a[i],
            p_);
      for (std::size_t i = 0; i < f.beta.a.size(); ++i)
        f.beta.a[i] = fp::norm_mod(
            f.beta.a[i] +
                static_cast<long long>(coeff[b]) * basis[b].beta.a[i],
            p_);
    }
    out.push_back(std::move(f));
    std::size_t t = 0;
    while (t < coeff.size() && coeff[t] == p_ - 1) coeff[t++] = 0;
    if (t == coeff.size()) break;
    ++coeff[t];
  }
  return out;
}

bool CommaOracle::is_mono(const CommaObject& Z, const CommaObject& W,
                          const CommaMorphism& f) const {
  if (!is_morphism(Z, W, f)) return false;
  return fp::rank(f.alpha, p_) == Z.dx && fp::rank(f.beta, p_) == Z.dy;
}

bool CommaOracle::exists_mono(const CommaObject& Z,
                              const CommaObject& W) const {
  for (const auto& f : all_morphisms(Z, W))
    if (is_mono(Z, W, f)) return true;
  return false;
}

std::vector<CommaObject> CommaOracle::enumerate(int dx_max, int dy_max) const {
  if (dx_max < 0 || dy_max < 0)
    throw UsageError("dimension bounds must be nonnegative");
  long long count = 0;
  for (int dx = 0; dx <= dx_max; ++dx)
    for (int dy = 0; dy <= dy_max; ++dy) {
      long long tables = 1;
      for (int i = 0; i < r_ * dx * dy; ++i) {
        if (tables > guards_.enumeration / p_) {
          tables = guards_.enumeration + 1;
          break;
        }
        tables *= p_;
      }
      count += tables;
      if (count > guards_.enumeration)
        throw ResourceError("comma object enumeration", count,
                            guards_.enumeration);
    }

  std::vector<CommaObject> out;
  for (int dx = 0; dx <= dx_max; ++dx) {
    for (int dy = 0; dy <= dy_max; ++dy) {
      std::vector<fp::Mat> theta(r_, fp::Mat::zero(dy, dx));
      std::vector<int*> cells;
      for (auto& t : theta)
        for (int& v : t.a) cells.push_back(&v);
      while (true) {
        out.push_back(CommaObject{dx, dy, theta});
        std::size_t t = 0;
        while (t < cells.size() && *cells[t] == p_ - 1) *cells[t++] = 0;
        if (t == cells.size()) break;
        ++*cells[t];
      }
    }
  }
  return out;
}

}  // namespace atomspec
