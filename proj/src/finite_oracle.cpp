#include "atomspec/finite_oracle.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <set>

#include "atomspec/errors.hpp"
#include "json.hpp"

namespace atomspec {

namespace {

// p^e clamped to LLONG_MAX.
long long sat_pow(long long p, long long e) {
  long long r = 1;
  for (long long i = 0; i < e; ++i) {
    if (r > LLONG_MAX / p) return LLONG_MAX;
    r *= p;
  }
  return r;
}

long long sat_mul(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  if (a > LLONG_MAX / b) return LLONG_MAX;
  return a * b;
}

long long sat_add(long long a, long long b) {
  if (a > LLONG_MAX - b) return LLONG_MAX;
  return a + b;
}

}  // namespace

int FiniteRep::total() const {
  return std::accumulate(dims.begin(), dims.end(), 0);
}

int SubRep::total() const {
  int t = 0;
  for (const auto& s : spaces) t += s.dim();
  return t;
}

FiniteOracle::FiniteOracle(const PathAlgebra& alg,
                           std::vector<Relation> relations,
                           OracleGuards guards)
    : alg_(alg), relations_(std::move(relations)), guards_(guards) {
  if (!alg_.ring().is_field())
    throw CapabilityError(
        "the exhaustive oracle works over prime fields only");
  if (alg_.ring().modulus() > guards_.max_prime)
    throw ResourceError("oracle field size", alg_.ring().modulus(),
                        guards_.max_prime);
  p_ = static_cast<int>(alg_.ring().modulus());
}

FiniteRep FiniteOracle::make_rep(std::vector<int> dims,
                                 std::vector<fp::Mat> mats) const {
  FiniteRep X{std::move(dims), std::move(mats)};
  validate_shape(X);
  for (auto& m : X.mats)
    for (int& v : m.a) v = fp::norm_mod(v, p_);
  return X;
}

void FiniteOracle::validate_shape(const FiniteRep& X) const {
  const Quiver& q = alg_.quiver();
  if (static_cast<int>(X.dims.size()) != q.vertex_count())
    throw UsageError("representation has wrong number of vertex spaces");
  for (int d : X.dims)
    if (d < 0) throw UsageError("negative dimension");
  if (static_cast<int>(X.mats.size()) != q.arrow_count())
    throw UsageError("representation has wrong number of arrow matrices");
  for (int a = 0; a < q.arrow_count(); ++a) {
    const Arrow& ar = q.arrow(a);
    if (X.mats[a].rows != X.dims[ar.target] ||
        X.mats[a].cols != X.dims[ar.source])
      throw UsageError("arrow matrix " + ar.id + " has shape " +
                       std::to_string(X.mats[a].rows) + "x" +
                       std::to_string(X.mats[a].cols) + ", expected " +
                       std::to_string(X.dims[ar.target]) + "x" +
                       std::to_string(X.dims[ar.source]));
  }
}

FiniteRep FiniteOracle::zero_rep() const {
  std::vector<int> dims(alg_.quiver().vertex_count(), 0);
  std::vector<fp::Mat> mats;
  for (int a = 0; a < alg_.quiver().arrow_count(); ++a) {
    (void)a;
    mats.push_back(fp::Mat::zero(0, 0));
  }
  return FiniteRep{std::move(dims), std::move(mats)};
}

FiniteRep FiniteOracle::stalk(int vertex) const { return stalk_module(vertex, 1); }

FiniteRep FiniteOracle::stalk_module(int vertex, int d) const {
  const Quiver& q = alg_.quiver();
  if (vertex < 0 || vertex >= q.vertex_count())
    throw UsageError("vertex index out of range");
  if (d < 0) throw UsageError("negative dimension");
  std::vector<int> dims(q.vertex_count(), 0);
  dims[vertex] = d;
  std::vector<fp::Mat> mats;
  for (int a = 0; a < q.arrow_count(); ++a) {
    const Arrow& ar = q.arrow(a);
    mats.push_back(fp::Mat::zero(dims[ar.target], dims[ar.source]));
  }
  return FiniteRep{std::move(dims), std::move(mats)};
}

FiniteRep FiniteOracle::direct_sum(const FiniteRep& X,
                                   const FiniteRep& Y) const {
  validate_shape(X);
  validate_shape(Y);
  const Quiver& q = alg_.quiver();
  FiniteRep Z;
  for (int v = 0; v < q.vertex_count(); ++v)
    Z.dims.push_back(X.dims[v] + Y.dims[v]);
  for (int a = 0; a < q.arrow_count(); ++a) {
    const Arrow& ar = q.arrow(a);
    fp::Mat m = fp::Mat::zero(Z.dims[ar.target], Z.dims[ar.source]);
    for (int i = 0; i < X.mats[a].rows; ++i)
      for (int j = 0; j < X.mats[a].cols; ++j)
        m.at(i, j) = X.mats[a].at(i, j);
    for (int i = 0; i < Y.mats[a].rows; ++i)
      for (int j = 0; j < Y.mats[a].cols; ++j)
        m.at(X.mats[a].rows + i, X.mats[a].cols + j) = Y.mats[a].at(i, j);
    Z.mats.push_back(std::move(m));
  }
  return Z;
}

fp::Mat FiniteOracle::path_matrix(const FiniteRep& X, const Path& path) const {
  fp::Mat m = fp::Mat::identity(X.dims[path.source]);
  for (int a : path.arrows) m = fp::mat_mul(X.mats[a], m, p_);
  return m;
}

fp::Mat FiniteOracle::relation_matrix(const FiniteRep& X,
                                      const Relation& rel) const {
  if (rel.element.is_zero()) return fp::Mat::zero(0, 0);
  const Path& first = rel.element.terms.begin()->first;
  fp::Mat acc = fp::Mat::zero(X.dims[first.target], X.dims[first.source]);
  for (const auto& [path, c] : rel.element.terms) {
    fp::Mat pm = path_matrix(X, path);
    int cc = fp::norm_mod(c, p_);
    for (std::size_t i = 0; i < acc.a.size(); ++i)
      acc.a[i] = fp::norm_mod(acc.a[i] + static_cast<long long>(cc) * pm.a[i],
                              p_);
  }
  return acc;
}

bool FiniteOracle::check_relations(const FiniteRep& X) const {
  return check_relations(X, relations_);
}

bool FiniteOracle::check_relations(const FiniteRep& X,
                                   const std::vector<Relation>& rels) const {
  validate_shape(X);
  for (const auto& rel : rels) {
    alg_.check_ctx(rel.element);
    if (!relation_matrix(X, rel).is_zero()) return false;
  }
  return true;
}

std::vector<std::vector<fp::Subspace>> FiniteOracle::vertex_subspaces(
    const FiniteRep& X) const {
  long long product = 1;
  for (int d : X.dims)
    product = sat_mul(product, fp::count_subspaces(d, p_));
  if (product > guards_.submodule_product)
    throw ResourceError("submodule enumeration", product,
                        guards_.submodule_product);
  std::vector<std::vector<fp::Subspace>> per_vertex;
  for (int d : X.dims)
    per_vertex.push_back(fp::all_subspaces(d, p_, guards_.submodule_product));
  return per_vertex;
}

std::vector<SubRep> FiniteOracle::submodules(const FiniteRep& X) const {
  validate_shape(X);
  const Quiver& q = alg_.quiver();
  auto per_vertex = vertex_subspaces(X);
  int n = q.vertex_count();

  std::vector<SubRep> out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    SubRep S;
    for (int v = 0; v < n; ++v) S.spaces.push_back(per_vertex[v][idx[v]]);
    bool stable = true;
    for (int a = 0; a < q.arrow_count() && stable; ++a) {
      const Arrow& ar = q.arrow(a);
      for (const auto& row : S.spaces[ar.source].basis()) {
        if (!S.spaces[ar.target].contains(
                fp::mat_vec(X.mats[a], row, p_))) {
          stable = false;
          break;
        }
      }
    }
    if (stable) out.push_back(std::move(S));
    int v = 0;
    while (v < n && idx[v] + 1 == per_vertex[v].size()) idx[v++] = 0;
    if (v == n) break;
    ++idx[v];
  }
  return out;
}

FiniteRep FiniteOracle::sub_rep(const FiniteRep& X, const SubRep& S) const {
  const Quiver& q = alg_.quiver();
  FiniteRep Y;
  for (int v = 0; v < q.vertex_count(); ++v)
    Y.dims.push_back(S.spaces[v].dim());
  for (int a = 0; a < q.arrow_count(); ++a) {
    const Arrow& ar = q.arrow(a);
    fp::Mat m = fp::Mat::zero(Y.dims[ar.target], Y.dims[ar.source]);
    const auto& src_basis = S.spaces[ar.source].basis();
    for (int c = 0; c < static_cast<int>(src_basis.size()); ++c) {
      auto img = fp::mat_vec(X.mats[a], src_basis[c], p_);
      auto coords = S.spaces[ar.target].coordinates(img);
      if (!coords)
        throw UsageError("subspace tuple is not arrow-stable");
      for (int r = 0; r < m.rows; ++r) m.at(r, c) = (*coords)[r];
    }
    Y.mats.push_back(std::move(m));
  }
  return Y;
}

namespace {

// Complement coordinates of the quotient by S: the non-pivot components of
// the reduction by S's basis.
std::vector<int> quotient_coords(const fp::Subspace& S,
                                 const std::vector<int>& v,
                                 const std::vector<int>& nonpivot) {
  auto r = S.reduce(v);
  std::vector<int> out;
  out.reserve(nonpivot.size());
  for (int c : nonpivot) out.push_back(r[c]);
  return out;
}

std::vector<int> nonpivot_columns(const fp::Subspace& S) {
  std::vector<int> out;
  std::set<int> piv(S.pivots().begin(), S.pivots().end());
  for (int c = 0; c < S.ambient(); ++c)
    if (!piv.count(c)) out.push_back(c);
  return out;
}

}  // namespace

FiniteRep FiniteOracle::quotient(const FiniteRep& X, const SubRep& S) const {
  const Quiver& q = alg_.quiver();
  std::vector<std::vector<int>> nonpivot;
  for (int v = 0; v < q.vertex_count(); ++v) {
    if (S.spaces[v].ambient() != X.dims[v])
      throw UsageError("submodule does not match the representation");
    nonpivot.push_back(nonpivot_columns(S.spaces[v]));
  }
  FiniteRep Y;
  for (int v = 0; v < q.vertex_count(); ++v)
    Y.dims.push_back(static_cast<int>(nonpivot[v].size()));
  for (int a = 0; a < q.arrow_count(); ++a) {
    const Arrow& ar = q.arrow(a);
    fp::Mat m = fp::Mat::zero(Y.dims[ar.target], Y.dims[ar.source]);
    for (int c = 0; c < Y.dims[ar.source]; ++c) {
      std::vector<int> e(X.dims[ar.source], 0);
      e[nonpivot[ar.source][c]] = 1;
      auto img = fp::mat_vec(X.mats[a], e, p_);
      auto qc = quotient_coords(S.spaces[ar.target], img, nonpivot[ar.target]);
      for (int r = 0; r < m.rows; ++r) m.at(r, c) = qc[r];
    }
    Y.mats.push_back(std::move(m));
  }
  return Y;
}

bool FiniteOracle::isomorphic(const FiniteRep& A, const FiniteRep& B) const {
  const Quiver& q = alg_.quiver();
  if (A.dims != B.dims) return false;
  if (A.total() == 0) return true;

  // Unknowns: entries of one matrix T_v per vertex, B(v) x A(v), row-major.
  std::vector<int> offset(q.vertex_count() + 1, 0);
  for (int v = 0; v < q.vertex_count(); ++v)
    offset[v + 1] = offset[v] + B.dims[v] * A.dims[v];
  int unknowns = offset.back();

  // One block of equations per arrow: T_t A(a) - B(a) T_s = 0.
  int rows = 0;
  for (int a = 0; a < q.arrow_count(); ++a) {
    const Arrow& ar = q.arrow(a);
    rows += B.dims[ar.target] * A.dims[ar.source];
  }
  fp::Mat sys = fp::Mat::zero(rows, unknowns);
  int row = 0;
  for (int a = 0; a < q.arrow_count(); ++a) {
    const Arrow& ar = q.arrow(a);
    int s = ar.source, t = ar.target;
    for (int r = 0; r < B.dims[t]; ++r) {
      for (int c = 0; c < A.dims[s]; ++c) {
        for (int m = 0; m < A.dims[t]; ++m) {
          int col = offset[t] + r * A.dims[t] + m;
          sys.at(row, col) = fp::norm_mod(
              sys.at(row, col) + A.mats[a].at(m, c), p_);
        }
        for (int m = 0; m < B.dims[s]; ++m) {
          int col = offset[s] + m * A.dims[s] + c;
          sys.at(row, col) = fp::norm_mod(
              sys.at(row, col) - B.mats[a].at(r, m), p_);
        }
        ++row;
      }
    }
  }

  auto basis = fp::kernel_basis(sys, p_);
  long long hom_size = sat_pow(p_, static_cast<long long>(basis.size()));
  if (hom_size > guards_.hom_space)
    throw ResourceError("hom space enumeration", hom_size, guards_.hom_space);

  std::vector<int> coeff(basis.size(), 0);
  while (true) {
    // advance odometer first so the all-zero map is skipped
    std::size_t t = 0;
    while (t < coeff.size() && coeff[t] == p_ - 1) coeff[t++] = 0;
    if (t == coeff.size()) break;
    ++coeff[t];

    std::vector<int> u(unknowns, 0);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (coeff[b] == 0) continue;
      for (int i = 0; i < unknowns; ++i)
        u[i] = fp::norm_mod(
            u[i] + static_cast<long long>(coeff[b]) * basis[b][i], p_);
    }
    bool invertible = true;
    for (int v = 0; v < q.vertex_count() && invertible; ++v) {
      fp::Mat T = fp::Mat::zero(B.dims[v], A.dims[v]);
      for (int i = 0; i < T.rows * T.cols; ++i) T.a[i] = u[offset[v] + i];
      if (!fp::is_invertible(T, p_)) invertible = false;
    }
    if (invertible) return true;
  }
  return false;
}

bool FiniteOracle::common_nonzero_subobject(const FiniteRep& H,
                                            const FiniteRep& H2) const {
  auto subs1 = submodules(H);
  auto subs2 = submodules(H2);
  std::vector<FiniteRep> reps2;
  reps2.reserve(subs2.size());
  for (const auto& S : subs2) reps2.push_back(sub_rep(H2, S));
  for (const auto& S : subs1) {
    if (S.total() == 0) continue;
    FiniteRep A = sub_rep(H, S);
    for (const auto& B : reps2) {
      if (B.total() != A.total()) continue;
      if (isomorphic(A, B)) return true;
    }
  }
  return false;
}

bool FiniteOracle::is_monoform(const FiniteRep& H) const {
  validate_shape(H);
  if (H.is_zero()) return false;
  for (const auto& S : submodules(H)) {
    if (S.total() == 0) continue;
    if (common_nonzero_subobject(H, quotient(H, S))) return false;
  }
  return true;
}

bool FiniteOracle::atom_equivalent(const FiniteRep& H,
                                   const FiniteRep& H2) const {
  if (!is_monoform(H) || !is_monoform(H2))
    throw UsageError("atom equivalence requires monoform inputs");
  return common_nonzero_subobject(H, H2);
}

std::vector<int> FiniteOracle::asupp(const FiniteRep& M,
                                     const std::vector<FiniteRep>& reps) const {
  std::vector<bool> hit(reps.size(), false);
  for (const auto& L : submodules(M)) {
    if (L.total() == 0) continue;
    FiniteRep RL = sub_rep(M, L);
    for (const auto& Lp : submodules(RL)) {
      if (Lp.total() == RL.total()) continue;  // quotient would be zero
      FiniteRep Q = quotient(RL, Lp);
      if (!is_monoform(Q)) continue;
      for (std::size_t r = 0; r < reps.size(); ++r) {
        if (hit[r]) continue;
        if (atom_equivalent(Q, reps[r])) hit[r] = true;
      }
    }
  }
  std::vector<int> out;
  for (std::size_t r = 0; r < reps.size(); ++r)
    if (hit[r]) out.push_back(static_cast<int>(r));
  return out;
}

fp::Subspace FiniteOracle::k_i(const FiniteRep& X, int vertex) const {
  const Quiver& q = alg_.quiver();
  if (vertex < 0 || vertex >= q.vertex_count())
    throw UsageError("vertex index out of range");
  std::vector<int> out_arrows = q.out_arrows(vertex);
  if (out_arrows.empty()) return fp::Subspace::full(X.dims[vertex], p_);
  fp::Mat stacked = fp::Mat::zero(0, X.dims[vertex]);
  for (int a : out_arrows) stacked = fp::vstack(stacked, X.mats[a]);
  return fp::Subspace::span(fp::kernel_basis(stacked, p_), X.dims[vertex],
                            p_);
}

std::vector<FiniteRep> FiniteOracle::enumerate_reps(int dim_bound) const {
  if (dim_bound < 0) throw UsageError("dimension bound must be nonnegative");
  const Quiver& q = alg_.quiver();
  int n = q.vertex_count();

  // All dims vectors with entries summing to <= dim_bound, lexicographic.
  std::vector<std::vector<int>> dim_vectors;
  std::vector<int> cur(n, 0);
  while (true) {
    dim_vectors.push_back(cur);
    int v = n - 1;
    for (; v >= 0; --v) {
      ++cur[v];
      if (std::accumulate(cur.begin(), cur.end(), 0) <= dim_bound) break;
      cur[v] = 0;
    }
    if (v < 0) break;
  }

  long long tuple_count = 0;
  for (const auto& dims : dim_vectors) {
    long long cells = 0;
    for (int a = 0; a < q.arrow_count(); ++a) {
      const Arrow& ar = q.arrow(a);
      cells += static_cast<long long>(dims[ar.target]) * dims[ar.source];
    }
    tuple_count = sat_add(tuple_count, sat_pow(p_, cells));
  }
  if (tuple_count > guards_.matrix_tuples)
    throw ResourceError("matrix tuple enumeration", tuple_count,
                        guards_.matrix_tuples);

  std::vector<FiniteRep> out;
  for (const auto& dims : dim_vectors) {
    std::vector<fp::Mat> mats;
    for (int a = 0; a < q.arrow_count(); ++a) {
      const Arrow& ar = q.arrow(a);
      mats.push_back(fp::Mat::zero(dims[ar.target], dims[ar.source]));
    }
    std::vector<int*> cells;
    for (auto& m : mats)
      for (int& v : m.a) cells.push_back(&v);
    while (true) {
      FiniteRep X{dims, mats};
      if (check_relations(X)) out.push_back(std::move(X));
      std::size_t t = 0;
      while (t < cells.size() && *cells[t] == p_ - 1) *cells[t++] = 0;
      if (t == cells.size()) break;
      ++*cells[t];
    }
  }
  return out;
}

bool OracleReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const OracleCheck& c) { return c.pass; });
}

const OracleCheck* OracleReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

OracleReport verify_spectrum_description(const FiniteOracle& oracle,
                                          int dim_bound,
                                          const RootedOptions& options) {
  const PathAlgebra& alg = oracle.algebra();
  for (const auto& rel : oracle.relations()) {
    if (!is_admissible(alg, rel))
      throw UsageError("relation is not admissible: " +
                       relation_display(alg, rel));
  }
  Tri rooted = is_right_rooted(alg, oracle.relations(), options);
  int n = alg.quiver().vertex_count();

  std::vector<FiniteRep> stalks;
  for (int v = 0; v < n; ++v) stalks.push_back(oracle.stalk(v));

  OracleReport rep;

  OracleCheck pairwise{"stalks_pairwise_inequivalent", true, {}};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (oracle.atom_equivalent(stalks[i], stalks[j])) {
        pairwise.pass = false;
        pairwise.witnesses.push_back(stalks[i]);
        pairwise.witnesses.push_back(stalks[j]);
      }
  rep.checks.push_back(std::move(pairwise));

  auto reps = oracle.enumerate_reps(dim_bound);
  long long nonzero = 0, monoform_count = 0;
  std::vector<FiniteRep> monoforms;
  for (const auto& X : reps) {
    if (X.is_zero()) continue;
    ++nonzero;
    if (oracle.is_monoform(X)) {
      ++monoform_count;
      monoforms.push_back(X);
    }
  }

  if (rooted == Tri::Yes) {
    OracleCheck kernels{"kernel_detects_nonzero", true, {}};
    for (const auto& X : reps) {
      if (X.is_zero()) continue;
      bool found = false;
      for (int v = 0; v < n && !found; ++v)
        if (oracle.k_i(X, v).dim() > 0) found = true;
      if (!found) {
        kernels.pass = false;
        kernels.witnesses.push_back(X);
      }
    }
    rep.checks.push_back(std::move(kernels));

    OracleCheck unique{"monoform_matches_unique_stalk", true, {}};
    for (const auto& X : monoforms) {
      int matches = 0;
      for (const auto& S : stalks)
        if (oracle.atom_equivalent(X, S)) ++matches;
      if (matches != 1) {
        unique.pass = false;
        unique.witnesses.push_back(X);
      }
    }
    rep.checks.push_back(std::move(unique));
  } else {
    OracleCheck missing{"non_surjectivity_witnesses", true, {}};
    for (const auto& X : monoforms) {
      bool matched = false;
      for (const auto& S : stalks)
        if (oracle.atom_equivalent(X, S)) {
          matched = true;
          break;
        }
      if (!matched) missing.witnesses.push_back(X);
    }
    rep.checks.push_back(std::move(missing));
  }

  rep.counts.emplace_back("stalks", n);
  rep.counts.emplace_back("reps", static_cast<long long>(reps.size()));
  rep.counts.emplace_back("nonzero_reps", nonzero);
  rep.counts.emplace_back("monoform_reps", monoform_count);
  return rep;
}

namespace {

nlohmann::ordered_json rep_json(const FiniteOracle& oracle,
                                const FiniteRep& X) {
  const Quiver& q = oracle.algebra().quiver();
  nlohmann::ordered_json j;
  j["dims"] = nlohmann::ordered_json::object();
  for (int v = 0; v < q.vertex_count(); ++v)
    j["dims"][q.vertex(v)] = X.dims[v];
  j["mats"] = nlohmann::ordered_json::object();
  for (int a = 0; a < q.arrow_count(); ++a) {
    const fp::Mat& m = X.mats[a];
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int r = 0; r < m.rows; ++r) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (int c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
      rows.push_back(std::move(row));
    }
    j["mats"][q.arrow(a).id] = std::move(rows);
  }
  return j;
}

}  // namespace

std::string report_json(const FiniteOracle& oracle, const OracleReport& rep) {
  nlohmann::ordered_json j;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : rep.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    cj["witnesses"] = nlohmann::ordered_json::array();
    for (const auto& w : c.witnesses)
      cj["witnesses"].push_back(rep_json(oracle, w));
    j["checks"].push_back(std::move(cj));
  }
  j["counts"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : rep.counts) j["counts"][k] = v;
  return j.dump(2) + "\n";
}

}  // namespace atomspec
