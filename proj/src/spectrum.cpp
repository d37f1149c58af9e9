#include "atomspec/spectrum.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "atomspec/errors.hpp"
#include "atomspec/fplinalg.hpp"
#include "json.hpp"

namespace atomspec {

namespace {

std::string substitute_prime(const std::string& tmpl, const PrimePoint& pt) {
  std::string out = tmpl;
  auto pos = out.find("{P}");
  if (pos != std::string::npos) out.replace(pos, 3, pt.display());
  return out;
}

nlohmann::ordered_json prime_json(const PrimePoint& pt) {
  nlohmann::ordered_json j;
  switch (pt.tag) {
    case PrimePoint::Tag::Zero:
      j["tag"] = "zero";
      break;
    case PrimePoint::Tag::Prime:
      j["tag"] = "prime";
      j["p"] = pt.p;
      break;
    case PrimePoint::Tag::Unique:
      j["tag"] = "unique";
      break;
  }
  return j;
}

constexpr const char* kOpenBasisNote =
    "an open set restricts, in each component, to a specialization-closed "
    "subset of that component's spectrum";

}  // namespace

bool AtomSpectrum::symbolic() const {
  return std::any_of(components.begin(), components.end(),
                     [](const SpectrumComponent& c) {
                       return c.model.symbolic();
                     });
}

AtomSpectrum atom_spectrum(const PathAlgebra& alg,
                           const std::vector<Relation>& relations,
                           const RootedOptions& options) {
  for (const auto& rel : relations) {
    if (!is_admissible(alg, rel))
      throw UsageError("relation is not admissible: " +
                       relation_display(alg, rel));
  }
  Tri rooted = is_right_rooted(alg, relations, options);

  AtomSpectrum S;
  SpectrumModel model = spectrum_of(alg.ring());
  for (int v = 0; v < alg.quiver().vertex_count(); ++v) {
    const std::string& name = alg.quiver().vertex(v);
    S.components.push_back(
        SpectrumComponent{name, model, "<kQ/p~(" + name + ",{P})>"});
  }
  S.ring_display = alg.ring().display();
  if (rooted == Tri::Yes) {
    S.status = SpectrumStatus::Complete;
  } else {
    S.status = SpectrumStatus::EmbeddingOnly;
    S.warning = rooted == Tri::No
                    ? "input is not right rooted; listing the embedded "
                      "image of the spectrum only"
                    : "right-rootedness undetermined within bounds; listing "
                      "the embedded image of the spectrum only";
  }
  return S;
}

std::vector<long long> default_prime_sample() { return {2, 3, 5}; }

std::vector<AtomPoint> sample_points(
    const std::vector<SpectrumComponent>& components,
    const std::vector<long long>& primes) {
  std::vector<AtomPoint> out;
  for (int c = 0; c < static_cast<int>(components.size()); ++c) {
    for (const PrimePoint& pt : components[c].model.sample(primes))
      out.push_back(AtomPoint{c, pt});
  }
  return out;
}

std::vector<AtomPoint> sample_points(const AtomSpectrum& S) {
  return sample_points(S.components, default_prime_sample());
}

std::string point_label(const AtomSpectrum& S, const AtomPoint& x) {
  if (x.component < 0 ||
      x.component >= static_cast<int>(S.components.size()))
    throw UsageError("point component out of range");
  return substitute_prime(S.components[x.component].label_template, x.prime);
}

bool point_leq(const AtomSpectrum& S, const AtomPoint& a, const AtomPoint& b) {
  if (a.component != b.component) return false;
  return S.components[a.component].model.leq(a.prime, b.prime);
}

std::vector<std::pair<int, int>> order_pairs(
    const AtomSpectrum& S, const std::vector<AtomPoint>& pts) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i)
    for (int j = 0; j < static_cast<int>(pts.size()); ++j)
      if (point_leq(S, pts[i], pts[j])) out.emplace_back(i, j);
  return out;
}

bool is_open_atoms(const AtomSpectrum& S, const AtomSubset& subset) {
  if (subset.per_component.size() != S.components.size())
    throw UsageError("subset must provide one slice per component");
  for (std::size_t c = 0; c < S.components.size(); ++c) {
    if (!is_open(subset.per_component[c], S.components[c].model))
      return false;
  }
  return true;
}

bool sampled_subset_open(const AtomSpectrum& S,
                         const std::vector<AtomPoint>& pts,
                         const std::vector<bool>& member) {
  if (member.size() != pts.size())
    throw UsageError("membership flags must match the sample");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!member[i]) continue;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (point_leq(S, pts[i], pts[j]) && !member[j]) return false;
    }
  }
  return true;
}

ComonoformIdeal comonoform_ideal(const PathAlgebra& alg, int vertex,
                                 const PrimePoint& prime) {
  const Quiver& q = alg.quiver();
  if (vertex < 0 || vertex >= q.vertex_count())
    throw UsageError("vertex index out of range");
  SpectrumModel model = spectrum_of(alg.ring());
  if (!model.contains(prime))
    throw UsageError("prime " + prime.display() +
                     " does not belong to Spec " + alg.ring().display());

  ComonoformIdeal C;
  C.vertex = vertex;
  C.prime = prime;
  if (prime.tag == PrimePoint::Tag::Prime) C.prime_gens = {prime.p};
  for (int j = 0; j < q.vertex_count(); ++j)
    if (j != vertex) C.generators.push_back(alg.e(j));
  for (int a = 0; a < q.arrow_count(); ++a)
    C.generators.push_back(alg.arrow_elem(a));
  for (long long x : C.prime_gens)
    C.generators.push_back(alg.path_elem(q.trivial_path(vertex), x));
  return C;
}

bool ideal_membership(const PathAlgebra& alg, const ComonoformIdeal& C,
                      const AlgebraElement& x) {
  long long c =
      alg.ring().canon(alg.coeff(x, alg.quiver().trivial_path(C.vertex)));
  switch (C.prime.tag) {
    case PrimePoint::Tag::Zero:
    case PrimePoint::Tag::Unique:
      return c == 0;
    case PrimePoint::Tag::Prime:
      return c % C.prime.p == 0;
  }
  return false;
}

std::string ideal_label(const PathAlgebra& alg, const ComonoformIdeal& C) {
  return "<kQ/p~(" + alg.quiver().vertex(C.vertex) + "," + C.prime.display() +
         ")>";
}

AlgebraElement separating_element(const PathAlgebra& alg,
                                  const ComonoformIdeal& a,
                                  const ComonoformIdeal& b) {
  const Quiver& q = alg.quiver();
  if (a.vertex != b.vertex) return alg.e(b.vertex);
  if (a.prime == b.prime)
    throw UsageError("the two ideals describe the same point");
  // Same vertex, distinct primes: a generator of one prime avoids the other.
  long long witness = 0;
  if (b.prime.tag == PrimePoint::Tag::Prime &&
      (a.prime.tag != PrimePoint::Tag::Prime || a.prime.p != b.prime.p))
    witness = b.prime.p;
  else if (a.prime.tag == PrimePoint::Tag::Prime)
    witness = a.prime.p;
  else
    throw UsageError("the two ideals describe the same point");
  return alg.path_elem(q.trivial_path(a.vertex), witness);
}

bool verify_ideal_generators(const PathAlgebra& alg, const ComonoformIdeal& C,
                             int deg_bound) {
  if (!alg.ring().is_field())
    throw CapabilityError(
        "ideal generator verification is supported over prime fields only");
  if (deg_bound < 0) throw UsageError("degree bound must be nonnegative");
  int p = static_cast<int>(alg.ring().modulus());
  const Quiver& q = alg.quiver();

  std::vector<Path> basis = enumerate_paths(q, deg_bound);
  constexpr long long kMaxBasis = 4000;
  if (static_cast<long long>(basis.size()) > kMaxBasis)
    throw ResourceError("ideal verification basis",
                        static_cast<long long>(basis.size()), kMaxBasis);
  std::map<Path, int> index;
  for (int i = 0; i < static_cast<int>(basis.size()); ++i)
    index.emplace(basis[i], i);
  int dim = static_cast<int>(basis.size());

  auto vec_of = [&](const AlgebraElement& x) {
    std::vector<int> v(dim, 0);
    for (const auto& [path, c] : x.terms)
      v[index.at(path)] = fp::norm_mod(c, p);
    return v;
  };

  std::vector<std::vector<int>> span_vecs;
  for (const AlgebraElement& g : C.generators) {
    int gdeg = std::max(g.degree(), 0);
    for (const Path& alpha : basis) {
      for (const Path& beta : basis) {
        if (alpha.length() + gdeg + beta.length() > deg_bound) continue;
        AlgebraElement prod = alg.multiply(
            alg.path_elem(alpha), alg.multiply(g, alg.path_elem(beta)));
        if (prod.is_zero()) continue;
        span_vecs.push_back(vec_of(prod));
      }
    }
  }
  fp::Subspace span = fp::Subspace::span(span_vecs, dim, p);

  std::vector<std::vector<int>> pred_vecs;
  Path ei = q.trivial_path(C.vertex);
  for (int i = 0; i < dim; ++i) {
    if (basis[i] == ei) continue;
    std::vector<int> v(dim, 0);
    v[i] = 1;
    pred_vecs.push_back(std::move(v));
  }
  return span == fp::Subspace::span(pred_vecs, dim, p);
}

namespace {

int parse_presentation_args(const std::string& name, const std::string& head,
                            std::vector<long long>& args) {
  // head(k1,...,kr); returns r, leaves args filled.  -1 when not this head.
  if (name.size() < head.size() + 2 || name.compare(0, head.size(), head) != 0)
    return -1;
  if (name[head.size()] != '(' || name.back() != ')') return -1;
  std::string inner = name.substr(head.size() + 1,
                                  name.size() - head.size() - 2);
  std::stringstream ss(inner);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(piece, &used);
      if (used != piece.size()) return -1;
      args.push_back(v);
    } catch (const std::exception&) {
      return -1;
    }
  }
  return static_cast<int>(args.size());
}

std::string join_names(const std::string& stem, int n, const std::string& sep) {
  std::string out;
  for (int i = 1; i <= n; ++i) {
    if (i > 1) out += sep;
    out += stem + std::to_string(i);
  }
  return out;
}

}  // namespace

PresentationReport special_presentations(const std::string& name) {
  std::vector<long long> args;
  if (int r = parse_presentation_args(name, "subspace", args); r >= 0) {
    if (r != 1 || args[0] < 2)
      throw UsageError("subspace(n) needs a single argument n >= 2");
    int n = static_cast<int>(args[0]);
    PresentationReport rep;
    rep.name = "subspace(" + std::to_string(n) + ")";
    rep.quiver = make_subspace_quiver(n);
    rep.algebra_display =
        "L_" + std::to_string(n) + "(k), the subalgebra of " +
        std::to_string(n) + "x" + std::to_string(n) +
        " matrices over k supported on the diagonal and the bottom row";
    for (int i = 1; i <= n; ++i) {
      std::string m = "[";
      for (int r2 = 1; r2 <= n; ++r2) {
        m += r2 > 1 ? ",[" : "[";
        for (int c = 1; c <= n; ++c) {
          if (c > 1) m += ",";
          if (r2 == c && r2 == i)
            m += "p";
          else if (r2 == n || r2 == c)
            m += "k";
          else
            m += "0";
        }
        m += "]";
      }
      m += "]";
      rep.matrix_ideals.push_back(std::move(m));
    }
    rep.atom_label_scheme = "<L_" + std::to_string(n) + "(k)/p-bar(i)>";
    return rep;
  }
  args.clear();
  if (int r = parse_presentation_args(name, "free", args); r >= 0) {
    if (r != 2 || args[0] < 1 || args[1] < 1)
      throw UsageError("free(n,m) needs n >= 1 loops and power m >= 1");
    int n = static_cast<int>(args[0]);
    int m = static_cast<int>(args[1]);
    PresentationReport rep;
    rep.name = "free(" + std::to_string(n) + "," + std::to_string(m) + ")";
    rep.quiver = make_loop_quiver(n);
    for (const Path& w : paths_of_length(rep.quiver, m))
      rep.relations.push_back(RelationSource{rep.quiver.path_string(w)});
    rep.algebra_display =
        "k<" + join_names("x", n, ",") + ">/(" + join_names("x", n, ",") +
        ")^" + std::to_string(m);
    rep.atom_label_scheme = "<k/p>";
    return rep;
  }
  throw UsageError("unknown presentation \"" + name +
                   "\" (expected subspace(n) or free(n,m))");
}

std::string free_atom_label(const BaseRing& ring, const PrimePoint& prime) {
  if (prime.tag == PrimePoint::Tag::Prime)
    return "<F" + std::to_string(prime.p) + ">";
  return "<" + ring.display() + ">";
}

namespace {

std::vector<std::pair<int, int>> strict_pairs(
    const AtomSpectrum& S, const std::vector<AtomPoint>& pts) {
  std::vector<std::pair<int, int>> out;
  for (const auto& [i, j] : order_pairs(S, pts))
    if (i != j) out.emplace_back(i, j);
  return out;
}

std::vector<std::pair<int, int>> hasse_edges(
    const AtomSpectrum& S, const std::vector<AtomPoint>& pts) {
  auto strict = strict_pairs(S, pts);
  std::set<std::pair<int, int>> rel(strict.begin(), strict.end());
  std::vector<std::pair<int, int>> out;
  for (const auto& [i, j] : strict) {
    bool covered = false;
    for (int k = 0; k < static_cast<int>(pts.size()) && !covered; ++k) {
      if (k == i || k == j) continue;
      if (rel.count({i, k}) && rel.count({k, j})) covered = true;
    }
    if (!covered) out.emplace_back(i, j);
  }
  return out;
}

std::string node_id(const AtomSpectrum& S, const AtomPoint& x) {
  return "v" + S.components[x.component].name + "_p" + x.prime.id_fragment();
}

}  // namespace

std::string emit_json(const AtomSpectrum& S,
                      const std::vector<long long>& primes) {
  auto pts = sample_points(S.components, primes);
  nlohmann::ordered_json j;
  j["status"] =
      S.status == SpectrumStatus::Complete ? "complete" : "embedding_only";
  j["ring"] = S.ring_display;
  j["points"] = nlohmann::ordered_json::array();
  for (const AtomPoint& x : pts) {
    nlohmann::ordered_json pj;
    pj["vertex"] = S.components[x.component].name;
    pj["prime"] = prime_json(x.prime);
    pj["label"] = point_label(S, x);
    j["points"].push_back(std::move(pj));
  }
  j["order"] = nlohmann::ordered_json::array();
  for (const auto& [i, k] : strict_pairs(S, pts))
    j["order"].push_back({i, k});
  j["open_basis_note"] = kOpenBasisNote;
  return j.dump(2) + "\n";
}

std::string emit_dot(const AtomSpectrum& S,
                     const std::vector<long long>& primes) {
  auto pts = sample_points(S.components, primes);
  std::string out = "digraph atomspec {\n  rankdir=BT;\n";
  for (const AtomPoint& x : pts) {
    out += "  \"" + node_id(S, x) + "\" [label=\"" + point_label(S, x) +
           "\"];\n";
  }
  for (const auto& [i, j] : hasse_edges(S, pts)) {
    out += "  \"" + node_id(S, pts[i]) + "\" -> \"" + node_id(S, pts[j]) +
           "\";\n";
  }
  out += "}\n";
  return out;
}

std::string emit(const AtomSpectrum& S, const std::string& format,
                 const std::vector<long long>& primes) {
  if (format == "json") return emit_json(S, primes);
  if (format == "dot") return emit_dot(S, primes);
  throw UsageError("unknown output format \"" + format +
                   "\" (expected json or dot)");
}

}  // namespace atomspec
