#include "atomspec/path_algebra.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <set>

#include "atomspec/errors.hpp"

namespace atomspec {

namespace {

std::uint64_t combined_fingerprint(const Quiver& q, const BaseRing& ring) {
  std::uint64_t h = q.fingerprint();
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  mix(static_cast<std::uint64_t>(ring.kind()));
  mix(static_cast<std::uint64_t>(ring.modulus()));
  return h;
}

void validate_path(const Quiver& q, const Path& p) {
  if (p.trivial()) {
    if (p.source < 0 || p.source >= q.vertex_count() || p.source != p.target)
      throw UsageError("malformed trivial path");
    return;
  }
  int at = p.source;
  for (int a : p.arrows) {
    if (a < 0 || a >= q.arrow_count()) throw UsageError("path uses an arrow index out of range");
    if (q.arrow(a).source != at) throw UsageError("path arrows do not compose");
    at = q.arrow(a).target;
  }
  if (at != p.target) throw UsageError("path target mismatch");
}

}  // namespace

PathAlgebra::PathAlgebra(Quiver q, BaseRing ring)
    : quiver_(std::move(q)), ring_(std::move(ring)) {
  ctx_ = combined_fingerprint(quiver_, ring_);
}

void PathAlgebra::check_ctx(const AlgebraElement& x) const {
  if (x.ctx != 0 && x.ctx != ctx_)
    throw UsageError("algebra element belongs to a different quiver/ring context");
}

AlgebraElement PathAlgebra::one() const {
  AlgebraElement out = zero();
  for (int v = 0; v < quiver_.vertex_count(); ++v)
    out.terms[quiver_.trivial_path(v)] = ring_.canon(1);
  return out;
}

AlgebraElement PathAlgebra::e(int vertex) const {
  return path_elem(quiver_.trivial_path(vertex));
}

AlgebraElement PathAlgebra::arrow_elem(int arrow) const {
  return path_elem(quiver_.arrow_path(arrow));
}

AlgebraElement PathAlgebra::path_elem(const Path& p, long long coeff) const {
  validate_path(quiver_, p);
  AlgebraElement out = zero();
  long long c = ring_.canon(coeff);
  if (c != 0) out.terms[p] = c;
  return out;
}

AlgebraElement PathAlgebra::add(const AlgebraElement& x,
                                const AlgebraElement& y) const {
  check_ctx(x);
  check_ctx(y);
  AlgebraElement out = x;
  out.ctx = ctx_;
  for (const auto& [p, c] : y.terms) {
    long long s = ring_.add(coeff(out, p), c);
    if (s == 0)
      out.terms.erase(p);
    else
      out.terms[p] = s;
  }
  return out;
}

AlgebraElement PathAlgebra::negate(const AlgebraElement& x) const {
  check_ctx(x);
  AlgebraElement out = zero();
  for (const auto& [p, c] : x.terms) out.terms[p] = ring_.neg(c);
  return out;
}

AlgebraElement PathAlgebra::sub(const AlgebraElement& x,
                                const AlgebraElement& y) const {
  return add(x, negate(y));
}

AlgebraElement PathAlgebra::scalar_mul(long long c,
                                       const AlgebraElement& x) const {
  check_ctx(x);
  AlgebraElement out = zero();
  for (const auto& [p, v] : x.terms) {
    long long m = ring_.mul(c, v);
    if (m != 0) out.terms[p] = m;
  }
  return out;
}

AlgebraElement PathAlgebra::multiply(const AlgebraElement& x,
                                     const AlgebraElement& y) const {
  check_ctx(x);
  check_ctx(y);
  AlgebraElement out = zero();
  for (const auto& [p, cp] : x.terms) {
    for (const auto& [q, cq] : y.terms) {
      auto pq = try_compose(quiver_, p, q);
      if (!pq) continue;
      long long s = ring_.add(coeff(out, *pq), ring_.mul(cp, cq));
      if (s == 0)
        out.terms.erase(*pq);
      else
        out.terms[*pq] = s;
    }
  }
  return out;
}

long long PathAlgebra::coeff(const AlgebraElement& x, const Path& p) const {
  auto it = x.terms.find(p);
  return it == x.terms.end() ? 0 : it->second;
}

std::string PathAlgebra::to_string(const AlgebraElement& x) const {
  if (x.is_zero()) return "0";
  std::string out;
  for (auto it = x.terms.rbegin(); it != x.terms.rend(); ++it) {
    if (!out.empty()) out += " + ";
    if (it->second != 1) out += std::to_string(it->second) + "*";
    out += quiver_.path_string(it->first);
  }
  return out;
}

Relation make_relation(const PathAlgebra& alg, AlgebraElement elem,
                       std::string source_text, int line, int col) {
  alg.check_ctx(elem);
  elem.ctx = alg.ctx();
  if (!elem.is_zero()) {
    const Path& first = elem.terms.begin()->first;
    for (const auto& [p, c] : elem.terms) {
      if (p.source != first.source || p.target != first.target)
        throw UsageError("relation is not a combination of parallel paths: " +
                         alg.to_string(elem));
    }
  }
  return Relation{std::move(elem), std::move(source_text), line, col};
}

std::string relation_display(const PathAlgebra& alg, const Relation& rel) {
  if (!rel.source_text.empty()) return rel.source_text;
  return alg.to_string(rel.element);
}

bool is_admissible(const PathAlgebra& alg, const Relation& rel) {
  alg.check_ctx(rel.element);
  for (const auto& [p, c] : rel.element.terms)
    if (p.trivial()) return false;
  return true;
}

std::optional<Path> monomial_path(const PathAlgebra& alg, const Relation& rel) {
  alg.check_ctx(rel.element);
  if (rel.element.terms.size() != 1) return std::nullopt;
  const auto& [p, c] = *rel.element.terms.begin();
  if (!alg.ring().is_unit(c)) return std::nullopt;
  return p;
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::In:
      return "in";
    case Membership::NotIn:
      return "not-in";
    case Membership::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string to_string(Tri t) {
  switch (t) {
    case Tri::Yes:
      return "yes";
    case Tri::No:
      return "no";
    case Tri::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

// Does `lead` occur as a contiguous factor of `w` starting after the first
// k arrows?  A trivial lead e_i occurs at every position where w passes
// through i.
bool match_at(const Quiver& q, const Path& w, const Path& lead, int k) {
  if (lead.trivial()) return q.vertex_at(w, k) == lead.source;
  if (k + lead.length() > w.length()) return false;
  return std::equal(lead.arrows.begin(), lead.arrows.end(),
                    w.arrows.begin() + k);
}

std::vector<int> occurrences(const Quiver& q, const Path& w, const Path& lead) {
  std::vector<int> out;
  for (int k = 0; k + lead.length() <= w.length(); ++k)
    if (match_at(q, w, lead, k)) out.push_back(k);
  return out;
}

bool contains_factor(const Quiver& q, const Path& w, const Path& g) {
  for (int k = 0; k + g.length() <= w.length(); ++k)
    if (match_at(q, w, g, k)) return true;
  return false;
}

// w = beta * mid * alpha (composition order) where mid occupies arrow
// positions [k, k+len).
std::pair<Path, Path> split_around(const Quiver& q, const Path& w, int k,
                                   int len) {
  Path alpha{w.source, q.vertex_at(w, k),
             std::vector<int>(w.arrows.begin(), w.arrows.begin() + k)};
  Path beta{q.vertex_at(w, k + len), w.target,
            std::vector<int>(w.arrows.begin() + k + len, w.arrows.end())};
  return {alpha, beta};
}

}  // namespace

IdealHandle::IdealHandle(const PathAlgebra& alg,
                         std::vector<Relation> generators, IdealOptions options)
    : alg_(alg), options_(options) {
  if (options_.degree_bound < 1) throw UsageError("degree bound must be >= 1");

  std::vector<AlgebraElement> gens;
  bool all_monomial = true;
  for (const auto& rel : generators) {
    alg_.check_ctx(rel.element);
    if (rel.is_zero()) continue;  // zero relations are accepted and ignored
    gens.push_back(rel.element);
    auto mono = monomial_path(alg_, rel);
    if (mono)
      mono_.push_back(*mono);
    else
      all_monomial = false;
    int len = rel.element.terms.begin()->first.length();
    for (const auto& [p, c] : rel.element.terms)
      if (p.length() != len) homogeneous_ = false;
  }

  if (gens.empty()) {
    engine_ = Engine::Zero;
    complete_up_to_ = INT_MAX;
    return;
  }
  if (all_monomial) {
    engine_ = Engine::Monomial;
    std::sort(mono_.begin(), mono_.end());
    mono_.erase(std::unique(mono_.begin(), mono_.end()), mono_.end());
    complete_up_to_ = INT_MAX;
    return;
  }

  mono_.clear();
  if (!alg_.ring().is_field())
    throw CapabilityError(
        "non-monomial relation sets are supported over prime fields only "
        "(ring is " + alg_.ring().display() + ")");
  engine_ = Engine::Rewriting;
  for (const auto& g : gens) {
    AlgebraElement nf = reduce_full(g);
    if (!nf.is_zero()) add_rule(nf);
  }
  complete();
}

AlgebraElement IdealHandle::reduce_full(AlgebraElement x) const {
  const Quiver& q = alg_.quiver();
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = x.terms.rbegin(); it != x.terms.rend(); ++it) {
      const Path w = it->first;
      const long long c = it->second;
      int best_pos = -1, best_rule = -1;
      for (int k = 0; k <= w.length() && best_pos < 0; ++k) {
        for (std::size_t r = 0; r < rules_.size(); ++r) {
          if (rules_[r].lead.length() + k > w.length()) continue;
          if (match_at(q, w, rules_[r].lead, k)) {
            best_pos = k;
            best_rule = static_cast<int>(r);
            break;
          }
        }
      }
      if (best_pos < 0) continue;
      const Rule& rule = rules_[best_rule];
      auto [alpha, beta] = split_around(q, w, best_pos, rule.lead.length());
      AlgebraElement repl = alg_.multiply(
          alg_.path_elem(beta), alg_.multiply(rule.tail, alg_.path_elem(alpha)));
      x = alg_.add(x, alg_.scalar_mul(
                          c, alg_.sub(repl, alg_.path_elem(w))));
      changed = true;
      break;
    }
  }
  return x;
}

void IdealHandle::add_rule(const AlgebraElement& nf) {
  const auto& [lead, c] = *nf.terms.rbegin();
  long long cinv = alg_.ring().inv(c);
  AlgebraElement rest = alg_.sub(nf, alg_.path_elem(lead, c));
  AlgebraElement tail = alg_.scalar_mul(alg_.ring().neg(cinv), rest);
  rules_.push_back(Rule{lead, std::move(tail)});
  enqueue_ambiguities(static_cast<int>(rules_.size()) - 1);
}

void IdealHandle::enqueue_ambiguities(int nr) {
  const Quiver& q = alg_.quiver();
  auto push = [this](const Path& word, int ra, int pa, int rb, int pb) {
    if (word.length() > options_.degree_bound) {
      skipped_over_bound_ = true;
      return;
    }
    pending_.push_back(Ambiguity{word.length(), amb_seq_++, word, ra, pa, rb, pb});
  };
  auto pair_ambiguities = [&](int i, int j) {
    const Path& u = rules_[i].lead;
    const Path& v = rules_[j].lead;
    // Inclusion: v a proper factor of u; reduce u two ways.
    if (i != j && v.length() < u.length()) {
      for (int k : occurrences(q, u, v)) push(u, i, 0, j, k);
    }
    // Overlap: a proper suffix of u equals a proper prefix of v.
    for (int t = 1; t < std::min(u.length(), v.length()); ++t) {
      if (!std::equal(u.arrows.end() - t, u.arrows.end(), v.arrows.begin()))
        continue;
      Path word{u.source, v.target, u.arrows};
      word.arrows.insert(word.arrows.end(), v.arrows.begin() + t,
                         v.arrows.end());
      push(word, i, 0, j, u.length() - t);
    }
  };
  for (int other = 0; other < nr; ++other) {
    pair_ambiguities(nr, other);
    pair_ambiguities(other, nr);
  }
  pair_ambiguities(nr, nr);
}

void IdealHandle::complete() {
  const Quiver& q = alg_.quiver();
  while (!pending_.empty()) {
    auto it = std::min_element(pending_.begin(), pending_.end());
    Ambiguity amb = *it;
    pending_.erase(it);
    auto one_step = [&](int r, int pos) {
      const Rule& rule = rules_[r];
      auto [alpha, beta] = split_around(q, amb.word, pos, rule.lead.length());
      return alg_.multiply(alg_.path_elem(beta),
                           alg_.multiply(rule.tail, alg_.path_elem(alpha)));
    };
    AlgebraElement s = reduce_full(
        alg_.sub(one_step(amb.rule_a, amb.pos_a), one_step(amb.rule_b, amb.pos_b)));
    if (!s.is_zero()) add_rule(s);
  }
  // NotIn certification.  With every ambiguity resolved the basis decides
  // membership at all degrees.  Otherwise the degree-truncated certificate
  // is sound only for length-homogeneous generator sets: inhomogeneous
  // ideals can reach a low-degree element through higher-degree overlaps
  // (take x*x - y and x*x*x on a two-loop quiver: x*y appears only via the
  // degree-3 overlap), so without both, no NotIn is ever certified.
  if (!skipped_over_bound_)
    complete_up_to_ = INT_MAX;
  else if (homogeneous_)
    complete_up_to_ = options_.degree_bound;
  else
    complete_up_to_ = -1;
}

Membership IdealHandle::membership(const AlgebraElement& x) const {
  alg_.check_ctx(x);
  if (x.is_zero()) return Membership::In;
  switch (engine_) {
    case Engine::Zero:
      return Membership::NotIn;
    case Engine::Monomial: {
      const Quiver& q = alg_.quiver();
      for (const auto& [p, c] : x.terms) {
        bool covered = false;
        for (const Path& g : mono_)
          if (contains_factor(q, p, g)) {
            covered = true;
            break;
          }
        if (!covered) return Membership::NotIn;
      }
      return Membership::In;
    }
    case Engine::Rewriting: {
      AlgebraElement nf = reduce_full(x);
      if (nf.is_zero()) return Membership::In;
      if (x.degree() <= complete_up_to_) return Membership::NotIn;
      return Membership::Inconclusive;
    }
  }
  return Membership::Inconclusive;
}

Tri IdealHandle::arrow_power_contained(int m) const {
  if (m < 1) throw UsageError("arrow power exponent must be >= 1");
  auto paths = paths_of_length(alg_.quiver(), m);
  bool inconclusive = false;
  for (const Path& p : paths) {
    switch (membership(alg_.path_elem(p))) {
      case Membership::In:
        break;
      case Membership::NotIn:
        return Tri::No;
      case Membership::Inconclusive:
        inconclusive = true;
        break;
    }
  }
  return inconclusive ? Tri::Inconclusive : Tri::Yes;
}

namespace {

// Walk automaton for factor avoidance.  States are (vertex, recent stub)
// where the stub is the longest suffix of the walk that is a proper prefix
// of some generator word.  A transition producing a full generator factor
// is dead; an infinite generator-free walk exists iff the live transition
// graph has a directed cycle.
bool monomial_walks_bounded(const Quiver& q, const std::vector<Path>& gens) {
  using Stub = std::vector<int>;
  struct State {
    int vertex;
    Stub stub;
    bool operator<(const State& o) const {
      if (vertex != o.vertex) return vertex < o.vertex;
      return stub < o.stub;
    }
  };

  auto is_prefix = [&](const Stub& s) {
    for (const Path& g : gens) {
      if (s.size() >= g.arrows.size()) continue;
      if (std::equal(s.begin(), s.end(), g.arrows.begin())) return true;
    }
    return false;
  };
  auto hits_generator = [&](const Stub& s) {
    for (const Path& g : gens) {
      if (g.arrows.size() > s.size()) continue;
      if (std::equal(g.arrows.begin(), g.arrows.end(),
                     s.end() - g.arrows.size()))
        return true;
    }
    return false;
  };

  std::map<State, int> ids;
  std::vector<State> states;
  std::vector<std::vector<int>> succ;
  auto intern = [&](const State& st) {
    auto [it, fresh] = ids.try_emplace(st, static_cast<int>(states.size()));
    if (fresh) {
      states.push_back(st);
      succ.emplace_back();
    }
    return it->second;
  };

  for (int v = 0; v < q.vertex_count(); ++v) intern(State{v, {}});
  for (std::size_t head = 0; head < states.size(); ++head) {
    State st = states[head];
    for (int a = 0; a < q.arrow_count(); ++a) {
      if (q.arrow(a).source != st.vertex) continue;
      Stub ext = st.stub;
      ext.push_back(a);
      if (hits_generator(ext)) continue;  // dead: the walk gained a factor
      while (!ext.empty() && !is_prefix(ext)) ext.erase(ext.begin());
      int to = intern(State{q.arrow(a).target, std::move(ext)});
      succ[head].push_back(to);
      // interning may grow `states`; the loop bound re-reads states.size()
    }
  }

  enum { White, Grey, Black };
  std::vector<int> color(states.size(), White);
  for (std::size_t root = 0; root < states.size(); ++root) {
    if (color[root] != White) continue;
    std::vector<std::pair<int, std::size_t>> stack{{static_cast<int>(root), 0}};
    color[root] = Grey;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < succ[v].size()) {
        int w = succ[v][i++];
        if (color[w] == Grey) return false;
        if (color[w] == White) {
          color[w] = Grey;
          stack.push_back({w, 0});
        }
      } else {
        color[v] = Black;
        stack.pop_back();
      }
    }
  }
  return true;
}

}  // namespace

Tri is_right_rooted(const PathAlgebra& alg,
                    const std::vector<Relation>& relations,
                    RootedOptions options) {
  std::vector<Relation> live;
  for (const auto& rel : relations) {
    if (!is_admissible(alg, rel))
      throw UsageError("relation is not admissible: " +
                       relation_display(alg, rel));
    if (!rel.is_zero()) live.push_back(rel);
  }

  bool acyclic = is_acyclic(alg.quiver());
  if (live.empty()) return acyclic ? Tri::Yes : Tri::No;
  if (acyclic) return Tri::Yes;  // no infinite composable sequence at all

  bool all_monomial = true;
  std::vector<Path> gens;
  for (const auto& rel : live) {
    auto mono = monomial_path(alg, rel);
    if (!mono) {
      all_monomial = false;
      break;
    }
    gens.push_back(*mono);
  }
  if (all_monomial)
    return monomial_walks_bounded(alg.quiver(), gens) ? Tri::Yes : Tri::No;

  IdealHandle ideal(alg, live, IdealOptions{options.degree_bound});
  for (int m = 1; m <= options.mmax; ++m)
    if (ideal.arrow_power_contained(m) == Tri::Yes) return Tri::Yes;
  // A bounded search cannot refute containment at every power.
  return Tri::Inconclusive;
}

std::vector<Relation> arrow_power_relations(const PathAlgebra& alg, int m) {
  if (m < 1) throw UsageError("arrow power exponent must be >= 1");
  std::vector<Relation> out;
  for (const Path& p : paths_of_length(alg.quiver(), m))
    out.push_back(make_relation(alg, alg.path_elem(p)));
  return out;
}

}  // namespace atomspec
