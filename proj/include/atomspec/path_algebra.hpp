#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atomspec/quiver.hpp"
#include "atomspec/ring.hpp"

namespace atomspec {

// Finitely supported coefficient map on paths.  Zero coefficients are
// never stored; the ctx field ties an element to the algebra it was built
// in so mixed-context arithmetic fails loudly.
struct AlgebraElement {
  std::uint64_t ctx = 0;
  std::map<Path, long long> terms;

  bool is_zero() const { return terms.empty(); }
  // Largest support path length; -1 for the zero element.
  int degree() const {
    return terms.empty() ? -1 : terms.rbegin()->first.length();
  }

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.terms == b.terms;
  }
};

// The path algebra kQ over a BaseRing: the free module on paths, with
// multiplication by composition (pq = "first q, then p") and zero for
// non-composable pairs.  The unit is the sum of all trivial paths.
class PathAlgebra {
 public:
  PathAlgebra(Quiver q, BaseRing ring);

  const Quiver& quiver() const { return quiver_; }
  const BaseRing& ring() const { return ring_; }
  std::uint64_t ctx() const { return ctx_; }

  AlgebraElement zero() const { return AlgebraElement{ctx_, {}}; }
  AlgebraElement one() const;
  AlgebraElement e(int vertex) const;
  AlgebraElement arrow_elem(int arrow) const;
  AlgebraElement path_elem(const Path& p, long long coeff = 1) const;

  AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y) const;
  AlgebraElement sub(const AlgebraElement& x, const AlgebraElement& y) const;
  AlgebraElement negate(const AlgebraElement& x) const;
  AlgebraElement scalar_mul(long long c, const AlgebraElement& x) const;
  AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) const;

  long long coeff(const AlgebraElement& x, const Path& p) const;

  // Terms largest-first, e.g. "x*x + 2*e_v"; "0" for the zero element.
  std::string to_string(const AlgebraElement& x) const;

  // Throws UsageError when x was built against a different quiver/ring.
  void check_ctx(const AlgebraElement& x) const;

 private:
  Quiver quiver_;
  BaseRing ring_;
  std::uint64_t ctx_ = 0;
};

// A relation: an element of kQ whose support paths are pairwise parallel
// (shared source and target).  The zero element is a valid relation.
struct Relation {
  AlgebraElement element;
  std::string source_text;  // DSL fragment, when parsed from one
  int line = -1;
  int col = -1;

  bool is_zero() const { return element.is_zero(); }
};

// Validates the parallel-paths invariant; throws UsageError otherwise.
Relation make_relation(const PathAlgebra& alg, AlgebraElement elem,
                       std::string source_text = "", int line = -1,
                       int col = -1);

// Human-readable name for diagnostics: the DSL fragment when present,
// otherwise the rendered element.
std::string relation_display(const PathAlgebra& alg, const Relation& rel);

// Admissible: every trivial-path coefficient vanishes, i.e. the relation
// lies in the arrow ideal.  The zero relation is admissible.
bool is_admissible(const PathAlgebra& alg, const Relation& rel);

// When the relation is a single path with a unit coefficient, the path.
std::optional<Path> monomial_path(const PathAlgebra& alg, const Relation& rel);

enum class Membership { In, NotIn, Inconclusive };
enum class Tri { Yes, No, Inconclusive };

std::string to_string(Membership m);
std::string to_string(Tri t);

struct IdealOptions {
  int degree_bound = 12;  // completion cutoff for the rewriting engine
};

// Two-sided ideal generated by a relation set, with a membership test.
//
// Monomial generator sets (each a single path with a unit coefficient)
// use exact factor containment over any supported ring.  General sets
// over a prime field use a rewriting basis completed up to a degree
// bound: In when the element reduces to zero, NotIn when the basis is
// certified complete at the element's degree, Inconclusive otherwise.
// Definite answers are exact; general sets over Z or Z/n are rejected
// with a CapabilityError at construction.
class IdealHandle {
 public:
  enum class Engine { Zero, Monomial, Rewriting };

  IdealHandle(const PathAlgebra& alg, std::vector<Relation> generators,
              IdealOptions options = {});

  Membership membership(const AlgebraElement& x) const;

  // Whether every path of length exactly m lies in the ideal, i.e. the
  // m-th power of the arrow ideal is contained in it.  Yes is monotone
  // in m.
  Tri arrow_power_contained(int m) const;

  Engine engine() const { return engine_; }
  // Degree up to which NotIn answers are certified (INT_MAX when the
  // membership test is complete at every degree).
  int complete_up_to() const { return complete_up_to_; }
  const std::vector<Path>& monomial_generators() const { return mono_; }
  const PathAlgebra& algebra() const { return alg_; }

  struct Rule {
    Path lead;
    AlgebraElement tail;  // lead == tail modulo the ideal; tail < lead
  };
  const std::vector<Rule>& rules() const { return rules_; }

 private:
  AlgebraElement reduce_full(AlgebraElement x) const;
  void add_rule(const AlgebraElement& nf);
  void enqueue_ambiguities(int new_rule);
  void complete();

  struct Ambiguity {
    int deg = 0;
    int seq = 0;
    Path word;
    int rule_a = 0, pos_a = 0;
    int rule_b = 0, pos_b = 0;

    friend bool operator<(const Ambiguity& x, const Ambiguity& y) {
      if (x.deg != y.deg) return x.deg < y.deg;
      return x.seq < y.seq;
    }
  };

  PathAlgebra alg_;
  IdealOptions options_;
  Engine engine_ = Engine::Zero;
  std::vector<Path> mono_;
  std::vector<Rule> rules_;
  std::vector<Ambiguity> pending_;
  int amb_seq_ = 0;
  bool skipped_over_bound_ = false;
  bool homogeneous_ = true;
  int complete_up_to_ = 0;
};

struct RootedOptions {
  int mmax = 12;         // arrow-power search horizon (general engine)
  int degree_bound = 12; // completion cutoff passed through
};

// Whether every infinite composable arrow sequence eventually has a prefix
// path inside the relation ideal.  Exact for the empty set (acyclicity)
// and for monomial sets (factor-avoidance walk automaton); for general
// sets over a field the answer is Yes (some power of the arrow ideal is
// provably contained) or Inconclusive, never No.  Non-admissible relations
// raise UsageError naming the offender.
Tri is_right_rooted(const PathAlgebra& alg,
                    const std::vector<Relation>& relations,
                    RootedOptions options = {});

// Relations forcing every path of length m to vanish (the m-th power of
// the arrow ideal, listed as unit-coefficient relations).
std::vector<Relation> arrow_power_relations(const PathAlgebra& alg, int m);

}  // namespace atomspec
