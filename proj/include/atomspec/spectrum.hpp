#pragma once

// Assembly of the atom spectrum of a quiver algebra with admissible
// relations: one copy of Spec k per vertex, ordered and topologized
// componentwise.  When right-rootedness cannot be certified the result is
// downgraded to the embedded image (status EmbeddingOnly) and never claims
// to list every atom.

#include <string>
#include <utility>
#include <vector>

#include "atomspec/dsl.hpp"
#include "atomspec/path_algebra.hpp"
#include "atomspec/quiver.hpp"
#include "atomspec/ring.hpp"

namespace atomspec {

struct AtomPoint {
  int component = 0;
  PrimePoint prime;

  friend bool operator==(const AtomPoint&, const AtomPoint&) = default;
  friend std::strong_ordering operator<=>(const AtomPoint&,
                                          const AtomPoint&) = default;
};

// One copy of Spec k.  The label template renders a point's atom label by
// substituting "{P}" with the prime's display form.
struct SpectrumComponent {
  std::string name;
  SpectrumModel model;
  std::string label_template;
};

enum class SpectrumStatus { Complete, EmbeddingOnly };

struct AtomSpectrum {
  std::vector<SpectrumComponent> components;
  SpectrumStatus status = SpectrumStatus::Complete;
  std::string ring_display;
  // Nonempty when completeness could not be certified; CLI surfaces it.
  std::string warning;

  bool symbolic() const;
};

// Rejects non-admissible relations (UsageError naming the relation).
// Status is Complete exactly when right-rootedness is certified Yes.
AtomSpectrum atom_spectrum(const PathAlgebra& alg,
                           const std::vector<Relation>& relations,
                           const RootedOptions& options = {});

std::vector<long long> default_prime_sample();  // {2, 3, 5}

// Concrete point list: symbolic components materialize as (0) plus the
// given primes, finite components list all their points.  The returned
// order is the index order used by order_pairs / emit.
std::vector<AtomPoint> sample_points(
    const std::vector<SpectrumComponent>& components,
    const std::vector<long long>& primes);
std::vector<AtomPoint> sample_points(const AtomSpectrum& S);

std::string point_label(const AtomSpectrum& S, const AtomPoint& x);

// Componentwise specialization order; points in distinct components are
// never comparable.
bool point_leq(const AtomSpectrum& S, const AtomPoint& a, const AtomPoint& b);

// The full sampled order relation as index pairs (reflexive pairs
// included), sorted.
std::vector<std::pair<int, int>> order_pairs(const AtomSpectrum& S,
                                             const std::vector<AtomPoint>& pts);

// A subset of the whole spectrum, one slice per component.
struct AtomSubset {
  std::vector<SpecSubset> per_component;
};

// Open iff every slice is specialization-closed in its component.
bool is_open_atoms(const AtomSpectrum& S, const AtomSubset& subset);

// Trace-topology test on a finite sample: true iff `member` marks a set
// that is the restriction of an open set to the sample.
bool sampled_subset_open(const AtomSpectrum& S,
                         const std::vector<AtomPoint>& pts,
                         const std::vector<bool>& member);

// The comonoform ideal attached to a vertex i and a prime p of the base
// ring: all elements whose e_i-coefficient lies in p.  The generator list
// is {e_j : j != i}, all arrows, and x*e_i for each generator x of p.
struct ComonoformIdeal {
  int vertex = 0;
  PrimePoint prime;
  std::vector<long long> prime_gens;
  std::vector<AlgebraElement> generators;
};

ComonoformIdeal comonoform_ideal(const PathAlgebra& alg, int vertex,
                                 const PrimePoint& prime);

// The defining membership predicate (coefficient test), independent of the
// generator list.
bool ideal_membership(const PathAlgebra& alg, const ComonoformIdeal& C,
                      const AlgebraElement& x);

std::string ideal_label(const PathAlgebra& alg, const ComonoformIdeal& C);

// An element lying in exactly one of the two ideals; throws UsageError
// when they describe the same point.
AlgebraElement separating_element(const PathAlgebra& alg,
                                  const ComonoformIdeal& a,
                                  const ComonoformIdeal& b);

// Exhaustive check, over a prime field, that the generator list spans
// exactly the set satisfying the membership predicate in degrees
// <= deg_bound.  CapabilityError for other rings, ResourceError when the
// path basis is too large.
bool verify_ideal_generators(const PathAlgebra& alg, const ComonoformIdeal& C,
                             int deg_bound);

// Named presentations with known matrix or quotient forms.
struct PresentationReport {
  std::string name;
  Quiver quiver;
  std::vector<RelationSource> relations;
  std::string algebra_display;
  // subspace(n): per-vertex matrix ideal pictures like "[[p,0],[k,k]]".
  std::vector<std::string> matrix_ideals;
  std::string atom_label_scheme;
};

// name is "subspace(n)" with n >= 2 or "free(n,m)" with n >= 1, m >= 1.
PresentationReport special_presentations(const std::string& name);

// The atom label of the free presentation at a prime: the quotient of the
// base ring, e.g. "<Z>" at (0) over Z and "<F2>" at (2).
std::string free_atom_label(const BaseRing& ring, const PrimePoint& prime);

// Emission.  JSON: {"status","ring","points","order","open_basis_note"},
// where "order" lists the strict sampled comparabilities.  DOT: Hasse
// diagram of the sampled order, node ids "v<name>_p<prime>".
std::string emit_json(const AtomSpectrum& S,
                      const std::vector<long long>& primes);
std::string emit_dot(const AtomSpectrum& S,
                     const std::vector<long long>& primes);
std::string emit(const AtomSpectrum& S, const std::string& format,
                 const std::vector<long long>& primes);

}  // namespace atomspec
