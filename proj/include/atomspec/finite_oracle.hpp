#pragma once

// Exhaustive verification over small prime fields.  Representations of the
// quiver are enumerated as raw matrix tuples, submodules as stable subspace
// tuples, and monoformness / atom equivalence are decided from their
// definitions.  Everything is guarded: past the configured limits the
// functions throw ResourceError instead of truncating silently.

#include <string>
#include <utility>
#include <vector>

#include "atomspec/fplinalg.hpp"
#include "atomspec/path_algebra.hpp"

namespace atomspec {

// A finite-dimensional representation: one F_p space per vertex, one matrix
// per arrow of shape dims[target] x dims[source], acting on columns.
struct FiniteRep {
  std::vector<int> dims;
  std::vector<fp::Mat> mats;

  int total() const;
  bool is_zero() const { return total() == 0; }

  friend bool operator==(const FiniteRep&, const FiniteRep&) = default;
};

// A submodule: one subspace per vertex, stable under every arrow.
struct SubRep {
  std::vector<fp::Subspace> spaces;

  int total() const;

  friend bool operator==(const SubRep&, const SubRep&) = default;
};

struct OracleGuards {
  long long max_prime = 7;
  long long submodule_product = 1'000'000;
  long long hom_space = 100'000;
  long long matrix_tuples = 10'000'000;
};

class FiniteOracle {
 public:
  // Requires a prime-field algebra with p <= guards.max_prime.
  FiniteOracle(const PathAlgebra& alg, std::vector<Relation> relations,
               OracleGuards guards = {});

  const PathAlgebra& algebra() const { return alg_; }
  const std::vector<Relation>& relations() const { return relations_; }
  const OracleGuards& guards() const { return guards_; }
  int p() const { return p_; }

  FiniteRep make_rep(std::vector<int> dims, std::vector<fp::Mat> mats) const;
  FiniteRep zero_rep() const;
  FiniteRep stalk(int vertex) const;
  // The stalk of a d-dimensional F_p space: dims[vertex] = d, arrows zero.
  FiniteRep stalk_module(int vertex, int d) const;
  FiniteRep direct_sum(const FiniteRep& X, const FiniteRep& Y) const;

  fp::Mat path_matrix(const FiniteRep& X, const Path& path) const;
  fp::Mat relation_matrix(const FiniteRep& X, const Relation& rel) const;
  bool check_relations(const FiniteRep& X) const;
  bool check_relations(const FiniteRep& X,
                       const std::vector<Relation>& rels) const;

  // All arrow-stable subspace tuples, zero first and X last.
  std::vector<SubRep> submodules(const FiniteRep& X) const;
  FiniteRep sub_rep(const FiniteRep& X, const SubRep& S) const;
  FiniteRep quotient(const FiniteRep& X, const SubRep& S) const;

  // True iff some nonzero submodule of H is isomorphic to a submodule of H2.
  bool common_nonzero_subobject(const FiniteRep& H, const FiniteRep& H2) const;
  bool is_monoform(const FiniteRep& H) const;
  // UsageError unless both inputs are monoform.
  bool atom_equivalent(const FiniteRep& H, const FiniteRep& H2) const;
  // Indices of the given monoform representatives that are atom-equivalent
  // to some monoform subquotient of M.
  std::vector<int> asupp(const FiniteRep& M,
                         const std::vector<FiniteRep>& reps) const;

  // Intersection of the kernels of the matrices of arrows leaving `vertex`;
  // the whole space when no arrow leaves it.
  fp::Subspace k_i(const FiniteRep& X, int vertex) const;

  bool isomorphic(const FiniteRep& A, const FiniteRep& B) const;

  // Every representation with total dimension <= dim_bound satisfying the
  // relations, in a fixed deterministic order.
  std::vector<FiniteRep> enumerate_reps(int dim_bound) const;

 private:
  void validate_shape(const FiniteRep& X) const;
  std::vector<std::vector<fp::Subspace>> vertex_subspaces(
      const FiniteRep& X) const;

  PathAlgebra alg_;
  std::vector<Relation> relations_;
  OracleGuards guards_;
  int p_;
};

struct OracleCheck {
  std::string name;
  bool pass = true;
  std::vector<FiniteRep> witnesses;
};

struct OracleReport {
  std::vector<OracleCheck> checks;
  std::vector<std::pair<std::string, long long>> counts;

  bool all_pass() const;
  const OracleCheck* find(const std::string& name) const;
};

// Exhaustive small-instance check of the spectrum description:
//   stalks_pairwise_inequivalent   always
//   kernel_detects_nonzero         when right-rootedness is certified
//   monoform_matches_unique_stalk  when right-rootedness is certified
//   non_surjectivity_witnesses     otherwise (informational listing)
// Relations must be admissible.
OracleReport verify_spectrum_description(const FiniteOracle& oracle,
                                          int dim_bound,
                                          const RootedOptions& options = {});

std::string report_json(const FiniteOracle& oracle, const OracleReport& rep);

}  // namespace atomspec
