#pragma once

// Triangular matrix rings T = [[A,0],[M,B]] over commutative A, B with a
// finite (B,A)-bimodule M.  Modules over T are comma objects (X, Y, theta)
// with X an A-module, Y a B-module and theta an A-balanced pairing
// M x X -> Y.  The spectrum of T is the disjoint union Spec A + Spec B;
// the finite oracle works over a single prime field and checks the stalk
// and kernel functors concretely.

#include <string>
#include <vector>

#include "atomspec/fplinalg.hpp"
#include "atomspec/ring.hpp"
#include "atomspec/spectrum.hpp"

namespace atomspec {

// The supported coefficient rings are all generated by 1, so a unital
// bimodule action is canonical; explicit tables are validated against it.
struct BimoduleDescriptor {
  enum class Group { VectorSpace, Cyclic };

  Group group = Group::VectorSpace;
  long long p = 2;  // VectorSpace: the field F_p
  int r = 1;        // VectorSpace: rank, M = F_p^r
  long long m = 0;  // Cyclic: M = Z/m

  static BimoduleDescriptor vector_space(long long p, int r);
  static BimoduleDescriptor cyclic(long long m);

  std::string display() const;  // "F2", "F2^3", "Z/4"

  friend bool operator==(const BimoduleDescriptor&,
                         const BimoduleDescriptor&) = default;
};

// Parses {"group": "F2^r"|"Z/m", "left_action": ..., "right_action": ...}.
// Actions may be omitted or "canonical"; explicit tables must equal the
// canonical unital action (identity on the generator 1).
BimoduleDescriptor parse_bimodule_json(const std::string& text);

struct TriangularRing {
  BaseRing A;
  BaseRing B;
  BimoduleDescriptor M;

  std::string display() const;  // "[[Z,0],[F3,F3]]"
};

// Validates that M carries canonical unital actions of B (left) and A
// (right): the scalar prime divides / matches the ring moduli.
TriangularRing make_triangular(const BaseRing& A, const BaseRing& B,
                               const BimoduleDescriptor& M);

// Spec A + Spec B with componentwise order and topology; complete
// unconditionally.  Component "A" labels <T/[[p,0],[M,B]]>, component "B"
// labels <T/[[A,0],[M,q]]>.
AtomSpectrum triangular_spectrum(const TriangularRing& T);

// A module over T with everything over one prime field: X = F_p^dx,
// Y = F_p^dy, theta given by one dy x dx matrix per basis element of M.
struct CommaObject {
  int dx = 0;
  int dy = 0;
  std::vector<fp::Mat> theta;

  bool is_zero() const { return dx == 0 && dy == 0; }

  friend bool operator==(const CommaObject&, const CommaObject&) = default;
};

// alpha: X -> X' and beta: Y -> Y' with beta . theta[k] = theta'[k] . alpha.
struct CommaMorphism {
  fp::Mat alpha;
  fp::Mat beta;

  friend bool operator==(const CommaMorphism&, const CommaMorphism&) = default;
};

struct CommaKernel {
  CommaObject object;
  CommaMorphism inclusion;  // into the morphism's source
};

struct CommaCokernel {
  CommaObject object;
  CommaMorphism projection;  // from the morphism's target
};

struct CommaGuards {
  long long hom_space = 100'000;
  long long enumeration = 1'000'000;
};

class CommaOracle {
 public:
  // Requires A = B = F_p and M = F_p^r over the same prime.
  explicit CommaOracle(const TriangularRing& T, CommaGuards guards = {});

  int p() const { return p_; }
  int rank() const { return r_; }

  CommaObject make(int dx, int dy, std::vector<fp::Mat> theta) const;
  CommaObject zero() const;
  CommaObject stalk_A(int dx) const;  // (X, 0, 0)
  CommaObject stalk_B(int dy) const;  // (0, Y, 0)

  // {x in X : theta(m, x) = 0 for all m}, as a subspace of X.
  fp::Subspace k_A(const CommaObject& Z) const;
  // The Y component, as the full subspace of Y.
  fp::Subspace k_B(const CommaObject& Z) const;

  bool is_morphism(const CommaObject& Z, const CommaObject& W,
                   const CommaMorphism& f) const;
  CommaMorphism identity_morphism(const CommaObject& Z) const;
  CommaMorphism zero_morphism(const CommaObject& Z,
                              const CommaObject& W) const;
  CommaMorphism compose(const CommaObject& Z, const CommaObject& W,
                        const CommaObject& V, const CommaMorphism& f,
                        const CommaMorphism& g) const;  // g . f : Z -> V

  // Componentwise kernel and cokernel; UsageError when f is not a
  // morphism Z -> W.
  CommaKernel kernel(const CommaObject& Z, const CommaObject& W,
                     const CommaMorphism& f) const;
  CommaCokernel cokernel(const CommaObject& Z, const CommaObject& W,
                         const CommaMorphism& f) const;

  // The canonical map stalk_A(k_A(Z)) -> Z (counit of the stalk/kernel
  // adjunction); both components are injective.
  CommaMorphism counit_A(const CommaObject& Z) const;

  // Basis of the space of morphisms Z -> W.
  std::vector<CommaMorphism> hom_basis(const CommaObject& Z,
                                       const CommaObject& W) const;
  // All morphisms Z -> W (guarded by hom_space).
  std::vector<CommaMorphism> all_morphisms(const CommaObject& Z,
                                           const CommaObject& W) const;
  bool is_mono(const CommaObject& Z, const CommaObject& W,
               const CommaMorphism& f) const;
  bool exists_mono(const CommaObject& Z, const CommaObject& W) const;

  // Every comma object with dx <= dx_max, dy <= dy_max, in a fixed order.
  std::vector<CommaObject> enumerate(int dx_max, int dy_max) const;

 private:
  void validate(const CommaObject& Z) const;

  int p_ = 2;
  int r_ = 1;
  CommaGuards guards_;
};

}  // namespace atomspec
