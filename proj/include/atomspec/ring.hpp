#pragma once

#include <compare>
#include <functional>
#include <string>
#include <vector>

namespace atomspec {

enum class RingKind { PrimeField, IntegerRing, IntegerModN };

// The commutative coefficient rings the tool computes with: F_p, Z, Z/n.
// Elements are canonical representatives in a long long; arithmetic is
// exact on them.
class BaseRing {
 public:
  static BaseRing prime_field(long long p);
  static BaseRing integers();
  static BaseRing integers_mod(long long n);

  RingKind kind() const { return kind_; }
  // p for F_p, n for Z/n, 0 for Z.
  long long modulus() const { return modulus_; }
  // Prime factorization of the modulus ({(p,1)} for F_p, empty for Z).
  const std::vector<std::pair<long long, int>>& factorization() const {
    return factors_;
  }

  bool is_field() const { return kind_ == RingKind::PrimeField; }

  long long canon(long long x) const;
  long long add(long long a, long long b) const;
  long long neg(long long a) const;
  long long mul(long long a, long long b) const;
  bool is_zero(long long a) const { return canon(a) == 0; }
  bool is_unit(long long a) const;
  // Multiplicative inverse of a unit; throws UsageError otherwise.
  long long inv(long long a) const;

  std::string display() const;  // "F2", "Z", "Z/12"

  friend bool operator==(const BaseRing&, const BaseRing&) = default;

 private:
  RingKind kind_ = RingKind::IntegerRing;
  long long modulus_ = 0;
  std::vector<std::pair<long long, int>> factors_;
};

// Parses a ring descriptor token: "F<p>", "Z", or "Z/<n>".
BaseRing parse_ring_descriptor(const std::string& text);

// A point of the prime spectrum of a BaseRing.
//   Zero      the generic point (0) of Spec Z
//   Prime     the ideal (p); a maximal point of Spec Z or a point of Spec Z/n
//   Unique    the sole point of Spec F_p
struct PrimePoint {
  enum class Tag { Zero, Prime, Unique };

  Tag tag = Tag::Unique;
  long long p = 0;

  static PrimePoint zero() { return {Tag::Zero, 0}; }
  static PrimePoint prime(long long p) { return {Tag::Prime, p}; }
  static PrimePoint unique() { return {Tag::Unique, 0}; }

  std::string display() const;      // "(0)", "(2)"; the unique point shows "(0)"
  std::string id_fragment() const;  // "0", "2", "u" for node ids
  std::string json() const;         // {"tag":"zero"} | {"tag":"prime","p":2} | {"tag":"unique"}

  friend bool operator==(const PrimePoint&, const PrimePoint&) = default;
  friend std::strong_ordering operator<=>(const PrimePoint& a,
                                          const PrimePoint& b) {
    if (auto c = static_cast<int>(a.tag) <=> static_cast<int>(b.tag); c != 0)
      return c;
    return a.p <=> b.p;
  }
};

// Spec of a BaseRing with its specialization order.  Finite for F_p and
// Z/n; symbolic for Z (points materialize against a prime sample).
class SpectrumModel {
 public:
  SpectrumModel() = default;

  const BaseRing& ring() const { return ring_; }
  bool symbolic() const { return symbolic_; }

  // All points of a finite spectrum; throws UsageError when symbolic.
  const std::vector<PrimePoint>& finite_points() const;

  // Finite point sample: for Z, (0) plus the given primes (validated,
  // sorted, deduplicated); for finite spectra, all points.
  std::vector<PrimePoint> sample(const std::vector<long long>& primes) const;

  bool contains(const PrimePoint& x) const;

  // Specialization order: x <= y iff y lies in the closure of {x}, i.e.
  // the ideal x is contained in the ideal y.
  bool leq(const PrimePoint& x, const PrimePoint& y) const;

 private:
  friend SpectrumModel spectrum_of(const BaseRing&);

  BaseRing ring_;
  bool symbolic_ = false;
  std::vector<PrimePoint> points_;
};

SpectrumModel spectrum_of(const BaseRing& ring);

// A subset of a spectrum: an explicit point set, or for Spec Z one of the
// two symbolic families FinitePrimes (a finite set of closed points) and
// All (the whole space).
struct SpecSubset {
  enum class Kind { Explicit, FinitePrimes, All };

  Kind kind = Kind::Explicit;
  std::vector<PrimePoint> points;   // Explicit
  std::vector<long long> primes;    // FinitePrimes

  static SpecSubset all() { return {Kind::All, {}, {}}; }
  static SpecSubset explicit_set(std::vector<PrimePoint> pts);
  static SpecSubset finite_primes(std::vector<long long> ps);

  bool contains(const PrimePoint& x, const SpectrumModel& model) const;
};

// Open = specialization-closed: x in S and x <= y imply y in S.  In Spec Z
// any set of closed points qualifies, and any set containing (0) must be
// the whole space.
bool is_open(const SpecSubset& s, const SpectrumModel& model);

// True iff `subset` (given as membership flags over `sample`) is the trace
// on the sample of an open set of the model, i.e. open in the subspace
// topology.
bool sample_open(const SpectrumModel& model,
                 const std::vector<PrimePoint>& sample,
                 const std::vector<bool>& subset);

// Recovers the specialization order of a finite point sample from an open
// set predicate: x <= y iff every open subset containing x contains y.
// Enumerates all 2^n subsets, so n is capped (throws ResourceError).
std::vector<std::pair<int, int>> specialization_order_from_topology(
    int n, const std::function<bool(const std::vector<bool>&)>& open_pred);

}  // namespace atomspec
