#include "atomspec/ring.hpp"

#include <algorithm>
#include <numeric>

#include "atomspec/errors.hpp"

namespace atomspec {

namespace {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<long long, int>> factorize(long long n) {
  std::vector<std::pair<long long, int>> out;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.push_back({d, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

}  // namespace

BaseRing BaseRing::prime_field(long long p) {
  if (!is_prime(p)) throw UsageError("F_p needs a prime p, got " + std::to_string(p));
  BaseRing r;
  r.kind_ = RingKind::PrimeField;
  r.modulus_ = p;
  r.factors_ = {{p, 1}};
  return r;
}

BaseRing BaseRing::integers() {
  BaseRing r;
  r.kind_ = RingKind::IntegerRing;
  return r;
}

BaseRing BaseRing::integers_mod(long long n) {
  if (n < 2) throw UsageError("Z/n needs n >= 2, got " + std::to_string(n));
  BaseRing r;
  r.kind_ = RingKind::IntegerModN;
  r.modulus_ = n;
  r.factors_ = factorize(n);
  return r;
}

long long BaseRing::canon(long long x) const {
  if (kind_ == RingKind::IntegerRing) return x;
  long long m = x % modulus_;
  return m < 0 ? m + modulus_ : m;
}

long long BaseRing::add(long long a, long long b) const { return canon(a + b); }
long long BaseRing::neg(long long a) const { return canon(-a); }
long long BaseRing::mul(long long a, long long b) const {
  return canon(canon(a) * canon(b));
}

bool BaseRing::is_unit(long long a) const {
  a = canon(a);
  if (kind_ == RingKind::IntegerRing) return a == 1 || a == -1;
  return std::gcd(a, modulus_) == 1;
}

long long BaseRing::inv(long long a) const {
  a = canon(a);
  if (!is_unit(a)) throw UsageError("not a unit in " + display() + ": " + std::to_string(a));
  if (kind_ == RingKind::IntegerRing) return a;  // +-1
  long long t = 0, new_t = 1, r = modulus_, new_r = a;
  while (new_r != 0) {
    long long q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return canon(t);
}

std::string BaseRing::display() const {
  switch (kind_) {
    case RingKind::PrimeField:
      return "F" + std::to_string(modulus_);
    case RingKind::IntegerRing:
      return "Z";
    case RingKind::IntegerModN:
      return "Z/" + std::to_string(modulus_);
  }
  return "?";
}

BaseRing parse_ring_descriptor(const std::string& text) {
  if (text == "Z") return BaseRing::integers();
  if (text.size() > 1 && text[0] == 'F') {
    long long p = 0;
    for (std::size_t i = 1; i < text.size(); ++i) {
      if (!isdigit(static_cast<unsigned char>(text[i])))
        throw UsageError("bad ring descriptor \"" + text + "\"");
      p = p * 10 + (text[i] - '0');
    }
    return BaseRing::prime_field(p);
  }
  if (text.rfind("Z/", 0) == 0 && text.size() > 2) {
    long long n = 0;
    for (std::size_t i = 2; i < text.size(); ++i) {
      if (!isdigit(static_cast<unsigned char>(text[i])))
        throw UsageError("bad ring descriptor \"" + text + "\"");
      n = n * 10 + (text[i] - '0');
    }
    return BaseRing::integers_mod(n);
  }
  throw UsageError("bad ring descriptor \"" + text + "\" (expected F<p>, Z, or Z/<n>)");
}

std::string PrimePoint::display() const {
  switch (tag) {
    case Tag::Zero:
      return "(0)";
    case Tag::Prime:
      return "(" + std::to_string(p) + ")";
    case Tag::Unique:
      return "(0)";
  }
  return "?";
}

std::string PrimePoint::id_fragment() const {
  switch (tag) {
    case Tag::Zero:
      return "0";
    case Tag::Prime:
      return std::to_string(p);
    case Tag::Unique:
      return "u";
  }
  return "?";
}

std::string PrimePoint::json() const {
  switch (tag) {
    case Tag::Zero:
      return "{\"tag\":\"zero\"}";
    case Tag::Prime:
      return "{\"tag\":\"prime\",\"p\":" + std::to_string(p) + "}";
    case Tag::Unique:
      return "{\"tag\":\"unique\"}";
  }
  return "{}";
}

const std::vector<PrimePoint>& SpectrumModel::finite_points() const {
  if (symbolic_) throw UsageError("Spec Z is symbolic; materialize it with a prime sample");
  return points_;
}

std::vector<PrimePoint> SpectrumModel::sample(
    const std::vector<long long>& primes) const {
  if (!symbolic_) return points_;
  std::vector<long long> ps = primes;
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  std::vector<PrimePoint> out{PrimePoint::zero()};
  for (long long p : ps) {
    PrimePoint pt = PrimePoint::prime(p);
    if (!contains(pt)) throw UsageError("not a point of Spec Z: " + pt.display());
    out.push_back(pt);
  }
  return out;
}

bool SpectrumModel::contains(const PrimePoint& x) const {
  switch (ring_.kind()) {
    case RingKind::PrimeField:
      return x.tag == PrimePoint::Tag::Unique;
    case RingKind::IntegerRing:
      if (x.tag == PrimePoint::Tag::Zero) return true;
      if (x.tag != PrimePoint::Tag::Prime) return false;
      if (x.p < 2) return false;
      for (long long d = 2; d * d <= x.p; ++d)
        if (x.p % d == 0) return false;
      return true;
    case RingKind::IntegerModN:
      if (x.tag != PrimePoint::Tag::Prime) return false;
      for (const auto& [p, e] : ring_.factorization())
        if (p == x.p) return true;
      return false;
  }
  return false;
}

bool SpectrumModel::leq(const PrimePoint& x, const PrimePoint& y) const {
  if (!contains(x)) throw UsageError("not a point of Spec " + ring_.display() + ": " + x.display());
  if (!contains(y)) throw UsageError("not a point of Spec " + ring_.display() + ": " + y.display());
  if (x.tag == PrimePoint::Tag::Zero) return true;  // (0) sits below everything
  return x == y;
}

SpectrumModel spectrum_of(const BaseRing& ring) {
  SpectrumModel m;
  m.ring_ = ring;
  switch (ring.kind()) {
    case RingKind::PrimeField:
      m.points_ = {PrimePoint::unique()};
      break;
    case RingKind::IntegerRing:
      m.symbolic_ = true;
      break;
    case RingKind::IntegerModN:
      for (const auto& [p, e] : ring.factorization())
        m.points_.push_back(PrimePoint::prime(p));
      std::sort(m.points_.begin(), m.points_.end());
      break;
  }
  return m;
}

SpecSubset SpecSubset::explicit_set(std::vector<PrimePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return {Kind::Explicit, std::move(pts), {}};
}

SpecSubset SpecSubset::finite_primes(std::vector<long long> ps) {
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return {Kind::FinitePrimes, {}, std::move(ps)};
}

bool SpecSubset::contains(const PrimePoint& x, const SpectrumModel& model) const {
  if (!model.contains(x))
    throw UsageError("subset query outside the model: " + x.display());
  switch (kind) {
    case Kind::All:
      return true;
    case Kind::FinitePrimes:
      return x.tag == PrimePoint::Tag::Prime &&
             std::binary_search(primes.begin(), primes.end(), x.p);
    case Kind::Explicit:
      return std::binary_search(points.begin(), points.end(), x);
  }
  return false;
}

bool is_open(const SpecSubset& s, const SpectrumModel& model) {
  switch (s.kind) {
    case SpecSubset::Kind::All:
      return true;
    case SpecSubset::Kind::FinitePrimes: {
      for (long long p : s.primes)
        if (!model.contains(PrimePoint::prime(p)))
          throw UsageError("subset point outside the model: (" + std::to_string(p) + ")");
      return true;  // closed points only; vacuously specialization-closed
    }
    case SpecSubset::Kind::Explicit: {
      for (const auto& x : s.points)
        if (!model.contains(x))
          throw UsageError("subset point outside the model: " + x.display());
      if (model.symbolic()) {
        // A finite explicit set containing (0) misses infinitely many
        // closed points of Spec Z, so it cannot be specialization-closed.
        for (const auto& x : s.points)
          if (x.tag == PrimePoint::Tag::Zero) return false;
        return true;
      }
      const auto& all = model.finite_points();
      for (const auto& x : s.points)
        for (const auto& y : all)
          if (model.leq(x, y) && !s.contains(y, model)) return false;
      return true;
    }
  }
  return false;
}

bool sample_open(const SpectrumModel& model,
                 const std::vector<PrimePoint>& sample,
                 const std::vector<bool>& subset) {
  if (subset.size() != sample.size())
    throw UsageError("subset flags do not match the sample");
  // Trace of an open set iff closed upward within the sample.
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (!subset[i]) continue;
    for (std::size_t j = 0; j < sample.size(); ++j) {
      if (!subset[j] && model.leq(sample[i], sample[j])) return false;
    }
  }
  return true;
}

std::vector<std::pair<int, int>> specialization_order_from_topology(
    int n, const std::function<bool(const std::vector<bool>&)>& open_pred) {
  if (n < 0) throw UsageError("sample size must be >= 0");
  if (n > 16)
    throw ResourceError("specialization order reconstruction", 1ll << n, 1ll << 16);
  std::vector<std::vector<bool>> opens;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    std::vector<bool> subset(n);
    for (int i = 0; i < n; ++i) subset[i] = (mask >> i) & 1;
    if (open_pred(subset)) opens.push_back(std::move(subset));
  }
  std::vector<std::pair<int, int>> order;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      bool le = true;
      for (const auto& o : opens)
        if (o[i] && !o[j]) {
          le = false;
          break;
        }
      if (le) order.push_back({i, j});
    }
  }
  return order;
}

}  // namespace atomspec
