#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace cokernel {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Dense containers, templated on scalar. Exact integer work uses Int,
// hot modular loops use std::uint64_t, analytic work uses double/complex.
template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Int>;
using IntVector = Vector<Int>;

// Sentinel for "exponent infinity" (coordinate outside the rational span).
inline constexpr int kInfExp = std::numeric_limits<int>::max();

struct DegenerateDistribution : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BadParams : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PrecisionCeiling : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PrecisionTooLow : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ChainNotNested : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ColumnJump : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidClass : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RingMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyBatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::vector<std::pair<long long, int>> factorize(long long n) {
  if (n <= 1) throw std::invalid_argument("factorize: need n >= 2");
  std::vector<std::pair<long long, int>> out;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// The base ring: Z_p (a single prime, exponent ignored) or Z/NZ with the
// factorization of N.
struct RingSpec {
  bool padic = true;
  std::vector<std::pair<long long, int>> factors;  // (p, e)

  static RingSpec padic_ring(long long p) { return {true, {{p, 0}}}; }
  static RingSpec mod_n(long long N) { return {false, factorize(N)}; }

  long long modulus() const;  // N; meaningless for the p-adic ring
  bool operator==(const RingSpec& o) const {
    return padic == o.padic && factors == o.factors;
  }
  bool operator!=(const RingSpec& o) const { return !(*this == o); }
};

inline long long RingSpec::modulus() const {
  long long m = 1;
  for (auto [p, e] : factors)
    for (int i = 0; i < e; ++i) m *= p;
  return m;
}

// p-adic valuation, capped at `cap` (v(0) = cap).
inline int valuation_capped(const Int& x, long long p, int cap) {
  if (x == 0) return cap;
  Int y = abs(x);
  int v = 0;
  while (v < cap && y % p == 0) {
    y /= p;
    ++v;
  }
  return v;
}

inline Int int_pow(long long base, int exp) {
  Int r = 1, b = base;
  while (exp > 0) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

// Canonical representative in [0, m).
inline Int mod_canonical(const Int& x, const Int& m) {
  Int r = x % m;
  if (r < 0) r += m;
  return r;
}

// Inverse of a unit mod m (extended Euclid); throws if not a unit.
inline Int inv_mod(const Int& a, const Int& m) {
  Int r0 = m, r1 = mod_canonical(a, m);
  Int s0 = 0, s1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    Int s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) throw std::invalid_argument("inv_mod: not a unit");
  return mod_canonical(s0, m);
}

}  // namespace cokernel
