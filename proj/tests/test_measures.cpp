#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "cokernel/measures.hpp"
#include "cokernel/modarith.hpp"

using namespace cokernel;

namespace {

Partition P(std::vector<int> parts) { return Partition(std::move(parts)); }

// Brute-force |Aut| for G = + Z/p^{lam_i}: enumerate endomorphism matrices
// (entry (i,j) ranges over Hom(Z/p^{lam_j}, Z/p^{lam_i}) = Z/p^{min}) and
// count the bijective ones by checking kernel triviality on all of G.
long long aut_order_bruteforce(long long p, const Partition& lam) {
  const int t = lam.rows();
  if (t == 0) return 1;
  std::vector<long long> ord(t);  // p^{lam_i}
  for (int i = 0; i < t; ++i) ord[i] = int_pow(p, lam.parts[i]).convert_to<long long>();
  // endomorphism entry moduli
  std::vector<std::vector<long long>> emod(t, std::vector<long long>(t));
  long long total = 1;
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) {
      emod[i][j] = int_pow(p, std::min(lam.parts[i], lam.parts[j])).convert_to<long long>();
      total *= emod[i][j];
    }
  // elements of G
  std::vector<std::vector<long long>> elems;
  std::vector<long long> cur(t, 0);
  while (true) {
    elems.push_back(cur);
    int k = t - 1;
    while (k >= 0 && ++cur[k] == ord[k]) cur[k--] = 0;
    if (k < 0) break;
  }
  long long autos = 0;
  std::vector<long long> mat(t * t, 0);
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j) {
        mat[i * t + j] = c % emod[i][j];
        c /= emod[i][j];
      }
    // entry (i,j) encodes the hom x -> x * m * p^{max(0, lam_i - lam_j)}
    bool injective = true;
    for (const auto& g : elems) {
      bool zero = true;
      for (int i = 0; i < t && zero; ++i) {
        long long acc = 0;
        for (int j = 0; j < t; ++j) {
          long long lift = mat[i * t + j];
          if (lam.parts[i] > lam.parts[j])
            lift *= int_pow(p, lam.parts[i] - lam.parts[j]).convert_to<long long>();
          acc = (acc + lift % ord[i] * (g[j] % ord[i])) % ord[i];
        }
        zero = acc == 0;
      }
      if (zero && std::any_of(g.begin(), g.end(), [](long long x) { return x != 0; })) {
        injective = false;
        break;
      }
    }
    if (injective) ++autos;
  }
  return autos;
}

}  // namespace

TEST_CASE("aut_order examples") {
  CHECK(aut_order(2, P({})) == 1);
  CHECK(aut_order(2, P({1})) == 1);
  CHECK(aut_order(2, P({1, 1})) == 6);
  CHECK(aut_order(3, P({2})) == 6);
  CHECK(aut_order(2, P({2, 1})) == 8);  // |Aut(Z/4 + Z/2)|
}

TEST_CASE("aut_order matches brute force enumeration") {
  // all lam with p^{|lam|} <= 512, capped to <= 2^20 endomorphism matrices
  for (long long p : {2LL, 3LL}) {
    for (const auto& lam : partitions_up_to(9)) {
      double bits = double(lam.boxes()) * std::log2(double(p));
      if (bits > 9.001) continue;
      double endo_bits = 0;
      for (int i = 0; i < lam.rows(); ++i)
        for (int j = 0; j < lam.rows(); ++j)
          endo_bits += std::min(lam.parts[i], lam.parts[j]) * std::log2(double(p));
      if (endo_bits > 20) continue;
      CHECK(aut_order(p, lam) == Int(aut_order_bruteforce(p, lam)));
    }
  }
}

TEST_CASE("euler product and cl_measure frozen values") {
  CHECK(euler_product_inf(2, 1e-12).value == doctest::Approx(0.288788095087).epsilon(1e-10));
  CHECK(cl_measure(2, P({}), 1e-12) == doctest::Approx(0.288788095087).epsilon(1e-10));
  CHECK(cl_measure(2, P({1}), 1e-12) == doctest::Approx(0.288788095087).epsilon(1e-10));
  CHECK(cl_measure(2, P({1, 1}), 1e-12) == doctest::Approx(0.048131349181).epsilon(1e-10));
  // monotone in the number of terms
  double prev = 1.0;
  for (int T = 1; T <= 20; ++T) {
    double v = euler_product(2, T).value;
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("fw_probability examples") {
  CHECK(fw_probability(2, 2, P({})) == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(fw_probability_exact(2, 2, P({})) == Rat(3, 8));
  CHECK(fw_probability(2, 1, P({1})) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(fw_probability(2, 10, P({})) == doctest::Approx(0.289070).epsilon(1e-5));
  CHECK(fw_probability(2, 1, P({1, 1})) == 0.0);  // more parts than n
}

TEST_CASE("fw exhaustive oracle: 2x2 matrices mod 2") {
  // P(trivial cokernel) = P(invertible mod 2) = 6/16 over all binary matrices
  int invertible = 0;
  for (int mask = 0; mask < 16; ++mask) {
    IntMatrix A(2, 2);
    for (int k = 0; k < 4; ++k) A(k / 2, k % 2) = (mask >> k) & 1;
    if (rank_mod_p(A, 2) == 2) ++invertible;
  }
  CHECK(invertible == 6);
  CHECK(fw_probability_exact(2, 2, P({})) == Rat(invertible, 16));
}

TEST_CASE("fw converges to cl at rate 2 p^{-n+r}") {
  for (const auto& lam : {P({}), P({1}), P({2, 1})}) {
    for (int n : {10, 20, 30}) {
      double diff = std::abs(fw_probability(2, n, lam) - cl_measure(2, lam, 1e-15));
      CHECK(diff <= 2.0 * std::pow(2.0, -n + lam.rows()));
    }
  }
}

TEST_CASE("fw partial sums are monotone and bounded by 1") {
  double prev = 0;
  for (int B = 0; B <= 8; ++B) {
    double sum = 0;
    for (const auto& lam : partitions_up_to(B)) sum += fw_probability(2, 8, lam);
    CHECK(sum >= prev);
    CHECK(sum <= 1.0 + 1e-12);
    prev = sum;
  }
  CHECK(prev == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("corank distribution values and normalization") {
  CHECK(corank_distribution(2, 0, 1e-9) == doctest::Approx(0.288788095).epsilon(1e-8));
  CHECK(corank_distribution(2, 1, 1e-9) == doctest::Approx(0.577576190).epsilon(1e-8));
  CHECK(corank_distribution(2, 2, 1e-9) == doctest::Approx(0.128350265).epsilon(1e-8));
  double sum = 0;
  for (int k = 0; k <= 25; ++k) sum += corank_distribution(2, k, 1e-12);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("uniform_reference examples") {
  CHECK(uniform_reference(2, ModuleClass{}, 2, 1e-9) == doctest::Approx(0.375).epsilon(1e-9));
  ModuleClass z2;
  z2.components[2] = P({1});
  CHECK(uniform_reference(4, z2, 1, 1e-9) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(uniform_reference(6, ModuleClass{}, 1, 1e-9) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  ModuleClass bad;
  bad.components[2] = P({3});
  CHECK_THROWS_AS(uniform_reference(4, bad, 2, 1e-9), InvalidClass);
  ModuleClass off_prime;
  off_prime.components[5] = P({1});
  CHECK_THROWS_AS(uniform_reference(4, off_prime, 2, 1e-9), InvalidClass);
}

TEST_CASE("uniform_reference against exhaustive scalars mod 4 and mod 6") {
  // scalar a mod 4: coker is Z/4 for a=0, Z/2 for a=2, trivial for units
  ModuleClass triv, z2, z4;
  z2.components[2] = P({1});
  z4.components[2] = P({2});
  CHECK(uniform_reference(4, triv, 1, 1e-10) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(uniform_reference(4, z2, 1, 1e-10) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(uniform_reference(4, z4, 1, 1e-10) == doctest::Approx(0.25).epsilon(1e-9));
  // CRT product structure (Prop 3.4): over Z/6 the class splits by prime
  ModuleClass z6;
  z6.components[2] = P({1});
  z6.components[3] = P({1});
  double lhs = uniform_reference(6, z6, 3, 1e-10);
  ModuleClass only2, only3;
  only2.components[2] = P({1});
  only3.components[3] = P({1});
  double rhs = uniform_reference(2, only2, 3, 1e-10) * uniform_reference(3, only3, 3, 1e-10);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("uniform_reference capped sums against exhaustive 2x2 matrices mod 4") {
  // all 4^4 = 256 matrices over Z/4, classes via cokernel_class
  std::map<std::string, int> counts;
  RingSpec ring = RingSpec::mod_n(4);
  for (int code = 0; code < 256; ++code) {
    IntMatrix A(2, 2);
    int c = code;
    for (int k = 0; k < 4; ++k) {
      A(k / 2, k % 2) = c % 4;
      c /= 4;
    }
    counts[to_string(cokernel_class(A, ring).cls)]++;
  }
  for (const auto& [name, count] : counts) {
    double expect = uniform_reference(4, parse_module_class(name), 2, 1e-10);
    CHECK(double(count) / 256.0 == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("reference distributions sum to one") {
  auto ref = reference_padic(2, 12, 8);
  double sum = ref.tail_mass;
  std::set<std::string> seen;
  for (const auto& [cls, p] : ref.entries) {
    sum += p;
    CHECK(seen.insert(to_string(cls)).second);  // no duplicate classes
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ref.tail_mass < 2e-4);

  auto refN = reference_mod_n(4, 10, 8);
  double sumN = refN.tail_mass;
  for (const auto& [cls, p] : refN.entries) sumN += p;
  CHECK(sumN == doctest::Approx(1.0).epsilon(1e-9));
}
