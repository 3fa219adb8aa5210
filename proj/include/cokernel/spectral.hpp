#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "cokernel/sampler.hpp"
#include "cokernel/types.hpp"

namespace cokernel {

// Probability measure on Z/MZ.
struct FiniteMeasure {
  long long M = 1;
  Vector<double> masses;  // length M, non-negative, sums to 1
};

FiniteMeasure point_mass(long long M, long long at);
FiniteMeasure uniform_measure(long long M);
// Push an entry distribution onto Z/MZ by reduction.
FiniteMeasure reduce_mod(const EntryDistribution& xi, long long M);

// mu_hat(t) = sum_s mu(s) e(st/M); mu_hat(0) = 1.
Vector<std::complex<double>> fourier(const FiniteMeasure& mu);

// psi(t) = 1 - |mu_hat(t)|^2.
double psi(const FiniteMeasure& mu, long long t);

// Swapping distribution: nu(t) = gamma (mu * mu^-)(t) off zero, remainder at
// zero; satisfies nu_hat = 1 - gamma + gamma |mu_hat|^2 pointwise.
FiniteMeasure swap_distribution(const FiniteMeasure& mu, double gamma = 0.125);

// Min-entropy of a measure over the primes dividing M.
double measure_min_entropy(const FiniteMeasure& mu);

struct SpectrumSet {
  long long M = 1;
  double epsilon = 0.0;
  std::vector<long long> members;  // {t : |mu_hat(t)| >= 1 - eps}, sorted
};

SpectrumSet spec_set(const FiniteMeasure& mu, double epsilon);

std::vector<long long> sumset(const std::vector<long long>& A,
                              const std::vector<long long>& B, long long M);
// Sym(A) = {h : A + h = A}, the largest subgroup A is a union of cosets of.
std::vector<long long> sym_group(const std::vector<long long>& A, long long M);

// k-fold sumset of Spec_{1-eps} mu lies inside Spec_{1-k^2 eps} mu.
bool spec_sum_inclusion_check(const FiniteMeasure& mu, double epsilon, int k);

struct LittlewoodOffordResult {
  double exact;  // P(X . w = r) by convolution over F_q
  double gap;    // |exact - 1/q|
  double bound;  // C / sqrt(alpha m)
  int m;         // number of non-zero coordinates of w
};

LittlewoodOffordResult littlewood_offord_gap(const EntryDistribution& xi,
                                             const std::vector<long long>& w,
                                             long long q, long long r, double C = 1.0);

double odlyzko_bound(double alpha, int codim);

struct SubspaceCheckResult {
  double frequency;
  double bound;
  double sigma;  // binomial standard error at the bound
  bool within;   // frequency <= bound + 4 sigma
};

// Samples X with iid entries xi mod q and measures how often X lands in the
// column span of V_basis over F_q.
SubspaceCheckResult empirical_subspace_check(const EntryDistribution& xi,
                                             const IntMatrix& V_basis, long long q,
                                             long long trials, std::uint64_t seed);

// sum_{k=1}^{floor(delta n)} C(n,k) C(n-l,k-1)
//   min(1-alpha, 1/q + C/sqrt(alpha k))^{n-l-k+1}
double sparse_bound(int n, int l, double alpha, double delta, long long q, double C);

struct CombinatorialCodim {
  long long num = 0;  // d as a fraction num/den with den = n
  long long den = 1;
  double value() const { return double(num) / double(den); }
};

// The grid point d in n^{-1} Z with (1-alpha)^{d + 1/n} <= prob <= (1-alpha)^d;
// on a tie the variant with the upper bound tight.
CombinatorialCodim combinatorial_codimension(double prob, double alpha, int n);

}  // namespace cokernel
