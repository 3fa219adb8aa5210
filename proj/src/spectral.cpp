#include "cokernel/spectral.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

#include "cokernel/modarith.hpp"

namespace cokernel {

FiniteMeasure point_mass(long long M, long long at) {
  FiniteMeasure mu{M, Vector<double>::Zero(M)};
  mu.masses(((at % M) + M) % M) = 1.0;
  return mu;
}

FiniteMeasure uniform_measure(long long M) {
  return {M, Vector<double>::Constant(M, 1.0 / double(M))};
}

FiniteMeasure reduce_mod(const EntryDistribution& xi, long long M) {
  FiniteMeasure mu{M, Vector<double>::Zero(M)};
  for (size_t i = 0; i < xi.support.size(); ++i)
    mu.masses(((xi.support[i] % M) + M) % M) += xi.prob(i);
  return mu;
}

Vector<std::complex<double>> fourier(const FiniteMeasure& mu) {
  const long long M = mu.M;
  Vector<std::complex<double>> hat(M);
  for (long long t = 0; t < M; ++t) {
    std::complex<double> acc = 0;
    for (long long s = 0; s < M; ++s) {
      double ang = 2.0 * std::numbers::pi * double((s * t) % M) / double(M);
      acc += mu.masses(s) * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    hat(t) = acc;
  }
  hat(0) = 1.0;  // exact by normalization
  return hat;
}

double psi(const FiniteMeasure& mu, long long t) {
  auto hat = fourier(mu);
  double a = std::abs(hat(((t % mu.M) + mu.M) % mu.M));
  return 1.0 - a * a;
}

FiniteMeasure swap_distribution(const FiniteMeasure& mu, double gamma) {
  const long long M = mu.M;
  FiniteMeasure nu{M, Vector<double>::Zero(M)};
  // (mu * mu^-)(t) = sum_s mu(s) mu(s - t)
  for (long long t = 1; t < M; ++t) {
    double conv = 0;
    for (long long s = 0; s < M; ++s) conv += mu.masses(s) * mu.masses(((s - t) % M + M) % M);
    nu.masses(t) = gamma * conv;
  }
  nu.masses(0) = 1.0 - nu.masses.sum();
  return nu;
}

double measure_min_entropy(const FiniteMeasure& mu) {
  if (mu.M < 2) throw BadParams("measure_min_entropy: need M >= 2");
  double sup = 0;
  for (auto [p, e] : factorize(mu.M)) {
    Vector<double> mass = Vector<double>::Zero(p);
    for (long long s = 0; s < mu.M; ++s) mass(s % p) += mu.masses(s);
    sup = std::max(sup, mass.maxCoeff());
  }
  double alpha = 1.0 - sup;
  if (alpha <= 1e-12)
    throw DegenerateDistribution("measure_min_entropy: mass concentrated mod some prime");
  return alpha;
}

SpectrumSet spec_set(const FiniteMeasure& mu, double epsilon) {
  assert(epsilon > 0 && epsilon < 1);
  SpectrumSet s{mu.M, epsilon, {}};
  auto hat = fourier(mu);
  for (long long t = 0; t < mu.M; ++t)
    if (std::abs(hat(t)) >= 1.0 - epsilon) s.members.push_back(t);
  return s;
}

std::vector<long long> sumset(const std::vector<long long>& A,
                              const std::vector<long long>& B, long long M) {
  std::vector<char> hit(M, 0);
  for (long long a : A)
    for (long long b : B) hit[(a + b) % M] = 1;
  std::vector<long long> out;
  for (long long t = 0; t < M; ++t)
    if (hit[t]) out.push_back(t);
  return out;
}

std::vector<long long> sym_group(const std::vector<long long>& A, long long M) {
  std::vector<char> in(M, 0);
  for (long long a : A) in[a] = 1;
  std::vector<long long> out;
  for (long long h = 0; h < M; ++h) {
    bool ok = true;
    for (long long a : A)
      if (!in[(a + h) % M]) {
        ok = false;
        break;
      }
    if (ok) out.push_back(h);
  }
  return out;
}

bool spec_sum_inclusion_check(const FiniteMeasure& mu, double epsilon, int k) {
  assert(k >= 1);
  SpectrumSet base = spec_set(mu, epsilon);
  std::vector<long long> acc = base.members;
  for (int i = 1; i < k; ++i) acc = sumset(acc, base.members, mu.M);
  double thresh = 1.0 - double(k) * k * epsilon;
  if (thresh <= 0) return true;  // Spec_{1-k^2 eps} is everything
  auto hat = fourier(mu);
  for (long long t : acc)
    if (std::abs(hat(t)) < thresh) return false;
  return true;
}

LittlewoodOffordResult littlewood_offord_gap(const EntryDistribution& xi,
                                             const std::vector<long long>& w,
                                             long long q, long long r, double C) {
  LittlewoodOffordResult res{};
  // residue distribution of the running sum; each non-zero w_i convolves in
  // the law of xi * w_i mod q
  Vector<double> acc = Vector<double>::Zero(q);
  acc(0) = 1.0;
  int m = 0;
  for (long long wi : w) {
    long long c = ((wi % q) + q) % q;
    if (c == 0) continue;
    ++m;
    Vector<double> step = Vector<double>::Zero(q);
    for (size_t i = 0; i < xi.support.size(); ++i)
      step((((xi.support[i] * c) % q) + q) % q) += xi.prob(i);
    Vector<double> next = Vector<double>::Zero(q);
    for (long long s = 0; s < q; ++s) {
      if (acc(s) == 0) continue;
      for (long long t = 0; t < q; ++t) next((s + t) % q) += acc(s) * step(t);
    }
    acc = next;
  }
  if (m == 0) throw BadParams("littlewood_offord_gap: w has no non-zero coordinates");
  if (m > 10000) throw TooLarge("littlewood_offord_gap: guard is m <= 10^4");
  double alpha = min_entropy(xi, {q});
  res.exact = acc(((r % q) + q) % q);
  res.gap = std::abs(res.exact - 1.0 / double(q));
  res.bound = C / std::sqrt(alpha * double(m));
  res.m = m;
  return res;
}

double odlyzko_bound(double alpha, int codim) {
  assert(alpha > 0 && alpha < 1 && codim >= 0);
  return std::pow(1.0 - alpha, codim);
}

SubspaceCheckResult empirical_subspace_check(const EntryDistribution& xi,
                                             const IntMatrix& V_basis, long long q,
                                             long long trials, std::uint64_t seed) {
  const int n = static_cast<int>(V_basis.rows());
  const int rank = rank_mod_p(V_basis, q);
  SubspaceCheckResult res{};
  res.bound = odlyzko_bound(min_entropy(xi, {q}), n - rank);
  long long hits = 0;
  IntMatrix aug(n, V_basis.cols() + 1);
  aug.leftCols(V_basis.cols()) = V_basis;
  for (long long t = 0; t < trials; ++t) {
    for (int i = 0; i < n; ++i)
      aug(i, V_basis.cols()) = sample_entry(xi, seed, t, static_cast<std::uint32_t>(i));
    if (rank_mod_p(aug, q) == rank) ++hits;
  }
  res.frequency = double(hits) / double(trials);
  res.sigma = std::sqrt(res.bound * (1.0 - res.bound) / double(trials));
  res.within = res.frequency <= res.bound + 4.0 * res.sigma;
  return res;
}

double sparse_bound(int n, int l, double alpha, double delta, long long q, double C) {
  assert(delta > 0 && delta < 1 && C > 0);
  const int kmax = static_cast<int>(delta * n);
  long double total = 0;
  for (int k = 1; k <= kmax; ++k) {
    long double t = 1;
    for (int i = 1; i <= k; ++i) t *= static_cast<long double>(n - k + i) / i;
    for (int i = 1; i <= k - 1; ++i) t *= static_cast<long double>(n - l - (k - 1) + i) / i;
    long double base =
        std::min<long double>(1.0 - alpha, 1.0 / double(q) + C / std::sqrt(alpha * k));
    t *= std::pow(base, static_cast<long double>(n - l - k + 1));
    total += t;
  }
  return static_cast<double>(total);
}

CombinatorialCodim combinatorial_codimension(double prob, double alpha, int n) {
  assert(prob > 0 && prob <= 1 && alpha > 0 && alpha < 1 && n >= 1);
  if (prob >= 1.0) return {0, n};
  double x = double(n) * std::log(prob) / std::log1p(-alpha);
  // land exactly on grid values despite rounding
  double r = std::round(x);
  if (std::abs(x - r) < 1e-9) x = r;
  long long m = static_cast<long long>(std::floor(x));
  return {m, n};
}

}  // namespace cokernel
