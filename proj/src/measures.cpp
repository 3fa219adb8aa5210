#include "cokernel/measures.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>

namespace cokernel {

EulerProduct euler_product(long long p, long long terms) {
  EulerProduct ep{p, terms, 1.0};
  for (long long k = 1; k <= terms; ++k) ep.value *= 1.0 - std::pow(double(p), double(-k));
  return ep;
}

EulerProduct euler_product_inf(long long p, double tol) {
  // tail bound: |log prod_{k>T}| <= sum_{k>T} p^-k / (1 - ...) ~ p^-T/(p-1)
  long long T = 1;
  while (std::pow(double(p), double(-T)) / double(p - 1) >= tol) ++T;
  EulerProduct ep = euler_product(p, T);
  ep.terms = -1;
  return ep;
}

Int aut_order(long long p, const Partition& lam) {
  if (lam.rows() == 0) return 1;
  Partition conj = conjugate(lam);
  long long s = 0;
  for (int c : conj.parts) s += 1LL * c * c;
  // multiplicity of each part value
  std::map<int, int> mult;
  for (int part : lam.parts) mult[part]++;
  // |Aut| = p^S prod_j prod_{i=1}^{m_j} (1 - p^{-i})
  //       = p^(S - sum_j m_j(m_j+1)/2) prod_j prod_{i=1}^{m_j} (p^i - 1)
  long long shift = 0;
  Int prod = 1;
  for (auto [part, m] : mult) {
    shift += 1LL * m * (m + 1) / 2;
    for (int i = 1; i <= m; ++i) prod *= int_pow(p, i) - 1;
  }
  assert(s >= shift);
  return int_pow(p, static_cast<int>(s - shift)) * prod;
}

double cl_measure(long long p, const Partition& lam, double tol) {
  double inv_aut = 1.0 / aut_order(p, lam).convert_to<double>();
  return inv_aut * euler_product_inf(p, tol).value;
}

double fw_probability(long long p, int n, const Partition& lam) {
  int r = lam.rows();
  if (r > n) return 0.0;
  double v = 1.0 / aut_order(p, lam).convert_to<double>();
  for (int k = 1; k <= n; ++k) v *= 1.0 - std::pow(double(p), double(-k));
  for (int j = n - r + 1; j <= n; ++j) v *= 1.0 - std::pow(double(p), double(-j));
  return v;
}

Rat fw_probability_exact(long long p, int n, const Partition& lam) {
  int r = lam.rows();
  if (r > n) return Rat(0);
  Rat v = Rat(1) / Rat(aut_order(p, lam));
  for (int k = 1; k <= n; ++k) v *= Rat(int_pow(p, k) - 1, int_pow(p, k));
  for (int j = n - r + 1; j <= n; ++j) v *= Rat(int_pow(p, j) - 1, int_pow(p, j));
  return v;
}

double corank_distribution(long long p, int k, double tol) {
  double v = std::pow(double(p), -double(k) * k);
  // prod_{l=k+1}^inf (1-p^-l) = euler_inf / prod_{l<=k}, and the denominator
  // appears again, so v *= euler_inf / prod_{l<=k}^2
  double head = 1.0;
  for (int l = 1; l <= k; ++l) head *= 1.0 - std::pow(double(p), double(-l));
  return v * euler_product_inf(p, tol).value / (head * head);
}

namespace {

// partitions of s into at most m parts, each a weakly decreasing vector
void partitions_into(int s, int m, int max_part, std::vector<int>& cur,
                     std::vector<std::vector<int>>& out) {
  if (s == 0) {
    out.push_back(cur);
    return;
  }
  if (static_cast<int>(cur.size()) == m) return;
  for (int x = std::min(max_part, s); x >= 1; --x) {
    cur.push_back(x);
    partitions_into(s - x, m, x, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> partitions_of_into(int s, int m) {
  std::vector<std::vector<int>> out;
  if (s == 0) {
    out.push_back({});
    return out;
  }
  if (m <= 0) return out;
  std::vector<int> cur;
  partitions_into(s, m, s, cur, out);
  return out;
}

double binom_d(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= double(n - k + i) / double(i);
  return r;
}

// sum over Z_p-classes lam with cap(lam, e) = mu of fw_probability(p, n, lam),
// absolute tail error < tol
double capped_fw_sum(long long p, int e, const Partition& mu, int n, double tol) {
  for (int part : mu.parts)
    if (part > e)
      throw InvalidClass("uniform_reference: class part " + std::to_string(part) +
                         " exceeds exponent " + std::to_string(e));
  const int t = mu.rows();
  if (t > n) return 0.0;

  int m = 0;  // parts pinned at e can be lifted arbitrarily above e
  std::vector<int> fixed;
  for (int part : mu.parts) {
    if (part == e)
      ++m;
    else
      fixed.push_back(part);
  }
  // common FW factors are shared by every lift (same part count)
  double common = 1.0;
  for (int k = 1; k <= n; ++k) common *= 1.0 - std::pow(double(p), double(-k));
  for (int j = n - t + 1; j <= n; ++j) common *= 1.0 - std::pow(double(p), double(-j));

  if (m == 0) return common / aut_order(p, mu).convert_to<double>();

  // tail bound pieces: 1/|Aut lam| <= p^{-K0 - s} / c_p for a lift adding s
  // boxes (each box grows sum of squared column lengths by >= 1), and there
  // are at most binom(s+m-1, m-1) lifts at level s
  Partition conj_mu = conjugate(mu);
  double K0 = 0;
  for (int c : conj_mu.parts) K0 += 1.0 * c * c;
  const double c_p = euler_product_inf(p, 1e-15).value;
  const double pref = common * std::pow(double(p), -K0) / c_p;

  double total = 0.0;
  for (int s = 0;; ++s) {
    for (const auto& delta : partitions_of_into(s, m)) {
      std::vector<int> parts = fixed;
      for (int i = 0; i < m; ++i)
        parts.push_back(e + (i < static_cast<int>(delta.size()) ? delta[i] : 0));
      std::sort(parts.begin(), parts.end(), std::greater<int>());
      total += common / aut_order(p, Partition(parts)).convert_to<double>();
    }
    // geometric remainder of the bounding series, valid once it decays
    double rho = double(s + 1 + m) / double(s + 2) / double(p);
    if (rho < 1.0) {
      double next = binom_d(s + m, m - 1) * std::pow(double(p), double(-(s + 1)));
      if (pref * next / (1.0 - rho) < tol) break;
    }
    if (s > 100000) throw std::runtime_error("capped_fw_sum: tail failed to converge");
  }
  return total;
}

}  // namespace

double uniform_reference(long long N, const ModuleClass& G, int n, double tol) {
  auto factors = factorize(N);
  for (const auto& [q, lam] : G.components) {
    bool found = false;
    for (auto [p, e] : factors) found = found || p == q;
    if (!found)
      throw InvalidClass("uniform_reference: class has a component at prime " +
                         std::to_string(q) + " not dividing N");
  }
  double result = 1.0;
  double per_prime_tol = tol / double(factors.size());
  for (auto [p, e] : factors)
    result *= capped_fw_sum(p, e, G.at(p), n, per_prime_tol);
  return result;
}

std::vector<Partition> partitions_up_to(int max_boxes) {
  std::vector<Partition> out;
  for (int s = 0; s <= max_boxes; ++s)
    for (const auto& parts : partitions_of_into(s, s))
      out.push_back(Partition(parts));
  return out;
}

ReferenceDistribution reference_padic(long long p, int n, int max_weight, double tol) {
  ReferenceDistribution ref;
  ref.ring = RingSpec::padic_ring(p);
  ref.n = n;
  double sum = 0.0;
  for (const auto& lam : partitions_up_to(max_weight)) {
    double prob = n == 0 ? cl_measure(p, lam, tol) : fw_probability(p, n, lam);
    ModuleClass cls;
    if (lam.rows() > 0) cls.components[p] = lam;
    ref.entries.emplace_back(std::move(cls), prob);
    sum += prob;
  }
  ref.tail_mass = std::max(0.0, 1.0 - sum);
  return ref;
}

ReferenceDistribution reference_mod_n(long long N, int n, int max_weight, double tol) {
  ReferenceDistribution ref;
  ref.ring = RingSpec::mod_n(N);
  ref.n = n;
  // per-prime class lists: capped partitions with |mu| <= max_weight
  std::vector<std::vector<Partition>> lists;
  for (auto [p, e] : ref.ring.factors) {
    std::vector<Partition> caps;
    for (const auto& lam : partitions_up_to(max_weight)) {
      bool ok = true;
      for (int part : lam.parts) ok = ok && part <= e;
      if (ok) caps.push_back(lam);
    }
    lists.push_back(std::move(caps));
  }
  // cross product, lexicographic over the per-prime lists
  std::vector<size_t> idx(lists.size(), 0);
  double sum = 0.0;
  while (true) {
    ModuleClass cls;
    for (size_t i = 0; i < lists.size(); ++i) {
      const Partition& mu = lists[i][idx[i]];
      if (mu.rows() > 0) cls.components[ref.ring.factors[i].first] = mu;
    }
    double prob = uniform_reference(N, cls, n, tol);
    sum += prob;
    ref.entries.emplace_back(std::move(cls), prob);
    size_t k = lists.size();
    while (k > 0) {
      if (++idx[k - 1] < lists[k - 1].size()) break;
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  ref.tail_mass = std::max(0.0, 1.0 - sum);
  return ref;
}

}  // namespace cokernel
