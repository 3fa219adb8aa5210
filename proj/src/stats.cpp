#include "cokernel/stats.hpp"

#include <cmath>

namespace cokernel {

EmpiricalDistribution tally(const std::vector<CokernelClass>& results) {
  if (results.empty()) throw EmptyBatch("tally: empty batch");
  EmpiricalDistribution e;
  e.trials = static_cast<long long>(results.size());
  for (const auto& r : results) {
    if (r.infinite)
      ++e.infinite_count;
    else
      ++e.counts[r.cls];
  }
  return e;
}

EmpiricalDistribution merge(EmpiricalDistribution a, const EmpiricalDistribution& b) {
  a.trials += b.trials;
  a.infinite_count += b.infinite_count;
  for (const auto& [cls, c] : b.counts) a.counts[cls] += c;
  return a;
}

double tv_distance(const EmpiricalDistribution& emp, const ReferenceDistribution& ref) {
  if (emp.ring != ref.ring || (ref.n != 0 && emp.n != ref.n))
    throw RingMismatch("tv_distance: empirical and reference rings differ");
  double sum = 0;
  long long listed = 0;
  for (const auto& [cls, p] : ref.entries) {
    auto it = emp.counts.find(cls);
    long long c = it == emp.counts.end() ? 0 : it->second;
    listed += c;
    sum += std::abs(double(c) / double(emp.trials) - p);
  }
  double unlisted = double(emp.trials - listed) / double(emp.trials);
  sum += std::abs(unlisted - ref.tail_mass);
  return 0.5 * sum;
}

Interval wilson_interval(long long count, long long trials, double z) {
  double n = double(trials), p = double(count) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2 * n)) / denom;
  double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

DecayFit decay_fit(const std::vector<std::pair<double, double>>& points) {
  std::vector<std::pair<double, double>> use;
  DecayFit f;
  for (auto [n, tv] : points) {
    if (tv > 0)
      use.emplace_back(n, std::log(tv));
    else
      ++f.dropped;
  }
  if (use.size() < 3) throw BadParams("decay_fit: need at least 3 points with tv > 0");
  double mx = 0, my = 0;
  for (auto [x, y] : use) {
    mx += x;
    my += y;
  }
  mx /= use.size();
  my /= use.size();
  double sxx = 0, sxy = 0, syy = 0;
  for (auto [x, y] : use) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

ComparisonReport compare(const EmpiricalDistribution& emp,
                         const ReferenceDistribution& ref, double z) {
  ComparisonReport rep;
  rep.trials = emp.trials;
  rep.tv = tv_distance(emp, ref);
  long long listed = 0;
  for (const auto& [cls, p] : ref.entries) {
    ComparisonRow row;
    row.cls = cls;
    auto it = emp.counts.find(cls);
    row.count = it == emp.counts.end() ? 0 : it->second;
    listed += row.count;
    row.emp = double(row.count) / double(emp.trials);
    row.ref = p;
    row.wilson = wilson_interval(row.count, emp.trials, z);
    double sigma = std::sqrt(p * (1 - p) / double(emp.trials));
    row.z = sigma > 0 ? (row.emp - p) / sigma : 0.0;
    rep.rows.push_back(std::move(row));
  }
  rep.emp_unlisted = double(emp.trials - listed) / double(emp.trials);
  rep.ref_tail = ref.tail_mass;
  return rep;
}

}  // namespace cokernel
