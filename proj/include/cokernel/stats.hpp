#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cokernel/measures.hpp"
#include "cokernel/modarith.hpp"
#include "cokernel/partitions.hpp"

namespace cokernel {

struct EmpiricalDistribution {
  long long trials = 0;
  std::map<ModuleClass, long long> counts;
  long long infinite_count = 0;
  // provenance
  RingSpec ring;
  int n = 0;
  std::uint64_t seed = 0;
  std::string dist;

  double prob(const ModuleClass& cls) const {
    auto it = counts.find(cls);
    return it == counts.end() ? 0.0 : double(it->second) / double(trials);
  }
};

EmpiricalDistribution tally(const std::vector<CokernelClass>& results);
EmpiricalDistribution merge(EmpiricalDistribution a, const EmpiricalDistribution& b);

// (1/2) [ sum over listed classes |emp - ref| + |emp unlisted - tail_mass| ];
// the infinite-cokernel count lands in the unlisted bucket.
double tv_distance(const EmpiricalDistribution& emp, const ReferenceDistribution& ref);

struct Interval {
  double lo = 0, hi = 1;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

Interval wilson_interval(long long count, long long trials, double z = 1.96);

struct DecayFit {
  double slope = 0, intercept = 0, r2 = 0;
  int dropped = 0;  // points with tv <= 0 removed before the log fit
};

// Least squares of log(tv) against n; needs >= 3 usable points.
DecayFit decay_fit(const std::vector<std::pair<double, double>>& points);

struct ComparisonRow {
  ModuleClass cls;
  long long count = 0;
  double emp = 0, ref = 0;
  Interval wilson;  // 95% by default
  double z = 0;     // (emp - ref) / binomial sigma at ref
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  double tv = 0;
  double emp_unlisted = 0, ref_tail = 0;
  long long trials = 0;
};

ComparisonReport compare(const EmpiricalDistribution& emp,
                         const ReferenceDistribution& ref, double z = 1.96);

}  // namespace cokernel
