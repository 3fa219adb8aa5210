#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cokernel/sampler.hpp"
#include "cokernel/stats.hpp"

using namespace cokernel;

namespace {

ModuleClass cls(const std::string& s) { return parse_module_class(s); }

CokernelClass finite(const std::string& s) { return {false, cls(s)}; }

ReferenceDistribution make_ref(std::vector<std::pair<std::string, double>> entries,
                               double tail, int n = 10) {
  ReferenceDistribution ref;
  ref.ring = RingSpec::padic_ring(2);
  ref.n = n;
  for (auto& [name, p] : entries) ref.entries.emplace_back(cls(name), p);
  ref.tail_mass = tail;
  return ref;
}

EmpiricalDistribution make_emp(std::vector<std::pair<std::string, long long>> counts,
                               long long trials, int n = 10) {
  EmpiricalDistribution e;
  e.ring = RingSpec::padic_ring(2);
  e.n = n;
  e.trials = trials;
  for (auto& [name, c] : counts) e.counts[cls(name)] = c;
  return e;
}

}  // namespace

TEST_CASE("tally") {
  auto e = tally({finite("0"), finite("0"), finite("2:1")});
  CHECK(e.trials == 3);
  CHECK(e.counts.at(cls("0")) == 2);
  CHECK(e.counts.at(cls("2:1")) == 1);
  CHECK_THROWS_AS(tally({}), EmptyBatch);

  auto inf = tally({{true, {}}, finite("0")});
  CHECK(inf.infinite_count == 1);
}

TEST_CASE("tally merge is order independent") {
  std::vector<CokernelClass> batch;
  for (int i = 0; i < 30; ++i) batch.push_back(finite(i % 3 == 0 ? "2:1" : "0"));
  auto whole = tally(batch);
  std::vector<CokernelClass> first(batch.begin(), batch.begin() + 11);
  std::vector<CokernelClass> rest(batch.begin() + 11, batch.end());
  auto m1 = merge(tally(first), tally(rest));
  auto m2 = merge(tally(rest), tally(first));
  CHECK(m1.counts == whole.counts);
  CHECK(m2.counts == whole.counts);
  CHECK(m1.trials == whole.trials);
}

TEST_CASE("tv_distance basics") {
  auto ref = make_ref({{"0", 0.5}, {"2:1", 0.5}}, 0.0);
  auto e = make_emp({{"0", 50}, {"2:1", 50}}, 100);
  CHECK(tv_distance(e, ref) == doctest::Approx(0.0));

  auto point = make_emp({{"0", 100}}, 100);
  CHECK(tv_distance(point, ref) == doctest::Approx(0.5));

  // disjoint point masses
  auto refb = make_ref({{"2:2", 1.0}}, 0.0);
  CHECK(tv_distance(point, refb) == doctest::Approx(1.0));

  auto wrong_ring = make_emp({{"0", 10}}, 10, 12);
  CHECK_THROWS_AS(tv_distance(wrong_ring, ref), RingMismatch);
}

TEST_CASE("tv_distance against the CL point mass") {
  ReferenceDistribution ref;
  ref.ring = RingSpec::padic_ring(2);
  ref.n = 0;
  double sum = 0;
  for (const auto& lam : partitions_up_to(10)) {
    ModuleClass c;
    if (lam.rows() > 0) c.components[2] = lam;
    double p = cl_measure(2, lam, 1e-12);
    ref.entries.emplace_back(c, p);
    sum += p;
  }
  ref.tail_mass = 1.0 - sum;
  auto point = make_emp({{"0", 1000}}, 1000, 0);
  // all mass on the trivial class vs CL: tv = 1 - mu_CL(trivial)
  CHECK(tv_distance(point, ref) == doctest::Approx(1.0 - 0.2887880951).epsilon(1e-6));
}

TEST_CASE("tv_distance is a metric on fixed support") {
  // random distributions over 4 classes, compared through the reference shell
  std::vector<std::string> names{"0", "2:1", "2:2", "2:1,1"};
  auto mk_pair = [&](std::uint64_t i) {
    std::vector<long long> c(4);
    long long tot = 0;
    for (int k = 0; k < 4; ++k) {
      c[k] = 1 + static_cast<long long>(philox(123, i, k, 0)[0] % 100);
      tot += c[k];
    }
    std::vector<std::pair<std::string, long long>> emp;
    std::vector<std::pair<std::string, double>> ref;
    for (int k = 0; k < 4; ++k) {
      emp.emplace_back(names[k], c[k]);
      ref.emplace_back(names[k], double(c[k]) / double(tot));
    }
    return std::make_pair(make_emp(emp, tot), make_ref(ref, 0.0));
  };
  for (std::uint64_t i = 0; i < 20; ++i) {
    auto [ea, ra] = mk_pair(i);
    auto [eb, rb] = mk_pair(i + 100);
    auto [ec, rc] = mk_pair(i + 200);
    double dab = tv_distance(ea, rb), dba = tv_distance(eb, ra);
    CHECK(dab == doctest::Approx(dba).epsilon(1e-12));       // symmetry
    CHECK(tv_distance(ea, ra) == doctest::Approx(0.0));      // identity
    double dac = tv_distance(ea, rc), dbc = tv_distance(eb, rc);
    CHECK(dac <= dab + dbc + 1e-12);                          // triangle
  }
}

TEST_CASE("wilson intervals") {
  auto z0 = wilson_interval(0, 100);
  CHECK(z0.lo == doctest::Approx(0.0));
  auto mid = wilson_interval(50, 100);
  CHECK(mid.lo == doctest::Approx(0.4038).epsilon(1e-3));
  CHECK(mid.hi == doctest::Approx(0.5962).epsilon(1e-3));
  auto full = wilson_interval(100, 100);
  CHECK(full.hi == doctest::Approx(1.0));
  CHECK(full.lo < 1.0);
  CHECK(wilson_interval(29, 100).contains(0.3));
}

TEST_CASE("decay_fit") {
  std::vector<std::pair<double, double>> geo;
  for (int n : {4, 6, 8}) geo.emplace_back(n, std::pow(2.0, -n));
  auto f = decay_fit(geo);
  CHECK(f.slope == doctest::Approx(-std::log(2.0)).epsilon(1e-9));
  CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-9));

  std::vector<std::pair<double, double>> flat{{4, 0.1}, {6, 0.1}, {8, 0.1}};
  CHECK(decay_fit(flat).slope == doctest::Approx(0.0));

  std::vector<std::pair<double, double>> with_zero{{4, 0.1}, {6, 0.0}, {8, 0.1}};
  CHECK_THROWS_AS(decay_fit(with_zero), BadParams);
  with_zero.emplace_back(10, 0.05);
  CHECK(decay_fit(with_zero).dropped == 1);
}

TEST_CASE("compare report structure") {
  auto ref = make_ref({{"0", 0.3}, {"2:1", 0.3}}, 0.4);
  auto emp = make_emp({{"0", 320}, {"2:1", 280}, {"2:3", 400}}, 1000);
  auto rep = compare(emp, ref);
  CHECK(rep.rows.size() == 2);
  CHECK(rep.rows[0].count == 320);
  CHECK(rep.rows[0].wilson.contains(0.32));
  CHECK(rep.emp_unlisted == doctest::Approx(0.4));
  CHECK(rep.tv == doctest::Approx(0.5 * (0.02 + 0.02 + 0.0)));
}
