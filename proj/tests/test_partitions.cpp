#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "cokernel/measures.hpp"
#include "cokernel/partitions.hpp"
#include "cokernel/sampler.hpp"

using namespace cokernel;

namespace {

Partition P(std::vector<int> parts) { return Partition(std::move(parts)); }

// random small partition from a philox stream
Partition random_partition(std::uint64_t seed, std::uint64_t idx, int max_boxes) {
  auto r = philox(seed, idx, 0, 0);
  int boxes = static_cast<int>(r[0] % (max_boxes + 1));
  std::vector<int> parts;
  std::uint64_t w = r[1];
  int rem = boxes, mx = boxes;
  while (rem > 0) {
    int part = 1 + static_cast<int>(w % std::min(rem, mx));
    w = w * 6364136223846793005ULL + 1442695040888963407ULL;
    parts.push_back(part);
    mx = part;
    rem -= part;
  }
  std::sort(parts.begin(), parts.end(), std::greater<int>());
  return Partition(parts);
}

}  // namespace

TEST_CASE("conjugate examples and involution") {
  CHECK(conjugate(P({})) == P({}));
  CHECK(conjugate(P({4, 2, 1})) == P({3, 2, 1, 1}));
  CHECK(conjugate(P({1, 1, 1})) == P({3}));
  for (std::uint64_t i = 0; i < 200; ++i) {
    Partition lam = random_partition(7, i, 10);
    CHECK(conjugate(conjugate(lam)) == lam);
    CHECK(conjugate(lam).boxes() == lam.boxes());
  }
}

TEST_CASE("weight via column lengths") {
  CHECK(weight(P({})) == 0);
  CHECK(weight(P({1, 1})) == 3);
  CHECK(weight(P({4, 2, 1})) == 11);
}

TEST_CASE("weight equals minimal tableau entry sum (oracle)") {
  for (const auto& lam :
       {P({}), P({1}), P({2}), P({1, 1}), P({2, 1}), P({3, 2}), P({2, 2, 1}),
        P({4, 2, 1}), P({3, 3, 2}), P({1, 1, 1, 1})}) {
    if (lam.boxes() > 8) continue;
    int n = 8;
    long long best = -1;
    for (const auto& t : enumerate_ssyt(lam, n)) {
      long long s = 0;
      for (const auto& row : t.labels)
        for (int v : row) s += v;
      if (best < 0 || s < best) best = s;
    }
    if (lam.rows() == 0) best = 0;
    CHECK(weight(lam) == best);
  }
}

TEST_CASE("cap") {
  CHECK(cap(P({3, 1}), 2) == P({2, 1}));
  CHECK(cap(P({1, 1}), 5) == P({1, 1}));
  CHECK(cap(P({4, 4, 2}), 4) == P({4, 4, 2}));
  for (std::uint64_t i = 0; i < 100; ++i) {
    Partition lam = random_partition(11, i, 10);
    for (int e = 1; e <= 4; ++e) CHECK(cap(cap(lam, e), e) == cap(lam, e));
  }
}

TEST_CASE("is_nested examples and partial order") {
  CHECK(is_nested(P({}), P({4, 2, 1})));
  CHECK_FALSE(is_nested(P({2, 2}), P({3, 1})));
  CHECK(is_nested(P({3, 1}), P({4, 2, 1})));
  std::vector<Partition> sample;
  for (std::uint64_t i = 0; i < 60; ++i) sample.push_back(random_partition(13, i, 6));
  for (const auto& a : sample) {
    CHECK(is_nested(a, a));  // reflexive
    for (const auto& b : sample) {
      if (is_nested(a, b) && is_nested(b, a)) CHECK(a == b);  // antisymmetric
      for (const auto& c : sample)                             // transitive
        if (is_nested(a, b) && is_nested(b, c)) CHECK(is_nested(a, c));
    }
  }
}

TEST_CASE("tableau_from_chain worked examples") {
  // chain[l] = T_l
  SUBCASE("no growth") {
    Tableau t = tableau_from_chain({P({}), P({})});
    CHECK(t.shape == P({}));
  }
  SUBCASE("n = 2 chain to [2,1]") {
    Tableau t = tableau_from_chain({P({2, 1}), P({1}), P({})});
    CHECK(t.shape == P({2, 1}));
    CHECK(t.labels[0][0] == 1);
    CHECK(t.labels[0][1] == 0);
    CHECK(t.labels[1][0] == 0);
    CHECK(is_semistandard(t));
  }
  SUBCASE("n = 3 chain to [2,1,1]") {
    Tableau t = tableau_from_chain({P({2, 1, 1}), P({1, 1}), P({1}), P({})});
    CHECK(t.shape == P({2, 1, 1}));
    CHECK(t.labels[0][0] == 2);
    CHECK(t.labels[1][0] == 1);
    CHECK(t.labels[2][0] == 0);
    CHECK(t.labels[0][1] == 0);
    CHECK(is_semistandard(t));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(tableau_from_chain({P({1}), P({2}), P({})}), ChainNotNested);
    CHECK_THROWS_AS(tableau_from_chain({P({1, 1}), P({}), P({})}), ColumnJump);
  }
}

namespace {

// enumerate all valid chains of length steps ending at lam, then check the
// tableau correspondence is bijective (Cor 3.9 oracle)
void all_chains(const Partition& from, int steps, std::vector<Partition>& cur,
                std::vector<std::vector<Partition>>& out) {
  if (steps == 0) {
    if (from.rows() == 0) {
      out.push_back(cur);
      out.back().push_back(from);
    }
    return;
  }
  // predecessors: remove a set of column-end boxes, at most one per column
  int cols = from.part(0);
  for (int mask = 0; mask < (1 << cols); ++mask) {
    std::vector<int> conj;
    bool ok = true;
    for (int j = 1; j <= cols; ++j) {
      int len = from.column_length(j);
      if (mask & (1 << (j - 1))) --len;
      conj.push_back(len);
    }
    for (size_t i = 0; i + 1 < conj.size(); ++i)
      if (conj[i] < conj[i + 1]) ok = false;
    if (!ok) continue;
    while (!conj.empty() && conj.back() == 0) conj.pop_back();
    Partition prev = conj.empty() ? Partition() : conjugate(Partition(conj));
    cur.push_back(prev);
    all_chains(prev, steps - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

TEST_CASE("chain <-> tableau correspondence is one-to-one") {
  for (const auto& lam : {P({2, 1}), P({2, 2}), P({3, 1}), P({1, 1, 1})}) {
    for (int n = 3; n <= 4; ++n) {
      std::vector<std::vector<Partition>> chains;
      std::vector<Partition> cur{lam};
      all_chains(lam, n, cur, chains);
      std::set<std::vector<std::vector<int>>> seen;
      for (const auto& chain : chains) {
        Tableau t = tableau_from_chain(chain);
        CHECK(is_semistandard(t));
        CHECK(t.shape == lam);
        // round-trip: sub-diagrams reproduce the chain
        for (int l = 0; l <= n; ++l) CHECK(sub_diagram_above(t, l) == chain[l]);
        seen.insert(t.labels);
      }
      CHECK(seen.size() == chains.size());
      // and the tableau count with labels 0..n-1 matches
      CHECK(Int(chains.size()) == count_ssyt(lam, n));
    }
  }
}

TEST_CASE("count_ssyt examples") {
  CHECK(count_ssyt(P({1}), 5) == 5);
  CHECK(count_ssyt(P({1, 1}), 4) == 6);
  CHECK(count_ssyt(P({2, 1}), 3) == 8);
  CHECK(count_ssyt(P({1, 1, 1}), 2) == 0);  // more rows than letters
}

TEST_CASE("enumerate_ssyt examples and guard") {
  CHECK(enumerate_ssyt(P({1}), 2).size() == 2);
  auto two = enumerate_ssyt(P({2}), 2);
  CHECK(two.size() == 3);
  CHECK(enumerate_ssyt(P({1, 1}), 2).size() == 1);
  CHECK_THROWS_AS(enumerate_ssyt(P({8, 7}), 3), TooLarge);
  CHECK_THROWS_AS(enumerate_ssyt(P({1}), 9), TooLarge);
}

TEST_CASE("count_ssyt agrees with enumeration for |lam| <= 8, n <= 6") {
  for (const auto& lam : partitions_up_to(8)) {
    for (int n = 1; n <= 6; ++n) {
      auto all = enumerate_ssyt(lam, n);
      for (const auto& t : all) CHECK(is_semistandard(t));
      CHECK(count_ssyt(lam, n) == Int(all.size()));
    }
  }
}

TEST_CASE("serialization round trips") {
  CHECK(to_string(P({})) == "0");
  CHECK(to_string(P({4, 2, 1})) == "4,2,1");
  CHECK(parse_partition("4,2,1") == P({4, 2, 1}));
  CHECK(parse_partition("0") == P({}));
  ModuleClass cls;
  cls.components[2] = P({2, 1});
  cls.components[3] = P({1});
  CHECK(to_string(cls) == "2:2,1;3:1");
  CHECK(parse_module_class("2:2,1;3:1") == cls);
  CHECK(parse_module_class("0").trivial());
  CHECK(parse_module_class("2:0").trivial());
}
