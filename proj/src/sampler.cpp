#include "cokernel/sampler.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

namespace cokernel {

namespace {

inline void philox_round(std::uint32_t c[4], std::uint32_t k0, std::uint32_t k1) {
  constexpr std::uint64_t M0 = 0xD2511F53, M1 = 0xCD9E8D57;
  std::uint64_t p0 = M0 * c[0];
  std::uint64_t p1 = M1 * c[2];
  std::uint32_t out0 = static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k0;
  std::uint32_t out1 = static_cast<std::uint32_t>(p1);
  std::uint32_t out2 = static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k1;
  std::uint32_t out3 = static_cast<std::uint32_t>(p0);
  c[0] = out0;
  c[1] = out1;
  c[2] = out2;
  c[3] = out3;
}

inline std::uint64_t mulhi_u64(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) >> 64);
}

}  // namespace

std::array<std::uint64_t, 2> philox(std::uint64_t seed, std::uint64_t index,
                                    std::uint32_t cell, std::uint32_t slot) {
  constexpr std::uint32_t W0 = 0x9E3779B9, W1 = 0xBB67AE85;
  std::uint32_t k0 = static_cast<std::uint32_t>(seed);
  std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
  std::uint32_t c[4] = {static_cast<std::uint32_t>(index),
                        static_cast<std::uint32_t>(index >> 32), cell, slot};
  for (int r = 0; r < 10; ++r) {
    philox_round(c, k0, k1);
    k0 += W0;
    k1 += W1;
  }
  return {static_cast<std::uint64_t>(c[0]) | (static_cast<std::uint64_t>(c[1]) << 32),
          static_cast<std::uint64_t>(c[2]) | (static_cast<std::uint64_t>(c[3]) << 32)};
}

namespace {

// Vose alias table with exact rational inputs; thresholds are 64-bit
// fixed-point so sampling is branch-plus-compare on two Philox words.
void build_alias(EntryDistribution& d) {
  const size_t K = d.support.size();
  d.alias.assign(K, 0);
  d.threshold.assign(K, 0);
  std::vector<Rat> scaled(K);
  for (size_t i = 0; i < K; ++i) scaled[i] = d.probs[i] * Rat(static_cast<long long>(K));
  std::vector<size_t> small, large;
  for (size_t i = K; i-- > 0;) {
    if (scaled[i] < 1)
      small.push_back(i);
    else
      large.push_back(i);
  }
  auto to_threshold = [](const Rat& q) {
    Int num = boost::multiprecision::numerator(q);
    Int den = boost::multiprecision::denominator(q);
    Int t = (num << 64) / den;
    if (t > Int(std::numeric_limits<std::uint64_t>::max()))
      return std::numeric_limits<std::uint64_t>::max();
    return t.convert_to<std::uint64_t>();
  };
  while (!small.empty() && !large.empty()) {
    size_t s = small.back(), l = large.back();
    small.pop_back();
    d.threshold[s] = to_threshold(scaled[s]);
    d.alias[s] = static_cast<std::uint32_t>(l);
    scaled[l] -= Rat(1) - scaled[s];
    if (scaled[l] < 1) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (size_t i : large) {
    d.threshold[i] = std::numeric_limits<std::uint64_t>::max();
    d.alias[i] = static_cast<std::uint32_t>(i);
  }
  for (size_t i : small) {  // numerically exact inputs leave none with mass
    d.threshold[i] = std::numeric_limits<std::uint64_t>::max();
    d.alias[i] = static_cast<std::uint32_t>(i);
  }
}

}  // namespace

EntryDistribution make_distribution(std::vector<long long> support,
                                    std::vector<Rat> probs, std::string name) {
  if (support.empty() || support.size() != probs.size())
    throw BadParams("make_distribution: empty or mismatched support/probs");
  // drop zero-probability atoms, check positivity and normalization
  EntryDistribution d;
  d.name = std::move(name);
  Rat total = 0;
  for (size_t i = 0; i < support.size(); ++i) {
    if (probs[i] < 0) throw BadParams("make_distribution: negative probability");
    total += probs[i];
    if (probs[i] == 0) continue;
    d.support.push_back(support[i]);
    d.probs.push_back(probs[i]);
  }
  if (total != 1) throw BadParams("make_distribution: probabilities must sum to 1");
  if (d.support.empty()) throw BadParams("make_distribution: no mass");
  std::vector<long long> sorted = d.support;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw BadParams("make_distribution: support entries must be distinct");
  build_alias(d);
  return d;
}

EntryDistribution bernoulli(const Rat& alpha) {
  if (alpha < 0 || alpha > 1) throw BadParams("bernoulli: alpha must lie in [0,1]");
  return make_distribution({0, 1}, {Rat(1) - alpha, alpha}, "bernoulli:" + alpha.str());
}

EntryDistribution uniform_mod(long long M) {
  if (M < 1) throw BadParams("uniform_mod: M must be positive");
  std::vector<long long> support(M);
  std::vector<Rat> probs(M, Rat(1, M));
  for (long long i = 0; i < M; ++i) support[i] = i;
  EntryDistribution d =
      make_distribution(std::move(support), std::move(probs), "uniform_mod:" + std::to_string(M));
  if (M > 1) {
    auto factors = factorize(M);
    if (factors.size() == 1) {
      // prime power: per-entry digit streams, so uniform_mod(p^{2E}) reduces
      // mod p^E to the uniform_mod(p^E) sample with the same seed
      d.digit_p = factors[0].first;
      d.digit_e = factors[0].second;
    }
  }
  return d;
}

EntryDistribution signed_uniform(long long B) {
  if (B < 0) throw BadParams("signed_uniform: B must be non-negative");
  std::vector<long long> support;
  std::vector<Rat> probs;
  for (long long v = -B; v <= B; ++v) {
    support.push_back(v);
    probs.emplace_back(1, 2 * B + 1);
  }
  return make_distribution(std::move(support), std::move(probs),
                           "signed_uniform:" + std::to_string(B));
}

namespace {

Rat parse_decimal(const std::string& s) {
  // exact rational from a decimal literal
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rat(Int(s));
  std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
  bool neg = !whole.empty() && whole[0] == '-';
  Int den = 1;
  for (size_t i = 0; i < frac.size(); ++i) den *= 10;
  Int num = Int(whole.empty() || whole == "-" ? "0" : whole) * den;
  Int f = frac.empty() ? Int(0) : Int(frac);
  num += neg ? -f : f;
  return Rat(num, den);
}

}  // namespace

EntryDistribution parse_distribution(const std::string& spec) {
  auto pos = spec.find(':');
  std::string kind = pos == std::string::npos ? spec : spec.substr(0, pos);
  std::string args = pos == std::string::npos ? "" : spec.substr(pos + 1);
  if (kind == "bernoulli") {
    EntryDistribution d = bernoulli(parse_decimal(args));
    d.name = spec;
    return d;
  }
  if (kind == "uniform_mod") return uniform_mod(std::stoll(args));
  if (kind == "signed_uniform") return signed_uniform(std::stoll(args));
  if (kind == "custom") {
    std::vector<long long> support;
    std::vector<Rat> probs;
    std::stringstream ss(args);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw BadParams("parse_distribution: expected v=p in " + spec);
      support.push_back(std::stoll(item.substr(0, eq)));
      probs.push_back(parse_decimal(item.substr(eq + 1)));
    }
    EntryDistribution d = make_distribution(std::move(support), std::move(probs), spec);
    return d;
  }
  throw BadParams("parse_distribution: unknown kind " + kind);
}

double min_entropy(const EntryDistribution& xi, const std::vector<long long>& primes) {
  if (primes.empty()) throw BadParams("min_entropy: need at least one prime");
  Rat sup = 0;
  for (long long p : primes) {
    std::map<long long, Rat> mass;
    for (size_t i = 0; i < xi.support.size(); ++i) {
      long long t = ((xi.support[i] % p) + p) % p;
      mass[t] += xi.probs[i];
    }
    for (const auto& [t, m] : mass) sup = std::max(sup, m);
  }
  Rat alpha = Rat(1) - sup;
  if (alpha <= 0)
    throw DegenerateDistribution("min_entropy: all mass on one residue class for some prime");
  return alpha.convert_to<double>();
}

long long sample_entry(const EntryDistribution& xi, std::uint64_t seed,
                       std::uint64_t index, std::uint32_t cell) {
  if (xi.digit_p > 0) {
    // base-p digit stream: digit k is a pure function of (seed, index, cell, k)
    long long value = 0, pk = 1;
    for (int k = 0; k < xi.digit_e; ++k) {
      auto r = philox(seed, index, cell, static_cast<std::uint32_t>(k));
      value += static_cast<long long>(
                   mulhi_u64(r[0], static_cast<std::uint64_t>(xi.digit_p))) *
               pk;
      pk *= xi.digit_p;
    }
    return value;
  }
  auto r = philox(seed, index, cell, 0);
  const std::uint64_t K = xi.support.size();
  std::uint64_t bucket = mulhi_u64(r[0], K);
  return r[1] < xi.threshold[bucket] ? xi.support[bucket] : xi.support[xi.alias[bucket]];
}

IntMatrix sample_matrix(const EntryDistribution& xi, int n, std::uint64_t seed,
                        std::uint64_t index) {
  assert(n >= 1);
  IntMatrix A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      A(i, j) = sample_entry(xi, seed, index, static_cast<std::uint32_t>(i * n + j));
  return A;
}

SampleBatch sample_batch(const EntryDistribution& xi, int n, std::uint64_t seed,
                         long long trials) {
  SampleBatch b;
  b.seed = seed;
  b.dist = xi.name;
  b.n = n;
  b.trials = trials;
  b.matrices.reserve(trials);
  for (long long t = 0; t < trials; ++t)
    b.matrices.push_back(sample_matrix(xi, n, seed, static_cast<std::uint64_t>(t)));
  return b;
}

}  // namespace cokernel
