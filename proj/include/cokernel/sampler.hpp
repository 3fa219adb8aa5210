#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cokernel/types.hpp"

namespace cokernel {

// Philox4x32-10 counter-based generator: two 64-bit words from
// (seed, trial index, cell, slot). Stateless, so any trial/entry/digit is
// reproducible in isolation regardless of evaluation order.
std::array<std::uint64_t, 2> philox(std::uint64_t seed, std::uint64_t index,
                                    std::uint32_t cell, std::uint32_t slot);

// Finite-support integer entry distribution. Probabilities are exact
// rationals (decimal strings parse exactly); sampling uses an alias table
// with 64-bit fixed-point thresholds.
struct EntryDistribution {
  std::vector<long long> support;
  std::vector<Rat> probs;
  std::string name;

  // prime-power digit stream (uniform_mod(p^E)); 0 = alias sampling
  long long digit_p = 0;
  int digit_e = 0;

  // alias table, built on construction
  std::vector<std::uint32_t> alias;
  std::vector<std::uint64_t> threshold;

  double prob(size_t i) const { return probs[i].convert_to<double>(); }
};

EntryDistribution make_distribution(std::vector<long long> support,
                                    std::vector<Rat> probs, std::string name);

// kinds: bernoulli(alpha), uniform_mod(M), signed_uniform(B), custom
EntryDistribution bernoulli(const Rat& alpha);
EntryDistribution uniform_mod(long long M);
EntryDistribution signed_uniform(long long B);

// "bernoulli:0.3", "uniform_mod:8", "signed_uniform:1",
// "custom:0=0.5,1=0.25,3=0.25"
EntryDistribution parse_distribution(const std::string& spec);

// Largest alpha with sup_{p in primes} sup_t P(xi = t mod p) <= 1 - alpha.
// Throws DegenerateDistribution when some prime sees all mass on one residue.
double min_entropy(const EntryDistribution& xi, const std::vector<long long>& primes);

long long sample_entry(const EntryDistribution& xi, std::uint64_t seed,
                       std::uint64_t index, std::uint32_t cell);

IntMatrix sample_matrix(const EntryDistribution& xi, int n, std::uint64_t seed,
                        std::uint64_t index);

struct SampleBatch {
  std::vector<IntMatrix> matrices;
  std::uint64_t seed = 0;
  std::string dist;
  int n = 0;
  long long trials = 0;
};

SampleBatch sample_batch(const EntryDistribution& xi, int n, std::uint64_t seed,
                         long long trials);

}  // namespace cokernel
