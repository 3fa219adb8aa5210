#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cokernel/exposure.hpp"
#include "cokernel/measures.hpp"
#include "cokernel/modarith.hpp"
#include "cokernel/sampler.hpp"
#include "cokernel/stats.hpp"

namespace cokernel {

using Json = nlohmann::ordered_json;

struct ExperimentConfig {
  std::string command;
  RingSpec ring = RingSpec::padic_ring(2);
  std::vector<int> n_list = {10};
  long long trials = 10000;
  std::string dist_spec = "bernoulli:0.5";
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string format = "json";  // json | csv
  std::string out_path;         // empty = stdout
  int threads = 0;              // 0 = COKERNEL_LAB_THREADS or hardware
  int max_weight = 6;           // reference class enumeration bound
};

int resolve_threads(int requested);

// Sample `trials` matrices (pure function of seed and trial index), compute
// cokernel classes, and tally. Thread count changes wall time only.
EmpiricalDistribution run_simulation(const RingSpec& ring, int n,
                                     const EntryDistribution& dist, long long trials,
                                     std::uint64_t seed, int threads,
                                     const PrecisionPolicy& policy = {});

std::vector<long long> ring_primes(const RingSpec& ring);

// Serialization (insertion-ordered JSON keeps output byte-stable).
Json to_json(const RingSpec& ring);
Json to_json(const EmpiricalDistribution& emp);
Json to_json(const ReferenceDistribution& ref);
Json to_json(const ComparisonReport& rep, const EmpiricalDistribution& emp,
             const ReferenceDistribution& ref);
Json to_json(const ExposureTrace& trace, int jmax, const RankEventReport& report);
std::string comparison_csv(const ComparisonReport& rep);

// Matrix I/O: CSV rows-as-lines and {"rows": r, "cols": c, "data": [[...]]}.
IntMatrix matrix_from_csv(const std::string& text);
std::string matrix_to_csv(const IntMatrix& A);
IntMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const IntMatrix& A);
IntMatrix load_matrix(const std::string& path);

}  // namespace cokernel
