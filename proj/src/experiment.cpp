#include "cokernel/experiment.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace cokernel {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("COKERNEL_LAB_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) return t;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<long long> ring_primes(const RingSpec& ring) {
  std::vector<long long> primes;
  for (auto [p, e] : ring.factors) primes.push_back(p);
  return primes;
}

EmpiricalDistribution run_simulation(const RingSpec& ring, int n,
                                     const EntryDistribution& dist, long long trials,
                                     std::uint64_t seed, int threads,
                                     const PrecisionPolicy& policy) {
  min_entropy(dist, ring_primes(ring));  // throws DegenerateDistribution upfront
  const int T = std::max(1, std::min<long long>(resolve_threads(threads), trials));
  std::vector<EmpiricalDistribution> shards(T);
  std::vector<std::string> errors(T);
  std::vector<std::thread> pool;
  for (int w = 0; w < T; ++w) {
    pool.emplace_back([&, w] {
      EmpiricalDistribution local;
      try {
        for (long long t = w; t < trials; t += T) {
          IntMatrix A = sample_matrix(dist, n, seed, static_cast<std::uint64_t>(t));
          CokernelClass cls;
          try {
            cls = cokernel_class(A, ring, policy);
          } catch (const PrecisionCeiling& e) {
            throw PrecisionCeiling(std::string(e.what()) + " (trial index " +
                                   std::to_string(t) + ")");
          }
          local.trials++;
          if (cls.infinite)
            local.infinite_count++;
          else
            local.counts[cls.cls]++;
        }
      } catch (const std::exception& e) {
        errors[w] = e.what();
      }
      shards[w] = std::move(local);
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& err : errors)
    if (!err.empty()) throw PrecisionCeiling(err);
  EmpiricalDistribution out;
  for (auto& s : shards) out = merge(std::move(out), s);
  out.ring = ring;
  out.n = n;
  out.seed = seed;
  out.dist = dist.name;
  return out;
}

Json to_json(const RingSpec& ring) {
  Json j;
  if (ring.padic) {
    j["type"] = "padic";
    j["p"] = ring.factors[0].first;
  } else {
    j["type"] = "modN";
    j["N"] = ring.modulus();
    Json f = Json::array();
    for (auto [p, e] : ring.factors) f.push_back({p, e});
    j["factors"] = f;
  }
  return j;
}

Json to_json(const EmpiricalDistribution& emp) {
  Json j;
  j["ring"] = to_json(emp.ring);
  j["n"] = emp.n;
  j["trials"] = emp.trials;
  j["seed"] = emp.seed;
  j["dist"] = emp.dist;
  Json counts = Json::object();
  for (const auto& [cls, c] : emp.counts) counts[to_string(cls)] = c;
  j["counts"] = counts;
  j["infinite"] = emp.infinite_count;
  return j;
}

Json to_json(const ReferenceDistribution& ref) {
  Json j;
  j["ring"] = to_json(ref.ring);
  j["n"] = ref.n;
  Json entries = Json::array();
  for (const auto& [cls, p] : ref.entries)
    entries.push_back(Json{{"class", to_string(cls)}, {"prob", p}});
  j["entries"] = entries;
  j["tail_mass"] = ref.tail_mass;
  return j;
}

Json to_json(const ComparisonReport& rep, const EmpiricalDistribution& emp,
             const ReferenceDistribution& ref) {
  Json j;
  j["ring"] = to_json(emp.ring);
  j["n"] = emp.n;
  j["trials"] = rep.trials;
  j["seed"] = emp.seed;
  j["dist"] = emp.dist;
  j["tv"] = rep.tv;
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    rows.push_back(Json{{"class", to_string(r.cls)},
                        {"count", r.count},
                        {"emp", r.emp},
                        {"ref", r.ref},
                        {"lo", r.wilson.lo},
                        {"hi", r.wilson.hi},
                        {"z", r.z}});
  }
  j["rows"] = rows;
  j["unlisted"] = Json{{"emp", rep.emp_unlisted}, {"ref_tail", rep.ref_tail}};
  (void)ref;
  return j;
}

std::string comparison_csv(const ComparisonReport& rep) {
  std::ostringstream out;
  out << "class,count,emp_prob,ref_prob,lo,hi,z\n";
  char buf[256];
  for (const auto& r : rep.rows) {
    std::snprintf(buf, sizeof buf, "%s,%lld,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                  to_string(r.cls).c_str(), r.count, r.emp, r.ref, r.wilson.lo,
                  r.wilson.hi, r.z);
    out << buf;
  }
  return out.str();
}

Json to_json(const ExposureTrace& trace, int jmax, const RankEventReport& report) {
  Json j;
  j["p"] = trace.p;
  j["n"] = trace.n;
  Json chain = Json::array();
  for (const auto& part : trace.chain) chain.push_back(to_string(part));
  j["chain"] = chain;
  Json flags = Json::array();
  for (char f : trace.torsion_flags) flags.push_back(f != 0);
  j["torsion_flags"] = flags;
  if (trace.tableau) {
    Json tab;
    tab["shape"] = to_string(trace.tableau->shape);
    tab["labels"] = trace.tableau->labels;
    j["tableau"] = tab;
  } else {
    j["tableau"] = nullptr;
  }
  Json events = Json::array();
  PrecisionPolicy pol;
  pol.start_e = std::max(pol.start_e, jmax + 1);
  for (int l = trace.n; l >= 1; --l) {
    if (trace.torsion_flags[trace.n - l]) continue;
    SaturationFrame frame = frame_at_step(trace, l, pol);
    Json step;
    step["l"] = l;
    Json ev = Json::array();
    for (auto [jj, t] : detect_events(frame, trace.matrix.col(l - 1), jmax))
      ev.push_back(Json{{"j", jj}, {"t", t}});
    step["events"] = ev;
    events.push_back(step);
  }
  j["events"] = events;
  j["rank_event_check"] =
      Json{{"steps_checked", report.steps_checked},
           {"steps_skipped_flagged", report.steps_skipped_flagged},
           {"violations", report.violations.size()}};
  return j;
}

IntMatrix matrix_from_csv(const std::string& text) {
  std::vector<std::vector<Int>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    std::vector<Int> row;
    std::stringstream ls(line);
    std::string tok;
    while (std::getline(ls, tok, ',')) row.emplace_back(tok);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw BadParams("matrix_from_csv: no rows");
  IntMatrix A(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw BadParams("matrix_from_csv: ragged rows");
    for (size_t j = 0; j < rows[i].size(); ++j) A(i, j) = rows[i][j];
  }
  return A;
}

std::string matrix_to_csv(const IntMatrix& A) {
  std::ostringstream out;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (j) out << ',';
      out << A(i, j).str();
    }
    out << '\n';
  }
  return out.str();
}

IntMatrix matrix_from_json(const Json& j) {
  int r = j.at("rows"), c = j.at("cols");
  IntMatrix A(r, c);
  const auto& data = j.at("data");
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < c; ++k) {
      const auto& cell = data.at(i).at(k);
      A(i, k) = cell.is_string() ? Int(cell.get<std::string>())
                                 : Int(cell.get<long long>());
    }
  return A;
}

Json matrix_to_json(const IntMatrix& A) {
  Json j;
  j["rows"] = A.rows();
  j["cols"] = A.cols();
  Json data = Json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < A.cols(); ++k) {
      // JSON numbers stay exact up to 2^53; larger entries go as strings
      if (A(i, k) >= Int(-(1LL << 53)) && A(i, k) <= Int(1LL << 53))
        row.push_back(A(i, k).convert_to<long long>());
      else
        row.push_back(A(i, k).str());
    }
    data.push_back(row);
  }
  j["data"] = data;
  return j;
}

IntMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadParams("load_matrix: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{')
    return matrix_from_json(Json::parse(text));
  return matrix_from_csv(text);
}

}  // namespace cokernel
