#include "cokernel/exposure.hpp"

#include <algorithm>
#include <cassert>

namespace cokernel {

bool ExposureTrace::any_flag() const {
  return std::any_of(torsion_flags.begin(), torsion_flags.end(),
                     [](char f) { return f != 0; });
}

IntMatrix column_block(const IntMatrix& A, int l) {
  const int n = static_cast<int>(A.rows());
  return A.block(0, l, n, n - l);
}

ExposureTrace run_exposure(const IntMatrix& A, long long p, const PrecisionPolicy& policy) {
  if (A.rows() != A.cols()) throw std::invalid_argument("run_exposure: matrix must be square");
  const int n = static_cast<int>(A.rows());
  ExposureTrace tr;
  tr.p = p;
  tr.n = n;
  tr.matrix = A;
  std::vector<int> block_rank(n + 1, 0);  // exact rank of W_l's basis
  for (int l = n; l >= 0; --l) {
    IntMatrix B = column_block(A, l);
    tr.chain.push_back(cokernel_partition(B, p, policy).torsion);
    block_rank[l] = exact_rank(B);
  }
  // X_l lies in W_l[infinity] iff adjoining it leaves the rational span alone
  for (int s = 0; s < n; ++s) {
    int l = n - s;
    tr.torsion_flags.push_back(block_rank[l - 1] == block_rank[l] ? 1 : 0);
  }
  if (!tr.any_flag()) {
    // tableau_from_chain wants chain[l] = T_l
    std::vector<Partition> by_l(tr.chain.rbegin(), tr.chain.rend());
    tr.tableau = tableau_from_chain(by_l);
  }
  return tr;
}

bool membership_coords(const SaturationFrame& frame, const IntVector& y, int a, int b) {
  assert(a >= 1);
  if (a > frame.precision_e)
    throw PrecisionTooLow("membership: a = " + std::to_string(a) + " exceeds E = " +
                          std::to_string(frame.precision_e));
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    int d = frame.coord_exp[i];
    int threshold;
    if (d == kInfExp)
      threshold = a;
    else if (b == kInfExp)
      threshold = 0;
    else
      threshold = std::min(a, std::max(d - b, 0));
    if (threshold > 0 && mod_canonical(y(i), int_pow(frame.p, threshold)) != 0) return false;
  }
  return true;
}

bool membership_enlarged(const IntVector& x, const IntMatrix& W_basis,
                         const EnlargedIndexSet& F, long long p, int E) {
  if (F.pairs.empty()) throw BadParams("membership_enlarged: empty index set");
  SaturationFrame frame = saturation_profile(W_basis, p, E);
  IntVector y = frame.coords(x);
  for (auto [a, b] : F.pairs)
    if (!membership_coords(frame, y, a, b)) return false;
  return true;
}

std::map<int, int> detect_events(const SaturationFrame& W_frame, const IntVector& x,
                                 int jmax) {
  assert(jmax >= 1);
  IntVector y = W_frame.coords(x);
  std::map<int, int> events;
  for (int j = 1; j <= jmax; ++j) {
    for (int t = 0; t < j; ++t) {
      bool hit = t == 0 ? membership_coords(W_frame, y, j, 0)
                        : membership_coords(W_frame, y, j - t, t) &&
                              !membership_coords(W_frame, y, j - t, t - 1);
      if (hit) {
        assert(!events.count(j));  // E_{j,0..j-1} are disjoint
        events[j] = t;
#ifdef NDEBUG
        break;
#endif
      }
    }
  }
  return events;
}

SaturationFrame frame_at_step(const ExposureTrace& trace, int l,
                              const PrecisionPolicy& policy) {
  return saturation_profile_auto(column_block(trace.matrix, l), trace.p, policy);
}

int default_jmax(const ExposureTrace& trace) {
  return trace.chain.back().part(0) + 2;
}

RankEventReport verify_rank_event_equivalence(const ExposureTrace& trace, int jmax,
                                              const PrecisionPolicy& policy) {
  RankEventReport report;
  PrecisionPolicy pol = policy;
  pol.start_e = std::max(pol.start_e, jmax + 1);
  for (int l = trace.n; l >= 1; --l) {
    int s = trace.n - l;  // step index: chain[s] = T_l -> chain[s+1] = T_{l-1}
    if (trace.torsion_flags[s]) {
      ++report.steps_skipped_flagged;
      continue;
    }
    SaturationFrame frame = frame_at_step(trace, l, pol);
    auto events = detect_events(frame, trace.matrix.col(l - 1), jmax);
    const Partition& before = trace.chain[s];
    const Partition& after = trace.chain[s + 1];
    for (int j = 1; j <= jmax; ++j) {
      bool grew = after.column_length(j) == before.column_length(j) + 1;
      bool event = events.count(j) > 0;
      if (grew != event) report.violations.push_back({l, j, grew, event});
    }
    ++report.steps_checked;
  }
  return report;
}

bool condition_class(const ExposureTrace& trace, const Tableau& H, int l,
                     const PrecisionPolicy& policy) {
  assert(l >= 1 && l <= trace.n);
  Partition Hl = sub_diagram_above(H, l);
  Partition Hl1 = sub_diagram_above(H, l - 1);
  if (!is_nested(Hl, Hl1)) return false;
  std::vector<int> S;  // growing columns, ascending
  for (int j = 1; j <= Hl1.part(0); ++j) {
    int diff = Hl1.column_length(j) - Hl.column_length(j);
    if (diff == 1)
      S.push_back(j);
    else if (diff != 0)
      return false;  // no single column grows by two in one step
  }
  PrecisionPolicy pol = policy;
  pol.start_e = std::max(pol.start_e, static_cast<int>(S.size()) + 2);
  if (!S.empty()) pol.start_e = std::max(pol.start_e, S.back() + 1);
  SaturationFrame frame = frame_at_step(trace, l, pol);
  IntVector y = frame.coords(trace.matrix.col(l - 1));

  if (membership_coords(frame, y, static_cast<int>(S.size()) + 1, kInfExp))
    return false;  // G_{|S|+1, inf} must fail
  for (int k = 1; k <= static_cast<int>(S.size()); ++k) {
    int j = S[k - 1], t = S[k - 1] - k;
    bool e = t == 0 ? membership_coords(frame, y, j, 0)
                    : membership_coords(frame, y, j - t, t) &&
                          !membership_coords(frame, y, j - t, t - 1);
    if (!e) return false;
  }
  return true;
}

}  // namespace cokernel
