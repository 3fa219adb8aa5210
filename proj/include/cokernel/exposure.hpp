#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cokernel/modarith.hpp"
#include "cokernel/partitions.hpp"
#include "cokernel/types.hpp"

namespace cokernel {

// Index set F for the enlarged submodule phi_F(W) = intersection over
// (a, b) in F of p^a R^n + W[p^b]; b = kInfExp encodes W[infinity].
struct EnlargedIndexSet {
  std::vector<std::pair<int, int>> pairs;  // a >= 1, b >= 0 or kInfExp
};

// The column exposure record for one matrix at one prime. chain[s] = T_{n-s}
// (so chain front is T_n = empty and chain back is T_0); torsion_flags[s]
// marks X_{n-s} in W_{n-s}[infinity] at the step chain[s] -> chain[s+1].
// The tableau is present exactly when no flag fired (Cor. of the nesting
// property); labels are exposure indices l in [0, n-1].
struct ExposureTrace {
  long long p = 2;
  int n = 0;
  IntMatrix matrix;
  std::vector<Partition> chain;      // size n+1
  std::vector<char> torsion_flags;   // size n
  std::optional<Tableau> tableau;

  const Partition& partition_at(int l) const { return chain[n - l]; }  // T_l
  bool any_flag() const;
};

ExposureTrace run_exposure(const IntMatrix& A, long long p,
                           const PrecisionPolicy& policy = {});

// x in p^a R^n + W[p^b], evaluated in the saturation frame of W. In frame
// coordinates y = U x the test is y_i = 0 mod p^{min(a, max(d_i - b, 0))} on
// pivot coordinates and mod p^a on coordinates outside the rational span
// (for b = infinity the pivot coordinates are unconstrained).
bool membership_coords(const SaturationFrame& frame, const IntVector& y, int a, int b);
bool membership_enlarged(const IntVector& x, const IntMatrix& W_basis,
                         const EnlargedIndexSet& F, long long p, int E);

// For each j <= jmax the unique t with E_{j,t}, where E_{j,0} = G_{j,0} and
// E_{j,t} = G_{j-t,t} minus G_{j-t,t-1} (the events are pairwise disjoint).
std::map<int, int> detect_events(const SaturationFrame& W_frame, const IntVector& x,
                                 int jmax);

// W_l = span of columns l+1..n of the trace matrix (empty for l = n).
IntMatrix column_block(const IntMatrix& A, int l);
SaturationFrame frame_at_step(const ExposureTrace& trace, int l,
                              const PrecisionPolicy& policy = {});

struct RankEventReport {
  struct Violation {
    int l;       // exposure step (X_l against W_l)
    int j;       // column index tested
    bool grew;   // column j of the diagram grew at this step
    bool event;  // some E_{j,t} fired
  };
  std::vector<Violation> violations;
  int steps_checked = 0;
  int steps_skipped_flagged = 0;
};

// Checks [column j grew] <=> [union_t E_{j,t}] at every non-flagged step.
RankEventReport verify_rank_event_equivalence(const ExposureTrace& trace, int jmax,
                                              const PrecisionPolicy& policy = {});

// Event combination deciding whether exposing X_l extends sub-diagram H_l to
// H_{l-1}: with S = {j : c_j(H_{l-1}) = c_j(H_l) + 1} and eta enumerating S,
// (not G_{|S|+1,inf}) and all E_{eta(k),eta(k)-k}. Given T_j matches H_j for
// j >= l, this equals [T_{l-1} matches H_{l-1}].
bool condition_class(const ExposureTrace& trace, const Tableau& H, int l,
                     const PrecisionPolicy& policy = {});

// Default event depth: max part of the final diagram + 2.
int default_jmax(const ExposureTrace& trace);

}  // namespace cokernel
