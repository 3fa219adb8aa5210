#pragma once

#include <optional>
#include <vector>

#include "cokernel/partitions.hpp"
#include "cokernel/types.hpp"

namespace cokernel {

// Precision escalation for Z_p work on exact integer matrices: E doubles from
// start_e; past max_e a persistent ambiguity raises PrecisionCeiling.
struct PrecisionPolicy {
  int start_e = 16;
  int max_e = 1 << 16;
};

// Smith normal form over the local ring Z/p^E. exponents are the diagonal
// p-exponents d_1 <= d_2 <= ... (length min(rows, cols)); saturated[i] marks
// d_i >= E (zero at working precision). With transforms,
// U * A * V = diag(p^{d_i}) mod p^E and U, V are invertible mod p.
struct SnfResult {
  long long p = 2;
  int precision_e = 0;
  std::vector<int> exponents;
  std::vector<char> saturated;
  std::optional<IntMatrix> U, V;
};

SnfResult snf_mod_ppow(const IntMatrix& A, long long p, int E,
                       bool want_transforms = false);

// Isomorphism class of the p-primary part of coker(A) for an exact integer
// matrix: free rank (rows - rank over Q) plus the torsion partition.
// Precision escalates until every exponent is resolved; the free part is
// certified by exact fraction-free integer rank.
struct CokernelPartition {
  int free_rank = 0;
  Partition torsion;  // sorted decreasing
};

CokernelPartition cokernel_partition(const IntMatrix& A, long long p,
                                     const PrecisionPolicy& policy = {});

// coker(A) over the given ring. Over Z/N the class is always finite (free
// directions contribute parts of size e at each prime); over Z_p a positive
// free rank reports infinite = true.
struct CokernelClass {
  bool infinite = false;
  ModuleClass cls;
};

CokernelClass cokernel_class(const IntMatrix& A, const RingSpec& ring,
                             const PrecisionPolicy& policy = {});

// F_p-rank by elimination.
int rank_mod_p(const IntMatrix& A, long long p);

// Exact rank / determinant over Z (fraction-free Bareiss elimination).
int exact_rank(const IntMatrix& A);
Int exact_det(const IntMatrix& A);

// Coordinate frame of W = span(columns of basis) inside Z_p^n: y = U x puts
// W = { y : y_i = 0 mod p^{d_i} }, with coord_exp[i] = d_i and kInfExp on
// coordinates outside the rational span of W (certified by exact rank).
struct SaturationFrame {
  long long p = 2;
  int precision_e = 0;
  Int modulus;      // p^E
  IntMatrix U;      // n x n, unimodular mod p^E
  std::vector<int> coord_exp;  // size n, kInfExp = infinity
  int rank = 0;     // exact rank of the basis

  IntVector coords(const IntVector& x) const;  // U x mod p^E
};

SaturationFrame saturation_profile(const IntMatrix& basis, long long p, int E);
// Escalating variant: grows E past the policy start until all torsion
// exponents resolve below precision.
SaturationFrame saturation_profile_auto(const IntMatrix& basis, long long p,
                                        const PrecisionPolicy& policy = {});

// Test oracle: d_1 + ... + d_k = v_p(gcd of k x k minors). Entries of the
// output are kInfExp once the minors vanish identically. Guarded to
// min(rows, cols) <= 5.
std::vector<int> gcd_minors_snf_oracle(const IntMatrix& A, long long p);

}  // namespace cokernel
