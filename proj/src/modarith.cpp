#include "cokernel/modarith.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace cokernel {

namespace {

// Ring lanes for the SNF core. The word lane covers p^E < 2^63 (products via
// unsigned __int128); the big lane is the cpp_int fallback.
struct WordOps {
  using value_type = std::uint64_t;
  std::uint64_t m;
  long long p;
  int E;

  std::uint64_t reduce(const Int& x) const {
    return mod_canonical(x, Int(m)).convert_to<std::uint64_t>();
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + (m - b);
  }
  int val(std::uint64_t x) const {
    if (x == 0) return E;
    int v = 0;
    while (x % static_cast<std::uint64_t>(p) == 0) {
      x /= static_cast<std::uint64_t>(p);
      ++v;
    }
    return v;
  }
  std::uint64_t div_pow(std::uint64_t x, int d) const {
    for (int i = 0; i < d; ++i) x /= static_cast<std::uint64_t>(p);
    return x;
  }
  std::uint64_t inv_unit(std::uint64_t u) const {
    return inv_mod(Int(u), Int(m)).convert_to<std::uint64_t>();
  }
  std::uint64_t pow_p(int d) const {
    std::uint64_t r = 1;
    for (int i = 0; i < d; ++i) r *= static_cast<std::uint64_t>(p);
    return r;
  }
  Int to_int(std::uint64_t x) const { return Int(x); }
};

struct BigOps {
  using value_type = Int;
  Int m;
  long long p;
  int E;

  Int reduce(const Int& x) const { return mod_canonical(x, m); }
  Int mul(const Int& a, const Int& b) const { return a * b % m; }
  Int sub(const Int& a, const Int& b) const { return a >= b ? a - b : a + (m - b); }
  int val(const Int& x) const { return valuation_capped(x, p, E); }
  Int div_pow(Int x, int d) const {
    for (int i = 0; i < d; ++i) x /= p;
    return x;
  }
  Int inv_unit(const Int& u) const { return inv_mod(u, m); }
  Int pow_p(int d) const { return int_pow(p, d); }
  Int to_int(const Int& x) const { return x; }
};

template <class Ops>
struct CoreResult {
  std::vector<int> exps;
  std::vector<char> sat;
  Matrix<typename Ops::value_type> U, V;
};

template <class Ops>
CoreResult<Ops> snf_core(const IntMatrix& A, const Ops& R, bool transforms) {
  using T = typename Ops::value_type;
  const int r = static_cast<int>(A.rows()), c = static_cast<int>(A.cols());
  Matrix<T> M(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) M(i, j) = R.reduce(A(i, j));

  CoreResult<Ops> out;
  if (transforms) {
    out.U = Matrix<T>::Zero(r, r);
    out.V = Matrix<T>::Zero(c, c);
    for (int i = 0; i < r; ++i) out.U(i, i) = T(1);
    for (int j = 0; j < c; ++j) out.V(j, j) = T(1);
  }

  const int steps = std::min(r, c);
  int k = 0;
  int floor_d = 0;  // valuations never drop below the previous pivot's
  for (; k < steps; ++k) {
    int best_d = R.E + 1, bi = -1, bj = -1;
    for (int i = k; i < r && best_d > floor_d; ++i)
      for (int j = k; j < c; ++j) {
        int d = R.val(M(i, j));
        if (d < best_d) {
          best_d = d;
          bi = i;
          bj = j;
          if (d == floor_d) break;
        }
      }
    if (best_d >= R.E) break;  // all remaining entries vanish mod p^E
    floor_d = best_d;
    if (bi != k) {
      M.row(k).swap(M.row(bi));
      if (transforms) out.U.row(k).swap(out.U.row(bi));
    }
    if (bj != k) {
      M.col(k).swap(M.col(bj));
      if (transforms) out.V.col(k).swap(out.V.col(bj));
    }
    const int d = best_d;
    const T uinv = R.inv_unit(R.div_pow(M(k, k), d));
    for (int i = k + 1; i < r; ++i) {
      if (M(i, k) == T(0)) continue;
      T q = R.mul(R.div_pow(M(i, k), d), uinv);
      for (int j = k; j < c; ++j) M(i, j) = R.sub(M(i, j), R.mul(q, M(k, j)));
      if (transforms)
        for (int j = 0; j < r; ++j) out.U(i, j) = R.sub(out.U(i, j), R.mul(q, out.U(k, j)));
    }
    for (int j = c - 1; j > k; --j) {
      if (M(k, j) == T(0)) continue;
      T q = R.mul(R.div_pow(M(k, j), d), uinv);
      for (int i = k; i < r; ++i) M(i, j) = R.sub(M(i, j), R.mul(q, M(i, k)));
      if (transforms)
        for (int i = 0; i < c; ++i) out.V(i, j) = R.sub(out.V(i, j), R.mul(q, out.V(i, k)));
    }
    if (transforms) {
      // normalize the pivot to exactly p^d
      for (int j = 0; j < r; ++j) out.U(k, j) = R.mul(uinv, out.U(k, j));
      M(k, k) = R.pow_p(d);
    }
    out.exps.push_back(d);
    out.sat.push_back(0);
  }
  for (; k < steps; ++k) {
    out.exps.push_back(R.E);
    out.sat.push_back(1);
  }
  return out;
}

constexpr std::uint64_t kWordLimit = (std::uint64_t(1) << 62);

bool fits_word(long long p, int E) {
  unsigned __int128 m = 1;
  for (int i = 0; i < E; ++i) {
    m *= static_cast<unsigned __int128>(p);
    if (m >= kWordLimit) return false;
  }
  return true;
}

}  // namespace

SnfResult snf_mod_ppow(const IntMatrix& A, long long p, int E, bool want_transforms) {
  assert(E >= 1);
  SnfResult res;
  res.p = p;
  res.precision_e = E;
  if (A.rows() == 0 || A.cols() == 0) return res;
  if (fits_word(p, E)) {
    WordOps R{int_pow(p, E).convert_to<std::uint64_t>(), p, E};
    auto core = snf_core(A, R, want_transforms);
    res.exponents = std::move(core.exps);
    res.saturated = std::move(core.sat);
    if (want_transforms) {
      res.U = core.U.cast<Int>();
      res.V = core.V.cast<Int>();
    }
  } else {
    BigOps R{int_pow(p, E), p, E};
    auto core = snf_core(A, R, want_transforms);
    res.exponents = std::move(core.exps);
    res.saturated = std::move(core.sat);
    if (want_transforms) {
      res.U = std::move(core.U);
      res.V = std::move(core.V);
    }
  }
  return res;
}

int rank_mod_p(const IntMatrix& A, long long p) {
  const int r = static_cast<int>(A.rows()), c = static_cast<int>(A.cols());
  Matrix<std::uint64_t> M(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) M(i, j) = mod_canonical(A(i, j), Int(p)).convert_to<std::uint64_t>();
  const std::uint64_t up = static_cast<std::uint64_t>(p);
  int rank = 0;
  for (int col = 0; col < c && rank < r; ++col) {
    int piv = -1;
    for (int i = rank; i < r; ++i)
      if (M(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    M.row(rank).swap(M.row(piv));
    std::uint64_t inv = inv_mod(Int(M(rank, col)), Int(p)).convert_to<std::uint64_t>();
    for (int i = 0; i < r; ++i) {
      if (i == rank || M(i, col) == 0) continue;
      std::uint64_t f = (static_cast<unsigned __int128>(M(i, col)) * inv) % up;
      for (int j = col; j < c; ++j) {
        std::uint64_t sub = (static_cast<unsigned __int128>(f) * M(rank, j)) % up;
        M(i, j) = M(i, j) >= sub ? M(i, j) - sub : M(i, j) + (up - sub);
      }
    }
    ++rank;
  }
  return rank;
}

namespace {

// Fraction-free elimination (Bareiss) with full pivoting. Returns rank and,
// for square full-rank input, writes det = sign * last pivot.
int bareiss(IntMatrix M, Int* det_out) {
  const int r = static_cast<int>(M.rows()), c = static_cast<int>(M.cols());
  int sign = 1;
  Int prev = 1;
  int rank = 0;
  const int steps = std::min(r, c);
  for (int k = 0; k < steps; ++k) {
    int bi = -1, bj = -1;
    for (int i = k; i < r && bi < 0; ++i)
      for (int j = k; j < c; ++j)
        if (M(i, j) != 0) {
          bi = i;
          bj = j;
          break;
        }
    if (bi < 0) break;
    if (bi != k) {
      M.row(k).swap(M.row(bi));
      sign = -sign;
    }
    if (bj != k) {
      M.col(k).swap(M.col(bj));
      sign = -sign;
    }
    for (int i = k + 1; i < r; ++i) {
      for (int j = k + 1; j < c; ++j)
        M(i, j) = (M(k, k) * M(i, j) - M(i, k) * M(k, j)) / prev;
      M(i, k) = 0;
    }
    prev = M(k, k);
    ++rank;
  }
  if (det_out) *det_out = (rank == r && r == c) ? Int(sign) * prev : Int(0);
  return rank;
}

}  // namespace

int exact_rank(const IntMatrix& A) { return bareiss(A, nullptr); }

Int exact_det(const IntMatrix& A) {
  assert(A.rows() == A.cols());
  Int d;
  bareiss(A, &d);
  return d;
}

CokernelPartition cokernel_partition(const IntMatrix& A, long long p,
                                     const PrecisionPolicy& policy) {
  assert(policy.start_e >= 2);
  const int rows = static_cast<int>(A.rows());
  std::optional<int> rank;  // exact rank, computed at most once
  for (int E = policy.start_e;; E *= 2) {
    if (E > policy.max_e)
      throw PrecisionCeiling("cokernel_partition: unresolved exponents past E = " +
                             std::to_string(policy.max_e));
    SnfResult snf = snf_mod_ppow(A, p, E);
    int unsat = 0;
    bool boundary = false;
    for (size_t i = 0; i < snf.exponents.size(); ++i) {
      if (!snf.saturated[i]) {
        ++unsat;
        boundary = boundary || snf.exponents[i] == E - 1;
      }
    }
    if (boundary) continue;
    const bool any_sat = unsat < static_cast<int>(snf.exponents.size());
    if (any_sat) {
      if (!rank) rank = exact_rank(A);
      if (*rank != unsat) continue;  // torsion hiding at or above p^E
    }
    CokernelPartition out;
    out.free_rank = rows - unsat;
    std::vector<int> parts;
    for (size_t i = 0; i < snf.exponents.size(); ++i)
      if (!snf.saturated[i] && snf.exponents[i] > 0) parts.push_back(snf.exponents[i]);
    std::sort(parts.begin(), parts.end(), std::greater<int>());
    out.torsion = Partition(std::move(parts));
    return out;
  }
}

CokernelClass cokernel_class(const IntMatrix& A, const RingSpec& ring,
                             const PrecisionPolicy& policy) {
  CokernelClass out;
  for (auto [p, e] : ring.factors) {
    CokernelPartition cp = cokernel_partition(A, p, policy);
    if (ring.padic) {
      if (cp.free_rank > 0) {
        out.infinite = true;
        return out;
      }
      if (cp.torsion.rows() > 0) out.cls.components[p] = cp.torsion;
    } else {
      std::vector<int> parts;
      for (int part : cp.torsion.parts) parts.push_back(std::min(part, e));
      for (int i = 0; i < cp.free_rank; ++i) parts.push_back(e);
      std::sort(parts.begin(), parts.end(), std::greater<int>());
      Partition lam(std::move(parts));
      if (lam.rows() > 0) out.cls.components[p] = lam;
    }
  }
  return out;
}

IntVector SaturationFrame::coords(const IntVector& x) const {
  assert(x.size() == U.cols());
  IntVector y = U * x;
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = mod_canonical(y(i), modulus);
  return y;
}

SaturationFrame saturation_profile(const IntMatrix& basis, long long p, int E) {
  const int n = static_cast<int>(basis.rows());
  SaturationFrame f;
  f.p = p;
  f.precision_e = E;
  f.modulus = int_pow(p, E);
  f.coord_exp.assign(n, kInfExp);
  if (basis.cols() == 0) {
    f.U = IntMatrix::Identity(n, n);
    f.rank = 0;
    return f;
  }
  SnfResult snf = snf_mod_ppow(basis, p, E, /*want_transforms=*/true);
  int unsat = 0;
  for (size_t i = 0; i < snf.exponents.size(); ++i)
    if (!snf.saturated[i]) {
      f.coord_exp[i] = snf.exponents[i];
      ++unsat;
    }
  f.rank = exact_rank(basis);
  if (f.rank != unsat)
    throw PrecisionTooLow("saturation_profile: torsion at or above p^" +
                          std::to_string(E) + "; escalate precision");
  f.U = std::move(*snf.U);
  return f;
}

SaturationFrame saturation_profile_auto(const IntMatrix& basis, long long p,
                                        const PrecisionPolicy& policy) {
  for (int E = policy.start_e;; E *= 2) {
    if (E > policy.max_e)
      throw PrecisionCeiling("saturation_profile_auto: unresolved past E = " +
                             std::to_string(policy.max_e));
    try {
      return saturation_profile(basis, p, E);
    } catch (const PrecisionTooLow&) {
      continue;
    }
  }
}

std::vector<int> gcd_minors_snf_oracle(const IntMatrix& A, long long p) {
  const int r = static_cast<int>(A.rows()), c = static_cast<int>(A.cols());
  const int m = std::min(r, c);
  if (m > 5) throw TooLarge("gcd_minors_snf_oracle: guard is min dimension <= 5");
  std::vector<int> exps;
  long long prev_v = 0;
  bool dead = false;
  for (int k = 1; k <= m; ++k) {
    Int g = 0;
    if (!dead) {
      std::vector<int> ri(k), cj(k);
      std::iota(ri.begin(), ri.end(), 0);
      // iterate over all k-subsets of rows and of columns
      auto next_subset = [](std::vector<int>& s, int n) {
        int k2 = static_cast<int>(s.size());
        int i = k2 - 1;
        while (i >= 0 && s[i] == n - k2 + i) --i;
        if (i < 0) return false;
        ++s[i];
        for (int j = i + 1; j < k2; ++j) s[j] = s[j - 1] + 1;
        return true;
      };
      do {
        std::iota(cj.begin(), cj.end(), 0);
        do {
          IntMatrix sub(k, k);
          for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub(i, j) = A(ri[i], cj[j]);
          g = gcd(g, exact_det(sub));
        } while (next_subset(cj, c));
      } while (next_subset(ri, r));
    }
    if (g == 0) {
      dead = true;
      exps.push_back(kInfExp);
    } else {
      long long v = valuation_capped(g, p, 1 << 20);
      exps.push_back(static_cast<int>(v - prev_v));
      prev_v = v;
    }
  }
  return exps;
}

}  // namespace cokernel
