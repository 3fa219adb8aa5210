#pragma once

#include <utility>
#include <vector>

#include "cokernel/partitions.hpp"
#include "cokernel/types.hpp"

namespace cokernel {

// prod_{k=1}^{terms} (1 - p^{-k}); terms = -1 means the infinite product
// truncated so the geometric tail bound p^{-T}/(p-1) is below tol.
struct EulerProduct {
  long long p = 2;
  long long terms = -1;
  double value = 1.0;
};

EulerProduct euler_product(long long p, long long terms);
EulerProduct euler_product_inf(long long p, double tol);

// |Aut(+ Z/p^{lam_i})|, exact.
Int aut_order(long long p, const Partition& lam);

// Cohen-Lenstra measure (1/|Aut|) prod_{k>=1} (1 - p^{-k}), abs error < tol.
double cl_measure(long long p, const Partition& lam, double tol = 1e-12);

// Finite-n cokernel probability for a Haar-uniform matrix over Z_p:
// (1/|Aut G|) prod_{k=1}^n (1-p^{-k}) prod_{j=n-r+1}^n (1-p^{-j}),
// r = number of parts. Returns 0 when lam has more than n parts.
double fw_probability(long long p, int n, const Partition& lam);
Rat fw_probability_exact(long long p, int n, const Partition& lam);

// Limiting P(corank = k) for uniform matrices mod p, abs error < tol.
double corank_distribution(long long p, int k, double tol = 1e-9);

// P(coker B = G) for B uniform over Z/NZ, n x n: product over p^e || N of
// sums of fw_probability over Z_p-classes capping to G's p-component, each
// per-prime tail below tol / (number of prime factors).
// Throws InvalidClass if some part of G exceeds its e.
double uniform_reference(long long N, const ModuleClass& G, int n, double tol = 1e-9);

struct ReferenceDistribution {
  RingSpec ring;
  int n = 0;  // matrix size; 0 = asymptotic (Cohen-Lenstra)
  std::vector<std::pair<ModuleClass, double>> entries;
  double tail_mass = 0.0;
};

// All Z_p classes with |lam| <= max_weight, probabilities fw_probability
// (or cl_measure when n = 0); tail_mass is the remainder.
ReferenceDistribution reference_padic(long long p, int n, int max_weight,
                                      double tol = 1e-12);

// All Z/N classes with per-prime |mu| <= max_weight, probabilities from
// uniform_reference.
ReferenceDistribution reference_mod_n(long long N, int n, int max_weight,
                                      double tol = 1e-9);

// Partitions of 0..max_boxes (all shapes), in (boxes, lex) order.
std::vector<Partition> partitions_up_to(int max_boxes);

}  // namespace cokernel
