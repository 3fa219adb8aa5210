#pragma once

#include <map>
#include <string>
#include <vector>

#include "cokernel/types.hpp"

namespace cokernel {

// Young diagram: weakly decreasing positive parts; empty = trivial group.
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  explicit Partition(std::vector<int> p);

  int rows() const { return static_cast<int>(parts.size()); }
  long long boxes() const;
  // Length of column j (1-based) = number of parts >= j.
  int column_length(int j) const;
  int part(int i) const { return i < rows() ? parts[i] : 0; }

  bool operator==(const Partition& o) const { return parts == o.parts; }
  bool operator!=(const Partition& o) const { return parts != o.parts; }
  bool operator<(const Partition& o) const { return parts < o.parts; }
};

// Numbering of a diagram; semi-standardness here follows the decreasing
// convention: weakly decreasing along rows, strictly decreasing down columns.
struct Tableau {
  Partition shape;
  std::vector<std::vector<int>> labels;  // labels[i][j], row-major, ragged
};

// Isomorphism class of a finite module: prime -> diagram, empties pruned.
struct ModuleClass {
  std::map<long long, Partition> components;

  bool trivial() const { return components.empty(); }
  const Partition& at(long long p) const;

  bool operator==(const ModuleClass& o) const { return components == o.components; }
  bool operator!=(const ModuleClass& o) const { return components != o.components; }
  bool operator<(const ModuleClass& o) const { return components < o.components; }
};

Partition conjugate(const Partition& lam);

// Entry sum of the minimum semi-standard tableau of shape lam,
// i.e. sum over columns of c_j(c_j + 1)/2.
long long weight(const Partition& lam);

// Clip every part at e (reduction of a Z_p-class mod p^e).
Partition cap(const Partition& lam, int e);

// mu_i <= lam_i for all i (diagram containment).
bool is_nested(const Partition& mu, const Partition& lam);

bool is_semistandard(const Tableau& t);

// chain[l] = T_l for l = 0..n, chain[n] empty, chain[l] nested in chain[l-1].
// Box label = largest l whose diagram contains it (exposure time); labels lie
// in [0, n-1]. Throws ChainNotNested / ColumnJump on invalid input.
Tableau tableau_from_chain(const std::vector<Partition>& chain);

// Boxes of t with label >= l, as a diagram.
Partition sub_diagram_above(const Tableau& t, int l);

// Number of semi-standard fillings of lam with letters from [n]
// (hook content formula; 0 if lam has more than n rows).
Int count_ssyt(const Partition& lam, int n);

// All semi-standard fillings with letters 1..n. Guarded to |lam| <= 12,
// n <= 8 (throws TooLarge); this is the counting oracle.
std::vector<Tableau> enumerate_ssyt(const Partition& lam, int n);

// "4,2,1"; empty partition is "0".
std::string to_string(const Partition& lam);
Partition parse_partition(const std::string& s);

// "2:2,1;3:1"; trivial class is "0".
std::string to_string(const ModuleClass& cls);
ModuleClass parse_module_class(const std::string& s);

}  // namespace cokernel
