#include "cokernel/partitions.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace cokernel {

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] <= 0) throw std::invalid_argument("Partition: parts must be positive");
    if (i > 0 && parts[i] > parts[i - 1])
      throw std::invalid_argument("Partition: parts must be weakly decreasing");
  }
}

long long Partition::boxes() const {
  return std::accumulate(parts.begin(), parts.end(), 0LL);
}

int Partition::column_length(int j) const {
  int c = 0;
  for (int p : parts)
    if (p >= j) ++c;
  return c;
}

const Partition& ModuleClass::at(long long p) const {
  static const Partition empty;
  auto it = components.find(p);
  return it == components.end() ? empty : it->second;
}

Partition conjugate(const Partition& lam) {
  std::vector<int> out;
  for (int j = 1; j <= lam.part(0); ++j) out.push_back(lam.column_length(j));
  return Partition(std::move(out));
}

long long weight(const Partition& lam) {
  long long w = 0;
  for (int j = 1; j <= lam.part(0); ++j) {
    long long c = lam.column_length(j);
    w += c * (c + 1) / 2;
  }
  return w;
}

Partition cap(const Partition& lam, int e) {
  assert(e >= 1);
  std::vector<int> out;
  for (int p : lam.parts) out.push_back(std::min(p, e));
  return Partition(std::move(out));
}

bool is_nested(const Partition& mu, const Partition& lam) {
  for (int i = 0; i < mu.rows(); ++i)
    if (mu.part(i) > lam.part(i)) return false;
  return true;
}

bool is_semistandard(const Tableau& t) {
  const auto& L = t.labels;
  if (static_cast<int>(L.size()) != t.shape.rows()) return false;
  for (int i = 0; i < t.shape.rows(); ++i) {
    if (static_cast<int>(L[i].size()) != t.shape.part(i)) return false;
    for (int j = 0; j + 1 < static_cast<int>(L[i].size()); ++j)
      if (L[i][j] < L[i][j + 1]) return false;  // rows weakly decrease
    if (i > 0)
      for (int j = 0; j < static_cast<int>(L[i].size()); ++j)
        if (L[i - 1][j] <= L[i][j]) return false;  // columns strictly decrease
  }
  return true;
}

Tableau tableau_from_chain(const std::vector<Partition>& chain) {
  if (chain.empty()) throw std::invalid_argument("tableau_from_chain: empty chain");
  const int n = static_cast<int>(chain.size()) - 1;
  if (chain[n].rows() != 0)
    throw std::invalid_argument("tableau_from_chain: chain[n] must be empty");
  for (int l = n; l >= 1; --l) {
    if (!is_nested(chain[l], chain[l - 1]))
      throw ChainNotNested("tableau_from_chain: chain[" + std::to_string(l) +
                           "] not contained in chain[" + std::to_string(l - 1) + "]");
    int jmax = chain[l - 1].part(0);
    for (int j = 1; j <= jmax; ++j)
      if (chain[l - 1].column_length(j) > chain[l].column_length(j) + 1)
        throw ColumnJump("tableau_from_chain: column " + std::to_string(j) +
                         " grows by more than one at step " + std::to_string(l));
  }
  Tableau t;
  t.shape = chain[0];
  t.labels.resize(t.shape.rows());
  for (int i = 0; i < t.shape.rows(); ++i) {
    t.labels[i].resize(t.shape.parts[i]);
    for (int j = 0; j < t.shape.parts[i]; ++j) {
      int label = 0;
      for (int l = n; l >= 1; --l)
        if (chain[l].part(i) > j) {
          label = l;
          break;
        }
      t.labels[i][j] = label;
    }
  }
  assert(is_semistandard(t));
  return t;
}

Partition sub_diagram_above(const Tableau& t, int l) {
  std::vector<int> parts;
  for (int i = 0; i < t.shape.rows(); ++i) {
    int len = 0;
    // rows weakly decrease, so the boxes with label >= l form a prefix
    while (len < t.shape.parts[i] && t.labels[i][len] >= l) ++len;
    if (len > 0) parts.push_back(len);
  }
  return Partition(std::move(parts));
}

Int count_ssyt(const Partition& lam, int n) {
  if (lam.rows() > n) return 0;
  Partition conj = conjugate(lam);
  Int num = 1, den = 1;
  for (int i = 1; i <= lam.rows(); ++i) {
    for (int j = 1; j <= lam.parts[i - 1]; ++j) {
      // content j - i, hook = arm + leg + 1
      num *= n + j - i;
      den *= (lam.parts[i - 1] - j) + (conj.parts[j - 1] - i) + 1;
    }
  }
  assert(num % den == 0);
  return num / den;
}

namespace {

void fill_ssyt(const Partition& lam, int n, std::vector<std::vector<int>>& labels,
               int i, int j, std::vector<Tableau>& out) {
  if (i == lam.rows()) {
    out.push_back(Tableau{lam, labels});
    return;
  }
  int ni = i, nj = j + 1;
  if (nj == lam.parts[i]) {
    ni = i + 1;
    nj = 0;
  }
  int hi = n;
  if (j > 0) hi = std::min(hi, labels[i][j - 1]);          // weak decrease along row
  if (i > 0 && j < lam.parts[i - 1]) hi = std::min(hi, labels[i - 1][j] - 1);  // strict down column
  for (int v = hi; v >= 1; --v) {
    labels[i][j] = v;
    fill_ssyt(lam, n, labels, ni, nj, out);
  }
}

}  // namespace

std::vector<Tableau> enumerate_ssyt(const Partition& lam, int n) {
  if (lam.boxes() > 12 || n > 8)
    throw TooLarge("enumerate_ssyt: guard is |lam| <= 12, n <= 8");
  std::vector<Tableau> out;
  if (lam.rows() == 0) {
    out.push_back(Tableau{lam, {}});
    return out;
  }
  std::vector<std::vector<int>> labels(lam.rows());
  for (int i = 0; i < lam.rows(); ++i) labels[i].resize(lam.parts[i]);
  fill_ssyt(lam, n, labels, 0, 0, out);
  return out;
}

std::string to_string(const Partition& lam) {
  if (lam.rows() == 0) return "0";
  std::string s;
  for (int i = 0; i < lam.rows(); ++i) {
    if (i) s += ',';
    s += std::to_string(lam.parts[i]);
  }
  return s;
}

Partition parse_partition(const std::string& s) {
  if (s.empty() || s == "0") return Partition();
  std::vector<int> parts;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) parts.push_back(std::stoi(tok));
  return Partition(std::move(parts));
}

std::string to_string(const ModuleClass& cls) {
  if (cls.trivial()) return "0";
  std::string s;
  for (const auto& [p, lam] : cls.components) {
    if (!s.empty()) s += ';';
    s += std::to_string(p) + ":" + to_string(lam);
  }
  return s;
}

ModuleClass parse_module_class(const std::string& s) {
  ModuleClass cls;
  if (s.empty() || s == "0") return cls;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    auto pos = item.find(':');
    if (pos == std::string::npos)
      throw std::invalid_argument("parse_module_class: expected p:parts, got " + item);
    long long p = std::stoll(item.substr(0, pos));
    Partition lam = parse_partition(item.substr(pos + 1));
    if (lam.rows() > 0) cls.components[p] = std::move(lam);
  }
  return cls;
}

}  // namespace cokernel
