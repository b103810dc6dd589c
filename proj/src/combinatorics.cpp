#include "tropfact/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace tropfact {

namespace {

std::uint64_t full_mask(int n) { return n >= 64 ? ~0ULL : ((1ULL << n) - 1); }

std::uint64_t mask_of(const std::vector<int>& elems, int n) {
  std::uint64_t b = 0;
  for (int e : elems) {
    if (e < 1 || e > n) throw std::invalid_argument("element out of range 1.." + std::to_string(n));
    if ((b >> (e - 1)) & 1U) throw std::invalid_argument("repeated element " + std::to_string(e));
    b |= 1ULL << (e - 1);
  }
  return b;
}

std::string join_elements(const std::vector<int>& elems, int n) {
  std::string s;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (n >= 10 && i > 0) s += ',';
    s += std::to_string(elems[i]);
  }
  return s;
}

}  // namespace

KSubset::KSubset(int n, std::uint64_t bits) : n_(n), bits_(bits) {
  if (n < 1 || n > 63) throw std::invalid_argument("KSubset: n out of range");
  if (bits & ~full_mask(n)) throw std::invalid_argument("KSubset: element out of range");
}

KSubset::KSubset(int n, const std::vector<int>& elements) : KSubset(n, mask_of(elements, n)) {}

int KSubset::k() const { return std::popcount(bits_); }

std::vector<int> KSubset::elements() const {
  std::vector<int> out;
  for (int i = 1; i <= n_; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

bool KSubset::is_frozen() const { return is_cyclic_interval(bits_, n_); }

std::string KSubset::to_string() const { return "{" + join_elements(elements(), 63) + "}"; }

std::strong_ordering operator<=>(const KSubset& a, const KSubset& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  auto ea = a.elements(), eb = b.elements();
  return std::lexicographical_compare_three_way(ea.begin(), ea.end(), eb.begin(), eb.end());
}

bool is_cyclic_interval(std::uint64_t bits, int n) {
  if (bits == 0 || bits == full_mask(n)) return bits != 0;
  // count starts: positions i in the set whose cyclic predecessor is not
  int starts = 0;
  for (int i = 1; i <= n; ++i) {
    int p = cyc(i - 1, n);
    if (((bits >> (i - 1)) & 1U) && !((bits >> (p - 1)) & 1U)) ++starts;
  }
  return starts == 1;
}

std::vector<int> cyclic_interval_order(std::vector<int> elements, int n) {
  std::uint64_t bits = mask_of(elements, n);
  if (!is_cyclic_interval(bits, n)) throw std::invalid_argument("not a cyclic interval");
  if (bits == full_mask(n)) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 1);
    return all;
  }
  int start = 1;
  for (int i = 1; i <= n; ++i) {
    int p = cyc(i - 1, n);
    if (((bits >> (i - 1)) & 1U) && !((bits >> (p - 1)) & 1U)) start = i;
  }
  std::vector<int> out;
  for (int t = 0; t < static_cast<int>(elements.size()); ++t) out.push_back(cyc(start + t, n));
  return out;
}

std::vector<KSubset> enumerate_subsets(int k, int n) {
  std::vector<KSubset> out;
  if (k < 0 || k > n) return out;
  std::vector<int> c(k);
  std::iota(c.begin(), c.end(), 1);
  while (true) {
    out.emplace_back(n, c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

std::vector<KSubset> enumerate_nonfrozen(int k, int n) {
  auto all = enumerate_subsets(k, n);
  std::erase_if(all, [](const KSubset& s) { return s.is_frozen(); });
  return all;
}

std::vector<KSubset> frozen_subsets(int k, int n) {
  std::vector<KSubset> out;
  for (int j = 1; j <= n; ++j) {
    std::vector<int> e;
    for (int t = 0; t < k; ++t) e.push_back(cyc(j + t, n));
    out.emplace_back(n, e);
  }
  return out;
}

SubsetIndex::SubsetIndex(int k, int n) : k_(k), n_(n), subsets_(enumerate_subsets(k, n)) {
  for (std::size_t i = 0; i < subsets_.size(); ++i) index_.emplace(subsets_[i].bits(), i);
}

std::size_t SubsetIndex::index_of(const KSubset& j) const {
  auto it = index_.find(j.bits());
  if (j.n() != n_ || it == index_.end()) throw std::out_of_range("subset " + j.to_string() + " not indexed");
  return it->second;
}

Dosp::Dosp(int n, std::vector<DospBlock> blocks) : n_(n), blocks_(std::move(blocks)) {
  std::uint64_t seen = 0;
  for (const auto& b : blocks_) {
    if (b.elements.empty()) throw std::invalid_argument("Dosp: empty block");
    if (b.r < 1) throw std::invalid_argument("Dosp: decorations must be positive");
    std::uint64_t m = mask_of(b.elements, n);
    if (seen & m) throw std::invalid_argument("Dosp: blocks overlap");
    seen |= m;
  }
  if (seen != full_mask(n)) throw std::invalid_argument("Dosp: blocks do not cover 1..n");
}

int Dosp::k() const {
  int k = 0;
  for (const auto& b : blocks_) k += b.r;
  return k;
}

std::uint64_t Dosp::block_mask(std::size_t j) const { return mask_of(blocks_[j].elements, n_); }

bool Dosp::is_type_delta() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const DospBlock& b) {
    return b.r >= 1 && b.r <= static_cast<int>(b.elements.size()) - 1;
  });
}

Dosp Dosp::canonical() const {
  std::vector<DospBlock> out = blocks_;
  for (auto& b : out) {
    std::uint64_t m = mask_of(b.elements, n_);
    if (is_cyclic_interval(m, n_))
      b.elements = cyclic_interval_order(b.elements, n_);
    else
      std::sort(b.elements.begin(), b.elements.end());
  }
  auto first = std::find_if(out.begin(), out.end(), [](const DospBlock& b) {
    return std::find(b.elements.begin(), b.elements.end(), 1) != b.elements.end();
  });
  std::rotate(out.begin(), first, out.end());
  Dosp d;
  d.n_ = n_;
  d.blocks_ = std::move(out);
  return d;
}

bool Dosp::same_as(const Dosp& other) const { return n_ == other.n_ && canonical() == other.canonical(); }

std::string Dosp::to_string() const {
  std::string s = "(";
  for (std::size_t j = 0; j < blocks_.size(); ++j) {
    if (j) s += ' ';
    s += join_elements(blocks_[j].elements, n_) + "_" + std::to_string(blocks_[j].r);
  }
  return s + ")";
}

Dosp parse_dosp(const std::string& text, int n) {
  std::vector<DospBlock> blocks;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '|')) {
    std::erase_if(part, [](char c) { return c == ' ' || c == '(' || c == ')'; });
    auto us = part.find('_');
    if (us == std::string::npos) throw std::invalid_argument("DOSP block '" + part + "' lacks _r");
    std::string elems = part.substr(0, us);
    DospBlock b;
    try {
      b.r = std::stoi(part.substr(us + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("DOSP block '" + part + "': bad decoration");
    }
    if (elems.find(',') != std::string::npos) {
      std::stringstream es(elems);
      std::string tok;
      while (std::getline(es, tok, ',')) b.elements.push_back(std::stoi(tok));
    } else {
      for (char c : elems) {
        if (c < '0' || c > '9') throw std::invalid_argument("DOSP block '" + part + "': bad element");
        b.elements.push_back(c - '0');
      }
    }
    blocks.push_back(std::move(b));
  }
  if (blocks.empty()) throw std::invalid_argument("empty DOSP");
  return Dosp(n, std::move(blocks));
}

CyclicDecomposition cyclic_decomposition(const KSubset& j) {
  const int n = j.n();
  CyclicDecomposition out;
  if (j.bits() == 0 || j.bits() == full_mask(n)) return out;
  // start at the first element of an interval; prefer the interval containing 1
  int start = -1;
  for (int i = 1; i <= n; ++i) {
    if (j.contains(i) && !j.contains(cyc(i - 1, n))) {
      start = i;
      break;
    }
  }
  if (j.contains(1)) {
    int s = 1;
    while (j.contains(cyc(s - 1, n))) s = cyc(s - 1, n);
    start = s;
  }
  // walk the cycle from start; each interval J_t is preceded by its gap C_t
  int pos = start;
  std::vector<int> run_ones;
  std::vector<std::vector<int>> ones, zeros;
  std::vector<int> run_zeros;
  for (int t = 0; t < n; ++t, pos = cyc(pos + 1, n)) {
    if (j.contains(pos)) {
      if (!run_zeros.empty()) {
        zeros.push_back(run_zeros);
        run_zeros.clear();
      }
      run_ones.push_back(pos);
    } else {
      if (!run_ones.empty()) {
        ones.push_back(run_ones);
        run_ones.clear();
      }
      run_zeros.push_back(pos);
    }
  }
  if (!run_ones.empty()) ones.push_back(run_ones);
  if (!run_zeros.empty()) zeros.push_back(run_zeros);
  // zeros[t] follows ones[t]; the gap preceding ones[t] is zeros[t-1 mod d]
  const std::size_t d = ones.size();
  out.intervals = ones;
  out.gaps.resize(d);
  for (std::size_t t = 0; t < d; ++t) out.gaps[t] = zeros[(t + d - 1) % d];
  return out;
}

Dosp dosp_of_subset(const KSubset& j) {
  const int n = j.n();
  auto dec = cyclic_decomposition(j);
  std::vector<DospBlock> blocks;
  if (dec.intervals.size() <= 1) {
    DospBlock b;
    b.elements.resize(n);
    std::iota(b.elements.begin(), b.elements.end(), 1);
    b.r = j.k();
    blocks.push_back(std::move(b));
    return Dosp(n, std::move(blocks));
  }
  for (std::size_t t = 0; t < dec.intervals.size(); ++t) {
    DospBlock b;
    b.elements = dec.gaps[t];
    b.elements.insert(b.elements.end(), dec.intervals[t].begin(), dec.intervals[t].end());
    b.r = static_cast<int>(dec.intervals[t].size());
    blocks.push_back(std::move(b));
  }
  return Dosp(n, std::move(blocks)).canonical();
}

KSubset subset_of_dosp(const Dosp& d) {
  const int n = d.n();
  if (d.size() < 2) throw NotInImage("single-block DOSP has no nonfrozen preimage");
  if (!d.is_type_delta()) throw NotInImage("DOSP " + d.to_string() + " is not of type Delta");
  Dosp c = d.canonical();
  std::vector<int> elems;
  for (std::size_t t = 0; t < c.size(); ++t) {
    const auto& b = c.block(t);
    if (!is_cyclic_interval(c.block_mask(t), n))
      throw NotInImage("block of " + d.to_string() + " is not a cyclic interval");
    // consecutive blocks must be adjacent in the cyclic order
    int last = b.elements.back();
    int next_first = c.block((t + 1) % c.size()).elements.front();
    if (cyc(last + 1, n) != next_first) throw NotInImage("blocks of " + d.to_string() + " are not in cyclic order");
    elems.insert(elems.end(), b.elements.end() - b.r, b.elements.end());
  }
  KSubset j(n, elems);
  if (!dosp_of_subset(j).same_as(c)) throw NotInImage("DOSP " + d.to_string() + " not in bijection image");
  return j;
}

bool is_weakly_separated(const KSubset& i, const KSubset& j) {
  if (i.n() != j.n()) throw std::invalid_argument("is_weakly_separated: n mismatch");
  int first = 0, prev = 0, changes = 0;
  for (int p = 1; p <= i.n(); ++p) {
    int s = int(i.contains(p)) - int(j.contains(p));
    if (s == 0) continue;
    if (first == 0) first = s;
    else if (s != prev) ++changes;
    prev = s;
  }
  if (first != 0 && prev != first) ++changes;
  return changes <= 2;
}

bool is_noncrossing(const KSubset& i, const KSubset& j) {
  if (i.n() != j.n() || i.k() != j.k()) throw std::invalid_argument("is_noncrossing: shape mismatch");
  auto ei = i.elements(), ej = j.elements();
  const int k = static_cast<int>(ei.size());
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      std::vector<int> si(ei.begin() + a, ei.begin() + b + 1), sj(ej.begin() + a, ej.begin() + b + 1);
      if (is_weakly_separated(KSubset(i.n(), si), KSubset(i.n(), sj))) continue;
      bool interiors_equal = std::equal(ei.begin() + a + 1, ei.begin() + b, ej.begin() + a + 1);
      if (interiors_equal) return false;
    }
  }
  return true;
}

Graph incompatibility_graph(const std::vector<KSubset>& collection) {
  Graph g;
  g.nodes = collection.size();
  for (std::size_t a = 0; a < collection.size(); ++a)
    for (std::size_t b = a + 1; b < collection.size(); ++b)
      if (!is_weakly_separated(collection[a], collection[b])) g.edges.emplace_back(a, b);
  return g;
}

std::string Graph::to_dot(const std::vector<std::string>& labels, const std::string& name) const {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (std::size_t v = 0; v < nodes; ++v)
    os << "  n" << v << " [label=\"" << (v < labels.size() ? labels[v] : std::to_string(v)) << "\"];\n";
  for (auto [a, b] : edges) os << "  n" << a << " -- n" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace tropfact
