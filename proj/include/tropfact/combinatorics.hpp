#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tropfact {

/// A k-element subset of {1..n}, n <= 63, stored as a bitmask (bit i-1 <-> element i).
class KSubset {
 public:
  KSubset() = default;
  KSubset(int n, std::uint64_t bits);
  KSubset(int n, const std::vector<int>& elements);
  KSubset(int n, std::initializer_list<int> elements) : KSubset(n, std::vector<int>(elements)) {}

  int n() const { return n_; }
  int k() const;
  std::uint64_t bits() const { return bits_; }
  bool contains(int i) const { return (bits_ >> (i - 1)) & 1U; }
  std::vector<int> elements() const;

  /// A single cyclic interval {j, j+1, ..., j+k-1}.
  bool is_frozen() const;

  std::string to_string() const;

  friend bool operator==(const KSubset&, const KSubset&) = default;
  /// Lexicographic on the sorted element lists.
  friend std::strong_ordering operator<=>(const KSubset& a, const KSubset& b);

 private:
  int n_ = 0;
  std::uint64_t bits_ = 0;
};

inline int cyc(int i, int n) { return ((i - 1) % n + n) % n + 1; }

/// All k-subsets of {1..n} in lexicographic order.
std::vector<KSubset> enumerate_subsets(int k, int n);
/// The C(n,k) - n nonfrozen k-subsets, lexicographic.
std::vector<KSubset> enumerate_nonfrozen(int k, int n);
/// The n frozen subsets {j..j+k-1}, j = 1..n.
std::vector<KSubset> frozen_subsets(int k, int n);

/// Maps the k-subsets of {1..n} to their position in lexicographic order.
class SubsetIndex {
 public:
  SubsetIndex(int k, int n);
  int k() const { return k_; }
  int n() const { return n_; }
  std::size_t size() const { return subsets_.size(); }
  const std::vector<KSubset>& subsets() const { return subsets_; }
  const KSubset& operator[](std::size_t i) const { return subsets_[i]; }
  std::size_t index_of(const KSubset& j) const;

 private:
  int k_, n_;
  std::vector<KSubset> subsets_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

struct DospBlock {
  std::vector<int> elements;  // in cyclic reading order when the block is a cyclic interval
  int r = 0;
  friend bool operator==(const DospBlock&, const DospBlock&) = default;
};

/// Decorated ordered set partition ((S_1)_{r_1}, ..., (S_d)_{r_d}) of ({1..n}, k).
class Dosp {
 public:
  Dosp() = default;
  Dosp(int n, std::vector<DospBlock> blocks);

  int n() const { return n_; }
  int k() const;
  std::size_t size() const { return blocks_.size(); }
  const std::vector<DospBlock>& blocks() const { return blocks_; }
  const DospBlock& block(std::size_t j) const { return blocks_[j]; }
  std::uint64_t block_mask(std::size_t j) const;

  /// 1 <= r_j <= |S_j| - 1 for every block.
  bool is_type_delta() const;
  /// Rotated so the block containing 1 comes first; blocks that are cyclic
  /// intervals are listed in cyclic reading order.
  Dosp canonical() const;
  bool is_degenerate() const { return blocks_.size() <= 1; }

  /// e.g. "(712_1 34_1 56_1)"; elements >= 10 are comma separated.
  std::string to_string() const;

  /// Equality of the canonical forms (same blocks as sets, same decorations, same cyclic order).
  bool same_as(const Dosp& other) const;

  friend bool operator==(const Dosp&, const Dosp&) = default;

 private:
  int n_ = 0;
  std::vector<DospBlock> blocks_;
};

/// Parses "12_1|345_1" or "7,1,2_1|3,4_1". Throws std::invalid_argument.
Dosp parse_dosp(const std::string& text, int n);

/// Orders a cyclic interval of {1..n} in cyclic reading order; throws if not an interval.
std::vector<int> cyclic_interval_order(std::vector<int> elements, int n);
bool is_cyclic_interval(std::uint64_t bits, int n);

struct CyclicDecomposition {
  std::vector<std::vector<int>> intervals;  // J_1..J_d, 1 in J_1 when 1 in J
  std::vector<std::vector<int>> gaps;       // C_1..C_d, C_j immediately precedes J_j
};

CyclicDecomposition cyclic_decomposition(const KSubset& j);

/// Blocks S_j = C_j u J_j with decoration |J_j|, canonically rotated. Frozen
/// input yields the single block ((1..n)_k).
Dosp dosp_of_subset(const KSubset& j);

struct NotInImage : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Inverse of dosp_of_subset; throws NotInImage when d has no preimage.
KSubset subset_of_dosp(const Dosp& d);

/// No cyclic a<b<c<d with e_I - e_J = +,-,+,- at those positions.
bool is_weakly_separated(const KSubset& i, const KSubset& j);
bool is_noncrossing(const KSubset& i, const KSubset& j);

struct Graph {
  std::size_t nodes = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j, sorted
  bool is_complete() const { return edges.size() == nodes * (nodes - 1) / 2; }
  std::string to_dot(const std::vector<std::string>& labels, const std::string& name = "G") const;
};

/// Edge (i, j) iff collection[i] and collection[j] are not weakly separated.
Graph incompatibility_graph(const std::vector<KSubset>& collection);

}  // namespace tropfact
