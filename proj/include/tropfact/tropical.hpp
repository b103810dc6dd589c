#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tropfact/blades.hpp"
#include "tropfact/combinatorics.hpp"
#include "tropfact/rational.hpp"

namespace tropfact {

/// A point of the (k-1) x (n-k) grid, rows i = 1..k-1, columns j = 1..n-k.
struct GridVector {
  int k = 0;
  int n = 0;
  QVector entries;  // row-major

  GridVector() = default;
  GridVector(int k_, int n_) : k(k_), n(n_), entries(static_cast<std::size_t>((k_ - 1) * (n_ - k_))) {}

  int rows() const { return k - 1; }
  int cols() const { return n - k; }
  Rational& at(int i, int j) { return entries[static_cast<std::size_t>((i - 1) * cols() + (j - 1))]; }
  const Rational& at(int i, int j) const { return entries[static_cast<std::size_t>((i - 1) * cols() + (j - 1))]; }

  /// Representative with y_{i,1} = 0 for every row.
  GridVector gauge_fixed() const;

  GridVector& operator+=(const GridVector& o);
  GridVector& operator*=(const Rational& c);
  friend GridVector operator+(GridVector a, const GridVector& b) { return a += b; }
  friend GridVector operator*(const Rational& c, GridVector a) { return a *= c; }
  friend bool operator==(const GridVector&, const GridVector&) = default;
};

using Exponent = std::vector<std::uint8_t>;  // grid-indexed, row-major
using Polynomial = std::map<Exponent, Integer>;

struct CancellationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Entry m_{i,j} of the upper right block of the positive parametrization.
Polynomial parametrization_entry(int k, int n, int i, int j);

/// Exact expansion of the maximal minor p_J of the k x n parametrization.
/// Throws CancellationError unless every merged coefficient is +1, or every one is -1.
Polynomial minor_polynomial(int k, int n, const KSubset& j);

struct MonomialTable {
  int k = 0;
  int n = 0;
  std::vector<std::vector<Exponent>> monomials;  // by lexicographic subset index
  std::vector<int> sign;                         // common sign of p_J's coefficients
  std::vector<Integer> max_coefficient;          // largest |coefficient| in p_J
};

/// Built once per (k, n) and cached. Requires 2 <= k <= n-2.
const MonomialTable& monomial_table(int k, int n);

/// pi_J = min over monomials m of p_J of <m, y>.
HeightVector trop_plucker(const GridVector& y);

/// One three-term relation pi_{Lac} + pi_{Lbd} = min(pi_{Lab} + pi_{Lcd}, pi_{Lad} + pi_{Lbc}).
struct ThreeTermRelation {
  KSubset l;  // (k-2)-subset
  int a, b, c, d;
};

std::optional<ThreeTermRelation> first_violated_relation(const HeightVector& pi);
/// Subset indices of the six terms of every three-term relation at (k, n),
/// as (ac, bd, ab, cd, ad, bc). Cached.
struct RelationTerms {
  std::size_t ac, bd, ab, cd, ad, bc;
};
const std::vector<RelationTerms>& three_term_relations(int k, int n);

inline bool is_positive_tropical_plucker(const HeightVector& pi) { return !first_violated_relation(pi).has_value(); }

struct PositiveRoot {
  KSubset j;
  GridVector vector;
};

/// Row i is the indicator of [j_i - (i-1), j_{i+1} - i - 1]. Throws for frozen J.
PositiveRoot positive_root_vector(const KSubset& j);
Rational gamma_value(const KSubset& j, const GridVector& alpha);

/// sum_J c_J v_J over the planar-basis coefficients c of pi.
GridVector proj_rt(const HeightVector& pi);

}  // namespace tropfact
