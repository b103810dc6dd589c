#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "tropfact/combinatorics.hpp"
#include "tropfact/linalg.hpp"
#include "tropfact/rational.hpp"

namespace tropfact {

/// A vector in R^{C(n,k)} indexed by k-subsets in lexicographic order.
struct HeightVector {
  int k = 0;
  int n = 0;
  QVector coeffs;

  HeightVector() = default;
  HeightVector(int k_, int n_);
  HeightVector(int k_, int n_, QVector c) : k(k_), n(n_), coeffs(std::move(c)) {}

  HeightVector& operator+=(const HeightVector& o);
  HeightVector& operator-=(const HeightVector& o);
  HeightVector& operator*=(const Rational& c);
  friend HeightVector operator+(HeightVector a, const HeightVector& b) { return a += b; }
  friend HeightVector operator-(HeightVector a, const HeightVector& b) { return a -= b; }
  friend HeightVector operator*(const Rational& c, HeightVector a) { return a *= c; }
  friend bool operator==(const HeightVector&, const HeightVector&) = default;
};

/// A linear functional on kinematic space, stored as its canonical
/// representative modulo momentum conservation (see PlanarBasis::canonicalize).
struct KinematicForm {
  int k = 0;
  int n = 0;
  QVector coeffs;

  bool is_zero() const { return tropfact::is_zero(coeffs); }
  KinematicForm& operator+=(const KinematicForm& o);
  KinematicForm& operator*=(const Rational& c);
  friend KinematicForm operator+(KinematicForm a, const KinematicForm& b) { return a += b; }
  friend KinematicForm operator*(const Rational& c, KinematicForm a) { return a *= c; }
  friend bool operator==(const KinematicForm&, const KinematicForm&) = default;
};

/// L_j(x) = x_{j+1} + 2 x_{j+2} + ... + (n-1) x_{j-1}, cyclic indices, j in 1..n.
Rational cyclic_linear_form(int j, const QVector& x);

/// min_j L_j(x - e_J).
Rational rho_subset(const KSubset& j, const QVector& x);
/// min_j M_j(x), with M_j(x) = sum_{t=1}^{d-1} (x_{S_{j-1} u .. u S_{j-t}} - (r_{j-1}+..+r_{j-t})).
Rational rho_dosp(const Dosp& d, const QVector& x);
/// M_{(S,r)_j}(e_I) for the 0-based block rotation j; x_S evaluated as |I n S|.
int plate_form_at_vertex(const Dosp& d, std::size_t j, std::uint64_t vertex);

/// The planar basis at fixed (k, n): heights h_J of nonfrozen J, the
/// lineality generators, and the expansion solver. Built once, read-only.
class PlanarBasis {
 public:
  PlanarBasis(int k, int n);

  int k() const { return index_.k(); }
  int n() const { return index_.n(); }
  const SubsetIndex& index() const { return index_; }
  std::size_t dimension() const { return index_.size(); }
  const std::vector<KSubset>& nonfrozen() const { return nonfrozen_; }
  std::size_t nonfrozen_position(const KSubset& j) const;

  const HeightVector& height(const KSubset& j) const;
  HeightVector lineality_generator(int j) const;

  /// Adds a lineality vector so the coordinates on the pivot set vanish. The
  /// pivot set is the frozen subsets when they are independent for the
  /// lineality pairing, completed greedily in lexicographic order otherwise.
  KinematicForm canonicalize(const HeightVector& v) const;
  const std::vector<std::size_t>& pivot_coordinates() const { return pivots_; }
  bool frozen_pivots() const { return frozen_pivots_; }

  struct Expansion {
    QVector planar;     // coefficient per nonfrozen J (order of nonfrozen())
    QVector lineality;  // coefficient per generator j = 1..n
  };
  /// v = sum c_J h_J + sum l_j lin_j. Throws std::runtime_error if singular.
  Expansion expand(const HeightVector& v) const;
  HeightVector from_planar(const QVector& planar) const;

 private:
  const LinearSolver& solver() const;

  SubsetIndex index_;
  std::vector<KSubset> nonfrozen_;
  std::vector<std::size_t> nonfrozen_pos_;  // by subset index, SIZE_MAX if frozen
  std::vector<HeightVector> heights_;       // by subset index (zero-free for frozen: computed anyway)
  std::vector<std::size_t> pivots_;
  bool frozen_pivots_ = false;
  std::unique_ptr<LinearSolver> pivot_solver_;
  mutable std::once_flag solver_once_;
  mutable std::unique_ptr<LinearSolver> solver_;
};

/// Shared cache of planar bases, keyed by (k, n).
const PlanarBasis& planar_basis(int k, int n);

HeightVector height_of_subset(const KSubset& j);
HeightVector height_of_dosp(const Dosp& d);
KinematicForm eta_of_subset(const KSubset& j);
KinematicForm eta_of_dosp(const Dosp& d);
/// Canonical form of the functional s -> sum_J v_J s_J.
KinematicForm form_of(const HeightVector& v);

/// True iff sum_{J containing j} s_J = 0 for every j.
bool is_conserving(int k, int n, const QVector& s);
/// <v, s>; throws std::invalid_argument when s violates momentum conservation.
Rational pair(const HeightVector& v, const QVector& s);
/// Evaluates a form on a conserving kinematic point.
Rational evaluate(const KinematicForm& f, const QVector& s);

/// Writes f as sum_J c_J eta_J over nonfrozen J.
QVector planar_coordinates(const KinematicForm& f);

}  // namespace tropfact
