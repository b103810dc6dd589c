#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "tropfact/cone.hpp"
#include "tropfact/factorization.hpp"
#include "tropfact/termsum.hpp"
#include "tropfact/tropical.hpp"

namespace tropfact {

struct GuardExceeded : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A maximal cone of linearity of y -> sum_J P_J(y) s_J on gauge-fixed grid
/// space (y_{i,1} = 0), with a triangulation into simplicial cones.
struct FanCone {
  std::vector<std::size_t> rays;                    // indices into LinearFan::rays
  std::vector<std::vector<std::size_t>> simplices;  // each a set of fan ray indices
  std::vector<Integer> dets;                        // |det| of each simplex
};

struct LinearFan {
  int k = 0;
  int n = 0;
  std::size_t dim = 0;             // (k-1)(n-k-1)
  std::vector<IVector> rays;       // primitive, gauge coordinates y_{i,j}, j >= 2, row-major
  std::vector<HeightVector> ray_heights;  // trop_plucker of each ray
  std::vector<KinematicForm> ray_forms;
  std::vector<FanCone> cones;
  /// Every ray form has integral planar coordinates.
  bool integral_forms = true;
  std::size_t simplex_count() const;
};

/// The whole fan. Throws GuardExceeded when (k-1)(n-k-1) > max_dim.
LinearFan build_fan(int k, int n, std::size_t max_dim = 6, std::uint64_t seed = 1);

/// Only the maximal cones containing the ray through proj_rt(height); no
/// dimension guard. Returns an empty fan when that point is not a ray.
LinearFan build_star(const HeightVector& height, std::uint64_t seed = 1);

/// Gauge-fixed grid vector of a point given in fan coordinates.
GridVector grid_of(int k, int n, const IVector& v);

/// sum over simplices of |det| / prod F(r; s) at a conserving point.
Rational evaluate_amplitude(const LinearFan& fan, const QVector& s);

/// Coordinates on kinematic space: variable i < propagators.size() is the
/// value of propagator i; the remaining variables are the planar coordinates
/// eta_J of the complementary nonfrozen J, either symbolic or fixed.
class KinematicSlice {
 public:
  /// Throws std::invalid_argument when the propagators are dependent.
  KinematicSlice(int k, int n, std::vector<KinematicForm> propagators,
                 std::vector<std::string> names = {});
  int k() const { return k_; }
  int n() const { return n_; }
  std::size_t variables() const { return names_.size(); }
  std::size_t propagator_count() const { return propagators_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<KSubset>& complement() const { return complement_; }

  /// Replaces the complementary coordinates by values drawn from seed; the
  /// propagators stay symbolic.
  void fix_complement(std::uint64_t seed);
  const std::optional<QVector>& fixed() const { return fixed_; }

  AffineForm restrict(const KinematicForm& f) const;
  /// Variable values of a conserving kinematic point (inverse of point()).
  QVector coordinates(const QVector& s) const;
  /// The conserving kinematic point with the given variable values.
  QVector point(const QVector& values) const;

 private:
  int k_, n_;
  std::vector<KinematicForm> propagators_;
  std::vector<KSubset> complement_;
  std::vector<std::string> names_;
  std::optional<LinearSolver> solver_;  // planar coordinates -> variables
  QMatrix to_planar_;                   // variables -> planar coordinates
  std::optional<QVector> fixed_;
};

struct OnPoleSlice : std::domain_error {
  using std::domain_error::domain_error;
};

/// Sum over the fan's simplices of |det| / prod restrict(F(r)). Throws
/// OnPoleSlice when a ray form restricts to zero.
TermSum amplitude(const LinearFan& fan, const KinematicSlice& slice);

/// A random kinematic point satisfying momentum conservation.
QVector random_conserving_point(int k, int n, std::mt19937_64& rng);
/// s'_I = s_{I^c}, indexed by (n-k)-subsets.
QVector complement_kinematics(int k, int n, const QVector& s);

/// Sum over triangulations of the n-gon of prod 1/X_{ab}, X_{ab} = sum_{a <= i < j < b} s_ij.
/// Throws ZeroDenominator on a pole.
Rational m2_tree_oracle(int n, const QVector& s);
std::size_t m2_tree_count(int n);

/// Residues of the amplitude in the propagators, in the given order. Only
/// the star of the first propagator's ray contributes.
struct ResidueResult {
  TermSum value;
  KinematicSlice slice;
  std::size_t star_cones = 0;
  std::size_t star_simplices = 0;
  std::uint64_t seed = 0;
};
ResidueResult iterated_residue(int k, int n, const std::vector<KinematicForm>& propagators,
                               std::uint64_t seed = 1, const std::vector<std::string>& names = {});

/// Residues of the amplitude of a precomputed fan, in order.
TermSum iterated_residue(const LinearFan& fan, const KinematicSlice& slice, const std::vector<Var>& order);

/// Probabilistic zero test: the sum vanishes at `samples` seeded random points.
bool vanishes(const TermSum& t, std::size_t variables, std::uint64_t seed, std::size_t samples = 4);

/// Connected components of the linear matroid of the denominator forms.
std::vector<std::vector<AffineForm>> form_components(const std::vector<AffineForm>& forms);

/// Unions of matroid components linked by a nonzero mixed difference of f:
/// f(x) f(x + a + b) != f(x + a) f(x + b) for displacements a, b that move
/// only the forms of one component each.
std::vector<std::vector<AffineForm>> factor_groups(const TermSum& t, std::size_t variables, std::uint64_t seed,
                                                   std::size_t samples = 4);

struct Separability {
  std::size_t groups = 0;  // groups carrying denominator forms
  std::size_t samples = 0;
  bool separable = true;  // every group splits off from the rest at all samples
};
Separability separability(const TermSum& t, std::size_t variables, std::uint64_t seed, std::size_t samples = 6);

struct Identification {
  int m = 0;
  bool searched = false;
  bool found = false;
  std::size_t poles = 0;        // of m^{(k)}_m
  std::size_t group_forms = 0;  // of the matched group
  Rational constant;            // factor = constant * sub-amplitude, the other groups held fixed
  std::size_t candidates = 0;
  // pole j of the sub-amplitude corresponds to signs[j] * images[j]
  std::vector<AffineForm> images;
  std::vector<int> signs;
  std::vector<AffineForm> sub_poles;
  TermSum sub;
  std::size_t sub_variables = 0;
};
/// Searches signed bijections between a group's forms and the poles of
/// m^{(k)}_m so that the group's factor is a constant multiple of it.
Identification identify_factor(const TermSum& t, std::size_t variables, const std::vector<AffineForm>& group, int k,
                               int m, std::uint64_t seed, std::size_t max_poles = 6);

struct FactorizationReport {
  std::string channel;
  std::uint64_t seed = 0;
  std::vector<std::string> tower;  // labels in tower order (S first)
  std::vector<std::size_t> order;  // the first nonvanishing order found
  std::size_t orders_tried = 0;
  bool nonvanishing = false;
  std::string result;
  Rational value_at_sample;
  std::size_t star_cones = 0;
  Separability separability;
  std::vector<int> factor_sizes;    // n_l = |S_l| + k - 1
  std::size_t expected_groups = 0;  // factors with a positive-dimensional fan
  std::vector<Identification> identifications;
  /// result = overall_constant * prod of the identified sub-amplitudes, when
  /// every nontrivial factor was identified.
  std::optional<Rational> overall_constant;
  bool wrong_order_checked = false;
  bool wrong_order_vanishes = false;
  double seconds = 0;
};

/// Tries orders with S first and the rest permuted (at most max_orders), then
/// analyses the first nonvanishing result.
FactorizationReport verify_factorization(const ChannelSpec& s, std::uint64_t seed = 1, std::size_t max_orders = 120);

/// For a k = 3 channel (I, J, K): the residues taken first at eta_(IJK) and
/// first at eta_(IKJ), each followed by the three two-block splits, compared on
/// their common locus.
struct PrefactorCheck {
  std::string channel;
  std::string first, second;  // labels of the two orientations
  bool first_nonzero = false;
  bool second_nonzero = false;
  bool equal = false;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};
PrefactorCheck prefactor_check(const ChannelSpec& s, std::uint64_t seed = 1);

}  // namespace tropfact
