#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tropfact/blades.hpp"
#include "tropfact/cone.hpp"
#include "tropfact/combinatorics.hpp"

namespace tropfact {

/// An ordered partition of {1..n} into k cyclic intervals, listed in cyclic
/// order starting with the block that contains 1.
class ChannelSpec {
 public:
  ChannelSpec(int n, std::vector<std::vector<int>> blocks);
  int n() const { return n_; }
  int k() const { return static_cast<int>(blocks_.size()); }
  /// Number of blocks with at least two elements.
  int d() const;
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  /// Dosp whose blocks are the unions of the given runs of channel blocks,
  /// each run decorated by its length.
  Dosp lumping(const std::vector<std::vector<int>>& runs) const;
  /// (S, (1, ..., 1)).
  Dosp dosp() const;
  std::string to_string() const;

 private:
  int n_;
  std::vector<std::vector<int>> blocks_;
};

/// "18|23|45|67"; blocks with elements >= 10 are comma separated ("10,1|2,3|...").
ChannelSpec parse_channel(const std::string& text, int n);

/// S_1 = {j_k+1, ..., j_1}, S_2 = {j_1+1, ..., j_2}, ... for a subset J.
ChannelSpec channel_from_subset(const KSubset& j);

/// One lumped run of i..j blocks (cyclic, 2 <= length <= k-1), all other blocks kept.
std::vector<Dosp> x_collection(const ChannelSpec& s);

/// All adjacent-block lumpings into at least two blocks, starting with S itself.
std::vector<Dosp> hatx_collection(const ChannelSpec& s);

/// eta_(IJK) + eta_(IKJ) = eta_(I (JK)_2) + eta_(J (KI)_2) + eta_(K (IJ)_2) for a
/// three-block channel (I, J, K). Throws std::invalid_argument unless k = 3.
bool five_blade_relation(const ChannelSpec& s);

struct Propagator {
  std::string label;
  HeightVector height;
  KinematicForm form;
};

struct PropagatorSet {
  std::vector<Propagator> items;
  /// Basis of the linear relations sum_i c_i form_i = 0.
  std::vector<QVector> relations;
  /// Rank of the forms (and of the heights modulo lineality).
  std::size_t rank = 0;
};

PropagatorSet make_propagator_set(std::vector<Propagator> items);

/// Distinct nonzero blades of x_collection, deduplicated by canonical form.
PropagatorSet n_collection(const ChannelSpec& s);

/// n_collection together with the channel blade itself (deduplicated).
PropagatorSet residue_tower(const ChannelSpec& s);

/// The (4,8) tables transported to S by the substitution of blocks. Requires
/// k = 4 with every block of size at least two.
struct K4Tables {
  PropagatorSet type1;
  PropagatorSet type2;
};
K4Tables k4_channel_tables(const ChannelSpec& s);

/// The eleven dictionary blades eta_{abcd} = eta_{(T, r)} at S, keyed by "abcd".
std::vector<std::pair<std::string, Dosp>> k4_dictionary(const ChannelSpec& s);

/// A cone in coefficient coordinates with respect to a list of heights.
struct ChannelCone {
  std::vector<HeightVector> basis;
  std::vector<std::string> basis_labels;
  std::vector<HeightVector> generators;  // empty for cones given by inequalities
  Cone cone;
  /// Height of a point given in basis coordinates.
  HeightVector height(const QVector& c) const;
};

/// Independent heights from the channel blade and x_collection, in that order.
std::vector<Propagator> channel_basis(const ChannelSpec& s);

/// Cone spanned by the channel generators: for k = 3 with all blocks of size
/// >= 2 the two orientations of the channel blade and the three two-block
/// splits; for k = 4 with all blocks of size >= 2 the type I table; for k >= 5
/// with all blocks of size >= 2 the three-term cone at the sum of the basis;
/// otherwise the channel blade together with n_collection.
ChannelCone factorization_cone(const ChannelSpec& s);

/// Cone of the three-term relation fan containing pi, intersected with the
/// span of the basis. pi must be a positive tropical Plucker vector in that span.
ChannelCone plucker_cone(const std::vector<Propagator>& basis, const HeightVector& pi);

/// The cone {c >= 0} cut by the three balancing equations for six
/// coefficients c_12, c_13, c_21, c_23, c_31, c_32.
Cone balancing_cone();

/// Some nonnegative combinations of the generators fail positivity; returns
/// the first failing coefficient vector, if any.
std::optional<QVector> first_nonpositive_sample(const ChannelCone& c, std::size_t samples, std::uint64_t seed);

struct FanSection {
  std::size_t coefficient_bound = 0;
  std::size_t combinations_tested = 0;
  std::size_t positive_points = 0;
  std::vector<Cone> maximal_cones;  // in basis coordinates
  std::vector<IVector> rays;        // union of the maximal cones' rays
};

/// Integer combinations of the basis heights with coefficients in
/// [-bound, bound] that are positive tropical Plucker vectors, and the
/// cones of the three-term fan they reach whose interiors carry a minimal set
/// of ties.
FanSection fan_section(const std::vector<Propagator>& basis, int bound);

/// The eight rows of gamma indices attached to a totally nonfrozen triple.
/// Throws std::invalid_argument when two indices are cyclically adjacent.
std::array<std::array<KSubset, 4>, 8> eight_gamma_rows(int j1, int j2, int j3, int n);

/// Summand subsets of the split vector for a totally nonfrozen triple i < j < k.
std::vector<KSubset> split3_summands(int i, int j, int k, int n);
HeightVector split3_vector(int i, int j, int k, int n);

struct NoncrossingRay {
  HeightVector pi;  // trop_plucker of the summed roots
  QVector planar;   // its planar-basis coefficients
  Graph incompatibility;
  bool is_ray = false;
};

/// Throws std::invalid_argument when two members cross.
NoncrossingRay ray_from_noncrossing(const std::vector<KSubset>& collection);

}  // namespace tropfact
