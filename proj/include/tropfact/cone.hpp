#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tropfact/rational.hpp"

namespace tropfact {

using IVector = std::vector<Integer>;

/// Dynamic bitset over ray or facet indices.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t size) : size_(size), words_((size + 63) / 64) {}
  std::size_t size() const { return size_; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  std::size_t count() const;
  bool subset_of(const Bits& o) const;
  Bits operator&(const Bits& o) const;
  friend bool operator==(const Bits&, const Bits&) = default;
  friend bool operator<(const Bits& a, const Bits& b) { return a.words_ < b.words_; }
  std::size_t hash() const;
  std::vector<std::size_t> indices() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct DegenerateInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Both descriptions of a polyhedral cone: x = sum l_i lin_i + sum r_j ray_j (r >= 0)
/// and {x : a.x >= 0 for a in facets, e.x = 0 for e in equations}. Vectors are
/// primitive integer vectors, sorted lexicographically.
struct Cone {
  std::size_t ambient = 0;
  std::vector<IVector> rays;
  std::vector<IVector> lineality;
  std::vector<IVector> facets;
  std::vector<IVector> equations;

  std::size_t dimension() const { return ambient - equations.size(); }
  bool pointed() const { return lineality.empty(); }
  bool contains(const QVector& x) const;
  /// Incidence of rays with facets: entry f has bit r set iff facet f vanishes on ray r.
  std::vector<Bits> facet_incidence() const;
};

/// {x : a.x >= 0} by double description; returns lineality basis and extreme rays.
struct DoubleDescription {
  std::vector<IVector> lineality;
  std::vector<IVector> rays;
};
DoubleDescription double_description(std::size_t dim, const std::vector<IVector>& inequalities);

Cone cone_from_generators(std::size_t ambient, const std::vector<QVector>& generators);
Cone cone_from_inequalities(std::size_t ambient, const std::vector<QVector>& inequalities,
                            const std::vector<QVector>& equations = {});

/// Faces of a pointed cone as ray sets, grouped by dimension 1..dim.
struct FaceLattice {
  std::vector<std::vector<Bits>> faces;  // faces[d-1] holds the faces of dimension d
  std::vector<std::size_t> f_vector() const;
};
FaceLattice face_lattice(const Cone& c);
std::vector<std::size_t> f_vector(const Cone& c);

/// Convex hull of a point set, via the cone over {1} x P.
struct Polytope {
  Cone cone;
  std::vector<QVector> vertices;  // vertex i is cone.rays[i] dehomogenized
  std::size_t dimension() const { return cone.dimension() - 1; }
  /// (f_0, ..., f_dim).
  std::vector<std::size_t> f_vector() const { return tropfact::f_vector(cone); }
};
Polytope convex_hull(const std::vector<QVector>& points);

}  // namespace tropfact
