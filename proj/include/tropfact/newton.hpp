#pragma once

#include <vector>

#include "tropfact/cone.hpp"
#include "tropfact/tropical.hpp"

namespace tropfact {

/// The face of N_{k,n} = Newt(prod_J p_J) on which <., w> is minimal, kept as
/// the Minkowski decomposition into per-minor minimizing monomial sets.
struct NewtonFace {
  int k = 0;
  int n = 0;
  GridVector w;
  std::vector<std::vector<Exponent>> minimizers;  // by subset index
  std::size_t dimension = 0;
};

NewtonFace newton_face(const GridVector& w);
inline std::size_t newton_dimension(int k, int n) { return newton_face(GridVector(k, n)).dimension; }

/// min over N_{k,n} of <., w>, which is sum_J pi_J(w).
Rational newton_support(const GridVector& w);

/// True iff the given linear functionals attain their minima on a common face.
bool simultaneously_minimizable(const std::vector<GridVector>& functionals);

/// Convex hull of the Minkowski sum, pruning to vertices after each summand.
Polytope minkowski_sum(const std::vector<std::vector<QVector>>& summands);
/// The face as an explicit polytope.
Polytope face_polytope(const NewtonFace& face);

/// Faces of dimension dim, as vertex bitsets of p.
std::vector<Bits> faces_of_dimension(const FaceLattice& lattice, std::size_t dim);
/// f-vector (f_0, ...) of the face given by its vertex set.
std::vector<std::size_t> face_f_vector(const FaceLattice& lattice, const Bits& face);

}  // namespace tropfact
