#pragma once

#include <stdexcept>
#include <vector>

#include "tropfact/blades.hpp"
#include "tropfact/combinatorics.hpp"

namespace tropfact {

/// A regular subdivision of the hypersimplex, cells given as sorted lists of
/// vertex indices (lexicographic subset index).
struct Subdivision {
  enum class Method { PlateRefinement, LowerHull };

  int k = 0;
  int n = 0;
  HeightVector height;
  std::vector<std::vector<std::size_t>> cells;
  Method method = Method::PlateRefinement;

  std::vector<KSubset> cell_subsets(std::size_t c) const;
};

struct SizeGuardExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Vertex sets of the d plates of a blade: entry j lists the vertices where
/// the j-th rotation attains the minimum.
std::vector<std::vector<std::size_t>> plate_vertex_sets(const Dosp& d);

/// Common refinement of the plate complexes of the blades in the planar
/// expansion of pi, certified against pi by lower supporting affine functions.
/// Falls back to lower_hull_oracle if certification fails.
Subdivision subdivision_from_height(const HeightVector& pi);

/// Same subdivision from the vertices of {a : sum_{i in I} a_i <= pi_I}.
/// Throws SizeGuardExceeded when C(n,k) > max_vertices.
Subdivision lower_hull_oracle(const HeightVector& pi, std::size_t max_vertices = 250);

/// Rank of {e_I : I in cell} (n for a full-dimensional cell of the hypersimplex).
std::size_t vertex_rank(int k, int n, const std::vector<std::size_t>& vertices);

bool satisfies_basis_exchange(int k, int n, const std::vector<std::size_t>& vertices);
bool is_matroidal(const Subdivision& sub);
bool is_positroidal(const Subdivision& sub);

/// Nodes are cells; an edge joins two cells sharing a facet.
Graph dual_graph(const Subdivision& sub);
std::vector<std::string> cell_labels(const Subdivision& sub);

/// Dimension of the space of heights that are affine on every cell.
std::size_t affine_height_dimension(const Subdivision& sub);
/// True iff that dimension is n + 1 (lineality plus one ray direction).
bool is_coarsest(const Subdivision& sub);
inline bool is_coarsest(const HeightVector& pi) { return is_coarsest(subdivision_from_height(pi)); }

}  // namespace tropfact
