#include <algorithm>
#include <random>

#include "doctest.h"
#include "tropfact/subdivision.hpp"
#include "tropfact/tropical.hpp"

using namespace tropfact;

namespace {

HeightVector combo(int k, int n, const std::vector<std::pair<std::vector<int>, int>>& terms) {
  HeightVector h(k, n);
  for (const auto& [j, c] : terms) h += Rational(c) * height_of_subset(KSubset(n, j));
  return h;
}

HeightVector six_cell() { return combo(3, 12, {{{1, 5, 9}, -1}, {{1, 5, 10}, 1}, {{1, 6, 9}, 1}, {{2, 5, 9}, 1}}); }

}  // namespace

TEST_CASE("trivial subdivision") {
  HeightVector zero(3, 6);
  auto s = subdivision_from_height(zero);
  REQUIRE(s.cells.size() == 1);
  CHECK(s.cells[0].size() == 20);
  CHECK(is_matroidal(s));
  CHECK(dual_graph(s).nodes == 1);
  CHECK(affine_height_dimension(s) == 6);
  CHECK_FALSE(is_coarsest(s));
}

TEST_CASE("three-split at (3,6)") {
  auto d = parse_dosp("12_1|34_1|56_1", 6);
  auto s = subdivision_from_height(height_of_dosp(d));
  CHECK(s.method == Subdivision::Method::PlateRefinement);
  CHECK(s.cells.size() == 3);
  CHECK(is_matroidal(s));
  CHECK(is_positroidal(s));
  CHECK(is_coarsest(s));
  auto g = dual_graph(s);
  CHECK(g.edges.size() == 3);  // the three plates meet pairwise in facets around the common codim-2 face
  CHECK(lower_hull_oracle(height_of_dosp(d)).cells == s.cells);
  auto two = subdivision_from_height(height_of_dosp(parse_dosp("12_1|3456_2", 6)));
  CHECK(two.cells.size() == 2);
  CHECK(lower_hull_oracle(two.height).cells == two.cells);
}

TEST_CASE("every single blade is a coarsest matroidal subdivision") {
  for (int n = 5; n <= 7; ++n)
    for (const auto& j : enumerate_nonfrozen(3, n)) {
      auto s = subdivision_from_height(height_of_subset(j));
      CHECK(s.cells.size() == dosp_of_subset(j).size());
      CHECK(is_matroidal(s));
      CHECK(is_coarsest(s));
    }
}

TEST_CASE("non weakly separated pair is not matroidal") {
  auto h = combo(3, 6, {{{1, 3, 5}, 1}, {{2, 4, 6}, 1}});
  auto s = subdivision_from_height(h);
  CHECK(s.cells == lower_hull_oracle(h).cells);
  CHECK_FALSE(is_matroidal(s));
  CHECK_FALSE(is_positroidal(s));
}

TEST_CASE("refinement of two compatible blades is not coarsest") {
  auto h = combo(3, 6, {{{1, 3, 5}, 1}, {{1, 3, 6}, 1}});
  auto s = subdivision_from_height(h);
  CHECK(is_positroidal(s));
  CHECK(affine_height_dimension(s) == 8);
  CHECK_FALSE(is_coarsest(s));
}

TEST_CASE("six-cell subdivision at (3,12)") {
  auto s = subdivision_from_height(six_cell());
  CHECK(s.method == Subdivision::Method::PlateRefinement);
  CHECK(s.cells.size() == 6);
  CHECK(lower_hull_oracle(six_cell()).cells == s.cells);
  CHECK(is_positroidal(s));
  CHECK(is_coarsest(s));
  auto g = dual_graph(s);
  CHECK(g.nodes == 6);
  CHECK(g.edges.size() == 9);
  // cells that pairwise share facets meet in the expected codimension
  auto adjacent = [&](std::size_t x, std::size_t y) {
    return std::find(g.edges.begin(), g.edges.end(), std::make_pair(std::min(x, y), std::max(x, y))) != g.edges.end();
  };
  int triangles = 0;
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = a + 1; b < 6; ++b)
      for (std::size_t c = b + 1; c < 6; ++c) {
        if (!adjacent(a, b) || !adjacent(b, c) || !adjacent(a, c)) continue;
        ++triangles;
        std::vector<std::size_t> ab, abc;
        std::set_intersection(s.cells[a].begin(), s.cells[a].end(), s.cells[b].begin(), s.cells[b].end(),
                              std::back_inserter(ab));
        std::set_intersection(ab.begin(), ab.end(), s.cells[c].begin(), s.cells[c].end(), std::back_inserter(abc));
        CHECK(vertex_rank(3, 12, abc) == 10);
      }
  CHECK(triangles == 4);
}

TEST_CASE("oracle agreement on random weakly separated pairs at (3,7)") {
  std::mt19937_64 rng(17);
  auto subs = enumerate_nonfrozen(3, 7);
  std::uniform_int_distribution<std::size_t> pick(0, subs.size() - 1);
  std::uniform_int_distribution<int> coef(1, 4);
  int done = 0;
  while (done < 25) {
    auto a = subs[pick(rng)], b = subs[pick(rng)];
    if (a == b || !is_weakly_separated(a, b)) continue;
    auto h = Rational(coef(rng)) * height_of_subset(a) + Rational(coef(rng)) * height_of_subset(b);
    auto s = subdivision_from_height(h);
    CHECK(s.cells == lower_hull_oracle(h).cells);
    CHECK(is_positroidal(s));
    ++done;
  }
}
