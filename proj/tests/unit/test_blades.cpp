#include <map>

#include "doctest.h"
#include "tropfact/blades.hpp"

using namespace tropfact;

namespace {

KinematicForm form_from_terms(int k, int n, const std::map<std::vector<int>, Rational>& terms) {
  HeightVector v(k, n);
  const auto& idx = planar_basis(k, n).index();
  for (const auto& [j, c] : terms) v.coeffs[idx.index_of(KSubset(n, j))] = c;
  return form_of(v);
}

// Independent oracle for eta_J: evaluate rho_J directly from its definition.
QVector direct_height(const KSubset& j) {
  const int n = j.n();
  QVector out;
  for (const auto& i : enumerate_subsets(j.k(), n)) {
    std::vector<int> x(n);
    for (int e : i.elements()) x[e - 1] += 1;
    for (int e : j.elements()) x[e - 1] -= 1;
    long best = 0;
    for (int s = 1; s <= n; ++s) {
      long v = 0;
      for (int m = 1; m < n; ++m) v += m * x[cyc(s + m, n) - 1];
      if (s == 1 || v < best) best = v;
    }
    out.push_back(frac(-best, n));
  }
  return out;
}

}  // namespace

TEST_CASE("height of a subset matches the direct definition") {
  for (const auto& j : enumerate_nonfrozen(3, 7)) CHECK(height_of_subset(j).coeffs == direct_height(j));
}

TEST_CASE("frozen subsets give the zero form") {
  for (int n = 5; n <= 9; ++n)
    for (int k = 2; k <= 4 && k < n - 1; ++k)
      for (const auto& f : frozen_subsets(k, n)) CHECK(eta_of_subset(f).is_zero());
}

TEST_CASE("two-block blade at (2,5)") {
  auto d = parse_dosp("12_1|345_1", 5);
  Rational h(-3, 2);
  auto expected = form_from_terms(2, 5,
                                 {{{1, 2}, -1}, {{3, 4}, -1}, {{3, 5}, -1}, {{4, 5}, -1}, {{1, 3}, h},
                                  {{1, 4}, h}, {{1, 5}, h}, {{2, 3}, h}, {{2, 4}, h}, {{2, 5}, h}});
  CHECK(eta_of_dosp(d) == expected);
  CHECK(eta_of_subset(KSubset(5, {2, 5})) == expected);
}

TEST_CASE("three-block blade at (3,6)") {
  auto d = parse_dosp("14_1|26_1|35_1", 6);
  std::map<std::vector<int>, Rational> t;
  const std::vector<std::pair<std::vector<int>, int>> rows = {
      {{1, 2, 3}, 6}, {{1, 2, 4}, 4}, {{1, 2, 5}, 6}, {{1, 2, 6}, 5}, {{1, 3, 4}, 5}, {{1, 3, 5}, 4}, {{1, 3, 6}, 6},
      {{1, 4, 5}, 5}, {{1, 4, 6}, 4}, {{1, 5, 6}, 6}, {{2, 3, 4}, 6}, {{2, 3, 5}, 5}, {{2, 3, 6}, 4}, {{2, 4, 5}, 6},
      {{2, 4, 6}, 5}, {{2, 5, 6}, 4}, {{3, 4, 5}, 4}, {{3, 4, 6}, 6}, {{3, 5, 6}, 5}, {{4, 5, 6}, 6}};
  for (const auto& [j, c] : rows) t[j] = frac(-c, 3);
  CHECK(eta_of_dosp(d) == form_from_terms(3, 6, t));

  const auto& b = planar_basis(3, 6);
  auto coords = planar_coordinates(eta_of_dosp(d));
  std::map<std::vector<int>, int> expected = {{{1, 2, 4}, -1}, {{1, 2, 5}, 1},  {{1, 3, 5}, -1},
                                              {{1, 3, 6}, 1},  {{1, 4, 6}, -1}, {{2, 3, 6}, -1},
                                              {{2, 4, 5}, 1},  {{2, 4, 6}, 1},  {{2, 5, 6}, -1}};
  for (const auto& j : b.nonfrozen()) {
    auto it = expected.find(j.elements());
    CHECK(coords[b.nonfrozen_position(j)] == (it == expected.end() ? 0 : it->second));
  }
  // The same coefficients hold for heights up to lineality.
  auto e = b.expand(height_of_dosp(d));
  CHECK(e.planar == coords);
}

TEST_CASE("degenerate blade vanishes") {
  CHECK(eta_of_dosp(parse_dosp("1_1|23456_2", 6)).is_zero());
}

TEST_CASE("subset and partition blades agree") {
  for (int n = 4; n <= 8; ++n)
    for (int k = 2; k <= 4 && k < n - 1; ++k)
      for (const auto& j : enumerate_nonfrozen(k, n)) CHECK(eta_of_subset(j) == eta_of_dosp(dosp_of_subset(j)));
}

TEST_CASE("planar blades are independent") {
  for (auto [k, n] : std::vector<std::pair<int, int>>{{2, 5}, {2, 6}, {3, 6}, {3, 7}, {4, 8}}) {
    std::vector<QVector> rows;
    for (const auto& j : enumerate_nonfrozen(k, n)) rows.push_back(eta_of_subset(j).coeffs);
    CHECK(rank(rows) == rows.size());
  }
}

TEST_CASE("five-blade relation for contiguous three-block partitions") {
  for (int n = 6; n <= 8; ++n) {
    for (int a = 1; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        // I = 1..a, J = a+1..b, K = b+1..n
        auto range = [](int lo, int hi) {
          std::vector<int> v;
          for (int i = lo; i <= hi; ++i) v.push_back(i);
          return v;
        };
        auto cat = [](std::vector<int> x, const std::vector<int>& y) {
          x.insert(x.end(), y.begin(), y.end());
          return x;
        };
        auto i = range(1, a), j = range(a + 1, b), kk = range(b + 1, n);
        if (i.size() < 1 || j.size() < 1 || kk.size() < 1) continue;
        if (i.size() + j.size() < 3 || j.size() + kk.size() < 3 || kk.size() + i.size() < 3) continue;
        auto lhs = eta_of_dosp(Dosp(n, {{i, 1}, {j, 1}, {kk, 1}})) + eta_of_dosp(Dosp(n, {{i, 1}, {kk, 1}, {j, 1}}));
        auto rhs = eta_of_dosp(Dosp(n, {{i, 1}, {cat(j, kk), 2}})) + eta_of_dosp(Dosp(n, {{cat(i, j), 2}, {kk, 1}})) +
                   eta_of_dosp(Dosp(n, {{cat(kk, i), 2}, {j, 1}}));
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("pairing rejects non-conserving points") {
  const auto& b = planar_basis(2, 5);
  QVector s(b.dimension(), 1);
  CHECK_THROWS_AS(pair(height_of_subset(KSubset(5, {2, 5})), s), std::invalid_argument);
}

TEST_CASE("canonicalization survives gcd(n,k) > 1") {
  for (auto [k, n] : std::vector<std::pair<int, int>>{{2, 4}, {3, 6}, {2, 6}, {4, 8}}) {
    const auto& b = planar_basis(k, n);
    CHECK(b.pivot_coordinates().size() == static_cast<std::size_t>(n));
    // adding a lineality vector leaves the canonical form fixed
    auto h = height_of_subset(b.nonfrozen().front());
    CHECK(form_of(h) == form_of(h + b.lineality_generator(1)));
  }
}
