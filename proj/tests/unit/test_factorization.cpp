#include <algorithm>
#include <set>

#include "doctest.h"
#include "tropfact/factorization.hpp"
#include "tropfact/linalg.hpp"
#include "tropfact/subdivision.hpp"
#include "tropfact/tropical.hpp"

using namespace tropfact;

namespace {

KinematicForm eta(int n, const std::string& dosp) { return eta_of_dosp(parse_dosp(dosp, n)); }

bool same_form_set(const PropagatorSet& set, const std::vector<KinematicForm>& expected) {
  if (set.items.size() != expected.size()) return false;
  return std::all_of(expected.begin(), expected.end(), [&](const KinematicForm& f) {
    return std::any_of(set.items.begin(), set.items.end(), [&](const Propagator& p) { return p.form == f; });
  });
}

std::set<std::string> labels(const std::vector<Dosp>& ds) {
  std::set<std::string> out;
  for (const auto& d : ds) out.insert(d.canonical().to_string());
  return out;
}

std::string canon(const std::string& text, int n) { return parse_dosp(text, n).canonical().to_string(); }

// consecutive blocks of the given sizes starting at 1
ChannelSpec profile(const std::vector<int>& sizes) {
  std::vector<std::vector<int>> blocks;
  int next = 1;
  for (int s : sizes) {
    blocks.emplace_back();
    for (int t = 0; t < s; ++t) blocks.back().push_back(next++);
  }
  return ChannelSpec(next - 1, blocks);
}

void compositions(int n, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (k == 0) {
    if (n == 0) out.push_back(cur);
    return;
  }
  for (int s = 1; s <= n - (k - 1); ++s) {
    cur.push_back(s);
    compositions(n - s, k - 1, cur, out);
    cur.pop_back();
  }
}

HeightVector combo(int k, int n, const std::vector<std::pair<std::vector<int>, int>>& terms) {
  HeightVector h(k, n);
  for (const auto& [j, c] : terms) h += Rational(c) * height_of_subset(KSubset(n, j));
  return h;
}

}  // namespace

TEST_CASE("channel specs") {
  auto s = parse_channel("23|45|61", 6);
  CHECK(s.blocks() == std::vector<std::vector<int>>{{6, 1}, {2, 3}, {4, 5}});
  CHECK(s.d() == 3);
  CHECK_THROWS(parse_channel("13|24|56", 6));
  CHECK_THROWS(parse_channel("12|56|34", 6));
  CHECK_THROWS(parse_channel("12|34", 6));
  auto t = channel_from_subset(KSubset(6, {1, 3, 5}));
  CHECK(t.blocks() == std::vector<std::vector<int>>{{6, 1}, {2, 3}, {4, 5}});
  auto u = channel_from_subset(KSubset(8, {1, 3, 4, 8}));
  CHECK(u.blocks() == std::vector<std::vector<int>>{{1}, {2, 3}, {4}, {5, 6, 7, 8}});
  CHECK(u.d() == 2);
  CHECK(parse_channel("10,1|2,3|4,5|6,7|8,9", 10).k() == 5);
}

TEST_CASE("x collection sizes and members") {
  for (int k = 2; k <= 6; ++k) {
    std::vector<int> sizes(static_cast<std::size_t>(k), 2);
    CHECK(x_collection(profile(sizes)).size() == static_cast<std::size_t>((k - 1) * (k - 1) - 1));
  }
  auto s = parse_channel("12|34|56", 6);
  CHECK(labels(x_collection(s)) ==
        std::set<std::string>{canon("12_1|3456_2", 6), canon("34_1|5612_2", 6), canon("56_1|1234_2", 6)});
}

TEST_CASE("lumpings of adjacent blocks") {
  CHECK(hatx_collection(profile({2, 2})).size() == 1);
  CHECK(hatx_collection(profile({2, 2, 2})).size() == 4);
  auto s = parse_channel("12|34|56|78", 8);
  auto got = labels(hatx_collection(s));
  std::set<std::string> expect;
  for (const char* t : {"12_1|34_1|56_1|78_1", "1234_2|56_1|78_1", "12_1|3456_2|78_1", "12_1|34_1|5678_2",
                        "7812_2|34_1|56_1", "123456_3|78_1", "12_1|345678_3", "781234_3|56_1", "567812_3|34_1",
                        "1234_2|5678_2", "7812_2|3456_2"})
    expect.insert(canon(t, 8));
  CHECK(got == expect);
  CHECK(hatx_collection(s).front().same_as(s.dosp()));
}

TEST_CASE("distinct nonzero blades with singleton blocks") {
  auto a = n_collection(parse_channel("1|23|456", 6));
  CHECK(same_form_set(a, {eta_of_subset(KSubset(6, {2, 3, 6})), eta_of_subset(KSubset(6, {1, 3, 6}))}));
  CHECK(same_form_set(a, {eta(6, "123_2|456_1"), eta(6, "4561_2|23_1")}));
  CHECK(residue_tower(parse_channel("1|23|456", 6)).items.size() == 2);

  // (67812_2,2345_2) repeats 2; read as (6781_2 2345_2)
  auto b = n_collection(parse_channel("1|23|45|678", 8));
  CHECK(same_form_set(b, {eta(8, "123_2|45_1|678_1"), eta(8, "6781_2|23_1|45_1"), eta(8, "6781_2|2345_2"),
                          eta(8, "12345_3|678_1"), eta(8, "678123_3|45_1"), eta(8, "456781_3|23_1")}));
  auto c = n_collection(parse_channel("1|23|4|5678", 8));
  CHECK(same_form_set(c, {eta(8, "1234_3|5678_1"), eta(8, "56781_2|234_2"), eta(8, "456781_3|23_1")}));
}

TEST_CASE("residue tower size over block profiles") {
  for (auto [k, nmax] : std::vector<std::pair<int, int>>{{3, 9}, {4, 9}}) {
    for (int n = k + 2; n <= nmax; ++n) {
      std::vector<std::vector<int>> comps;
      std::vector<int> cur;
      compositions(n, k, cur, comps);
      for (const auto& sizes : comps) {
        auto s = profile(sizes);
        CAPTURE(s.to_string());
        auto tower = residue_tower(s);
        CHECK(tower.items.size() == static_cast<std::size_t>((s.d() - 1) * (k - 1)));
        CHECK(tower.rank == tower.items.size());
        if (s.d() == k) CHECK(n_collection(s).items.size() == static_cast<std::size_t>((k - 1) * (k - 1) - 1));
      }
    }
  }
}

TEST_CASE("five-blade relation for every three-block channel") {
  for (int n = 6; n <= 9; ++n) {
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    compositions(n, 3, cur, comps);
    for (const auto& sizes : comps) {
      auto s = profile(sizes);
      CAPTURE(s.to_string());
      KinematicForm lhs = eta_of_dosp(s.dosp()) + eta_of_dosp(s.lumping({{0}, {2}, {1}}));
      KinematicForm rhs = eta_of_dosp(s.lumping({{0}, {1, 2}}));
      rhs += eta_of_dosp(s.lumping({{1}, {2, 0}}));
      rhs += eta_of_dosp(s.lumping({{2}, {0, 1}}));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("k = 3 channel cone is a bipyramid by both routes") {
  for (auto [text, n] : std::vector<std::pair<std::string, int>>{{"12|34|56", 6}, {"12|345|678", 8}, {"123|45|67", 7}}) {
    CAPTURE(text);
    auto s = parse_channel(text, n);
    auto gen = factorization_cone(s);
    CHECK(f_vector(gen.cone) == std::vector<std::size_t>{5, 9, 6, 1});
    HeightVector star(3, n);
    for (const auto& g : gen.generators) star += g;
    auto ineq = plucker_cone(channel_basis(s), star);
    CHECK(ineq.cone.rays == gen.cone.rays);
    CHECK_FALSE(first_nonpositive_sample(gen, 40, 7).has_value());
  }
  CHECK(f_vector(balancing_cone()) == std::vector<std::size_t>{5, 9, 6, 1});
}

TEST_CASE("singleton channel cone is generated by the residue tower") {
  auto s = parse_channel("1|23|45|678", 8);
  auto c = factorization_cone(s);
  CHECK(c.cone.dimension() == 6);
  CHECK(c.cone.rays.size() == 6);
  CHECK_FALSE(first_nonpositive_sample(c, 40, 3).has_value());
}

TEST_CASE("k = 4 dictionary and tables") {
  auto s = parse_channel("18|23|45|67", 8);
  for (const auto& [label, d] : k4_dictionary(s)) {
    std::vector<int> j;
    for (char ch : label) j.push_back(ch - '0');
    CAPTURE(label);
    CHECK(eta_of_dosp(d) == eta_of_subset(KSubset(8, j)));
  }
  CHECK(k4_dictionary(s)[6].second.same_as(parse_dosp("18_1|234567_3", 8)));
  auto tables = k4_channel_tables(s);
  for (const auto* t : {&tables.type1, &tables.type2}) {
    CHECK(t->items.size() == 18);
    CHECK(t->rank == 9);
    for (std::size_t a = 0; a < 18; ++a)
      for (std::size_t b = a + 1; b < 18; ++b) CHECK_FALSE(t->items[a].form == t->items[b].form);
    std::vector<QVector> rows;
    for (const auto& p : t->items) rows.push_back(planar_basis(4, 8).expand(p.height).planar);
    CHECK(rank(rows) == 9);
  }
  // a row spelled out: -2 eta_1357 + eta_1358 + eta_1367 + eta_1457 + eta_2357
  KinematicForm f = Rational(-2) * eta_of_subset(KSubset(8, {1, 3, 5, 7}));
  for (std::vector<int> j : {std::vector<int>{1, 3, 5, 8}, {1, 3, 6, 7}, {1, 4, 5, 7}, {2, 3, 5, 7}})
    f += eta_of_subset(KSubset(8, j));
  CHECK(tables.type1.items[17].form == f);
  CHECK(tables.type2.items[15].form == f);
  CHECK_THROWS(k4_channel_tables(parse_channel("1|23|45|678", 8)));
}

TEST_CASE("k = 4 channel cone by both routes") {
  auto s = parse_channel("18|23|45|67", 8);
  auto gen = factorization_cone(s);
  CHECK(gen.cone.rays.size() == 18);
  CHECK(gen.cone.dimension() == 9);
  HeightVector star(4, 8);
  for (const auto& g : gen.generators) star += g;
  CHECK(plucker_cone(channel_basis(s), star).cone.rays == gen.cone.rays);
  CHECK_FALSE(first_nonpositive_sample(gen, 30, 11).has_value());
  // type II heights also sit in a single cone of the same shape
  auto t2 = k4_channel_tables(s).type2;
  HeightVector star2(4, 8);
  for (const auto& p : t2.items) star2 += p.height;
  REQUIRE(is_positive_tropical_plucker(star2));
  std::vector<Propagator> basis11;
  for (const auto& d : hatx_collection(s)) basis11.push_back({d.to_string(), height_of_dosp(d), eta_of_dosp(d)});
  auto c2 = plucker_cone(basis11, star2);
  CHECK(c2.cone.rays.size() == 18);
  CHECK(c2.cone.dimension() == 9);
}

TEST_CASE("substituted k = 4 tables at (4,9)") {
  auto s = parse_channel("12|34|56|789", 9);
  auto tables = k4_channel_tables(s);
  CHECK(tables.type1.rank == 9);
  CHECK(tables.type2.rank == 9);
  auto c = factorization_cone(s);
  CHECK(c.cone.rays.size() == 18);
  CHECK_FALSE(first_nonpositive_sample(c, 10, 5).has_value());
}

TEST_CASE("eight gamma rows") {
  auto rows = eight_gamma_rows(1, 3, 5, 6);
  CHECK(rows[0][1] == KSubset(6, {1, 2, 5}));
  CHECK(rows[0][2] == KSubset(6, {1, 3, 4}));
  CHECK(rows[0][3] == KSubset(6, {3, 5, 6}));
  CHECK(rows[1][1] == KSubset(6, {1, 3, 6}));
  for (int n = 6; n <= 9; ++n)
    for (int a = 1; a <= n; ++a)
      for (int b = a + 2; b <= n; ++b)
        for (int c = b + 2; c <= n; ++c) {
          if (a + n - c < 2) continue;
          for (const auto& row : eight_gamma_rows(a, b, c, n)) {
            CHECK(row[0] == KSubset(n, {a, b, c}));
            for (std::size_t i = 0; i < 4; ++i)
              for (std::size_t j = i + 1; j < 4; ++j) CHECK(is_weakly_separated(row[i], row[j]));
          }
        }
  CHECK_THROWS(eight_gamma_rows(1, 2, 5, 7));
  CHECK_THROWS(eight_gamma_rows(1, 3, 6, 6));
}

TEST_CASE("three-split vectors") {
  auto terms = split3_summands(4, 9, 15, 15);
  std::set<KSubset> got(terms.begin(), terms.end());
  std::set<KSubset> expect;
  for (std::vector<int> j : {std::vector<int>{2, 9, 15}, {3, 9, 15}, {4, 6, 15}, {4, 7, 15}, {4, 8, 15}, {4, 9, 11},
                             {4, 9, 12}, {4, 9, 13}, {4, 9, 14}, {4, 9, 15}})
    expect.insert(KSubset(15, j));
  CHECK(got == expect);
  for (std::size_t a = 0; a < terms.size(); ++a)
    for (std::size_t b = a + 1; b < terms.size(); ++b) CHECK(is_weakly_separated(terms[a], terms[b]));
  CHECK(split3_summands(1, 3, 5, 6).size() == 1);
  CHECK(split3_vector(1, 3, 5, 6) == height_of_subset(KSubset(6, {1, 3, 5})));
  CHECK(is_positive_tropical_plucker(split3_vector(1, 4, 7, 9)));
  CHECK_THROWS(split3_vector(1, 2, 5, 9));
}

TEST_CASE("rays from noncrossing collections") {
  auto r = ray_from_noncrossing({KSubset(12, {1, 6, 9}), KSubset(12, {2, 5, 10})});
  auto expect = combo(3, 12, {{{1, 5, 9}, -1}, {{1, 5, 10}, 1}, {{1, 6, 9}, 1}, {{2, 5, 9}, 1}});
  CHECK(r.planar == planar_basis(3, 12).expand(expect).planar);
  CHECK(r.incompatibility.is_complete());
  CHECK(r.is_ray);

  auto q = ray_from_noncrossing({KSubset(8, {1, 4, 6, 7}), KSubset(8, {2, 3, 6, 8}), KSubset(8, {2, 4, 5, 8})});
  auto expect4 = combo(4, 8, {{{1, 3, 5, 7}, 1}, {{1, 3, 5, 8}, -1}, {{1, 3, 6, 7}, -1}, {{1, 3, 6, 8}, 1},
                              {{1, 4, 5, 7}, -1}, {{1, 4, 5, 8}, 1}, {{1, 4, 6, 7}, 1}, {{2, 3, 5, 7}, -1},
                              {{2, 3, 5, 8}, 1}, {{2, 3, 6, 7}, 1}, {{2, 4, 5, 7}, 1}});
  CHECK(q.planar == planar_basis(4, 8).expand(expect4).planar);
  CHECK(q.is_ray);
  CHECK_THROWS(ray_from_noncrossing({KSubset(6, {1, 3, 5}), KSubset(6, {2, 4, 6})}));
}
