// One PASS/FAIL line per acceptance criterion. Every comparison is exact;
// the only tolerances are the wall-clock budgets below.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>

#include "tropfact/amplitude.hpp"
#include "tropfact/newton.hpp"
#include "tropfact/subdivision.hpp"

using namespace tropfact;

namespace {

// seconds
constexpr double kBudget1 = 1, kBudget2 = 1, kBudget3 = 60, kBudget4 = 60, kBudget5 = 121, kBudget6 = 60,
                 kBudget7 = 300, kBudget8 = 300, kBudget9 = 1800, kBudget10 = 1800, kBudget11 = 600, kBudget12 = 1200;
constexpr int kOraclePoints = 20;

struct Verdict {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

int failures = 0;

void criterion(int id, double budget, const std::function<void(Verdict&)>& body) {
  Verdict v;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.require(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  v.require(secs <= budget, "over the time budget");
  if (!v.ok) ++failures;
  std::printf("criterion %2d: %s (%.1fs / %.0fs)%s%s\n", id, v.ok ? "PASS" : "FAIL", secs, budget,
              v.detail.empty() ? "" : "  ", v.detail.c_str());
  std::fflush(stdout);
}

KinematicForm form_from_terms(int k, int n, const std::vector<std::pair<std::vector<int>, Rational>>& terms) {
  HeightVector v(k, n);
  const auto& idx = planar_basis(k, n).index();
  for (const auto& [j, c] : terms) v.coeffs[idx.index_of(KSubset(n, j))] += c;
  return form_of(v);
}

KinematicForm eta_sum(int n, const std::vector<std::pair<std::vector<int>, int>>& terms) {
  KinematicForm f = eta_of_subset(KSubset(n, terms.front().first));
  f *= terms.front().second;
  for (std::size_t i = 1; i < terms.size(); ++i) f += Rational(terms[i].second) * eta_of_subset(KSubset(n, terms[i].first));
  return f;
}

// rho_J on the hypersimplex straight from min_j L_j(e_I - e_J), scaled by -1/n.
KinematicForm direct_eta(const KSubset& j) {
  const int n = j.n();
  HeightVector h(j.k(), n);
  const auto& subsets = planar_basis(j.k(), n).index().subsets();
  for (std::size_t t = 0; t < subsets.size(); ++t) {
    std::vector<int> x(n);
    for (int e : subsets[t].elements()) x[e - 1] += 1;
    for (int e : j.elements()) x[e - 1] -= 1;
    long best = 0;
    for (int s = 1; s <= n; ++s) {
      long v = 0;
      for (int m = 1; m < n; ++m) v += m * x[cyc(s + m, n) - 1];
      if (s == 1 || v < best) best = v;
    }
    h.coeffs[t] = frac(-best, n);
  }
  return form_of(h);
}

// Cyclic sign pattern of e_I - e_J has at most two sign changes.
bool weakly_separated_direct(const KSubset& a, const KSubset& b) {
  std::vector<int> signs;
  for (int i = 1; i <= a.n(); ++i) {
    int d = int(a.contains(i)) - int(b.contains(i));
    if (d != 0) signs.push_back(d);
  }
  int changes = 0;
  for (std::size_t i = 0; i < signs.size(); ++i) changes += signs[i] != signs[(i + 1) % signs.size()];
  return changes <= 2;
}

// Planar cubic trees through T(i,j) = sum_m w(i,m) T(i,m) w(m,j) T(m,j).
Rational tree_sum(int n, const QVector& s) {
  const auto& idx = planar_basis(2, n).index();
  auto sij = [&](int a, int b) { return s[idx.index_of(KSubset(n, {a, b}))]; };
  auto x = [&](int a, int b) {
    Rational v = 0;
    for (int i = a; i < b; ++i)
      for (int j = i + 1; j < b; ++j) v += sij(i, j);
    return v;
  };
  auto w = [&](int a, int b) { return (b == a + 1 || (a == 1 && b == n)) ? Rational(1) : 1 / x(a, b); };
  std::map<std::pair<int, int>, Rational> memo;
  std::function<Rational(int, int)> t = [&](int i, int j) -> Rational {
    if (j == i + 1) return 1;
    auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Rational total = 0;
    for (int m = i + 1; m < j; ++m) total += w(i, m) * t(i, m) * w(m, j) * t(m, j);
    return memo[key] = total;
  };
  return t(1, n);
}

QVector complement_point(int k, int n, const QVector& s) {
  const auto& from = planar_basis(k, n).index();
  const auto& to = planar_basis(n - k, n).index();
  QVector out(to.size());
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::size_t i = 0; i < from.size(); ++i) out[to.index_of(KSubset(n, full & ~from[i].bits()))] = s[i];
  return out;
}

std::vector<int> cat(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<std::size_t> product_f_vector(const std::vector<std::vector<std::size_t>>& factors) {
  std::vector<std::size_t> acc = {1};
  for (const auto& f : factors) {
    std::vector<std::size_t> next(acc.size() + f.size() - 1);
    for (std::size_t i = 0; i < acc.size(); ++i)
      for (std::size_t j = 0; j < f.size(); ++j) next[i + j] += acc[i] * f[j];
    acc = next;
  }
  return acc;
}

bool same_form_multiset(const PropagatorSet& set, std::vector<KinematicForm> expected) {
  if (set.items.size() != expected.size()) return false;
  for (const auto& p : set.items) {
    auto it = std::find(expected.begin(), expected.end(), p.form);
    if (it == expected.end()) return false;
    expected.erase(it);
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, kBudget1, [](Verdict& v) {
    Rational h(-3, 2);
    auto expected = form_from_terms(2, 5,
                                   {{{1, 2}, -1}, {{3, 4}, -1}, {{3, 5}, -1}, {{4, 5}, -1}, {{1, 3}, h},
                                    {{1, 4}, h}, {{1, 5}, h}, {{2, 3}, h}, {{2, 4}, h}, {{2, 5}, h}});
    v.require(eta_of_dosp(parse_dosp("12_1|345_1", 5)) == expected, "(12_1 345_1) expansion");

    std::vector<std::pair<std::vector<int>, Rational>> t;
    const std::vector<std::pair<std::vector<int>, int>> rows = {
        {{1, 2, 3}, 6}, {{1, 2, 4}, 4}, {{1, 2, 5}, 6}, {{1, 2, 6}, 5}, {{1, 3, 4}, 5}, {{1, 3, 5}, 4}, {{1, 3, 6}, 6},
        {{1, 4, 5}, 5}, {{1, 4, 6}, 4}, {{1, 5, 6}, 6}, {{2, 3, 4}, 6}, {{2, 3, 5}, 5}, {{2, 3, 6}, 4}, {{2, 4, 5}, 6},
        {{2, 4, 6}, 5}, {{2, 5, 6}, 4}, {{3, 4, 5}, 4}, {{3, 4, 6}, 6}, {{3, 5, 6}, 5}, {{4, 5, 6}, 6}};
    for (const auto& [j, c] : rows) t.emplace_back(j, frac(-c, 3));
    auto blade = eta_of_dosp(parse_dosp("14_1|26_1|35_1", 6));
    v.require(blade == form_from_terms(3, 6, t), "(14_1 26_1 35_1) expansion");
    auto nine = eta_sum(6, {{{1, 2, 4}, -1}, {{1, 2, 5}, 1}, {{1, 3, 5}, -1}, {{1, 3, 6}, 1}, {{1, 4, 6}, -1},
                            {{2, 3, 6}, -1}, {{2, 4, 5}, 1}, {{2, 4, 6}, 1}, {{2, 5, 6}, -1}});
    v.require(blade == nine, "(14_1 26_1 35_1) planar expansion");
    std::size_t nonzero = 0;
    for (const auto& c : planar_coordinates(blade)) nonzero += sgn(c) != 0;
    v.require(nonzero == 9, "nine planar terms");
  });

  criterion(2, kBudget2, [](Verdict& v) {
    const std::vector<std::tuple<std::string, int, std::vector<int>>> expected = {
        {"12_1|3456_1", 6, {2, 6}},
        {"123_1|456_2", 6, {3, 5, 6}},
        {"712_1|34_1|56_1", 7, {2, 4, 6}},
        {"12_1|345_1|6789_2", 9, {2, 5, 8, 9}},
        {"12_1|34_1|567_1|89_1", 9, {2, 4, 7, 9}}};
    for (const auto& [text, n, j] : expected) {
      auto d = parse_dosp(text, n);
      KSubset s(n, j);
      v.require(dosp_of_subset(s).same_as(d), text + " from subset");
      v.require(subset_of_dosp(d) == s, text + " to subset");
      v.require(eta_of_dosp(d) == eta_of_subset(s), text + " blade");
    }
  });

  criterion(3, kBudget3, [](Verdict& v) {
    std::size_t checked = 0;
    for (int k = 2; k <= 4; ++k)
      for (int n = k + 2; n <= (k == 2 ? 8 : 9); ++n)
        for (const auto& j : enumerate_nonfrozen(k, n)) {
          ++checked;
          if (direct_eta(j) != eta_of_dosp(dosp_of_subset(j))) v.require(false, j.to_string() + " at n=" + std::to_string(n));
        }
    v.detail += v.ok ? std::to_string(checked) + " subsets" : "";
  });

  criterion(4, kBudget4, [](Verdict& v) {
    std::size_t checked = 0;
    for (int n = 4; n <= 9; ++n)
      for (int start = 1; start <= n; ++start)
        for (int a = 1; a <= n - 2; ++a)
          for (int b = 1; a + b <= n - 1; ++b) {
            std::vector<int> order;
            for (int t = 0; t < n; ++t) order.push_back(cyc(start + t, n));
            std::vector<int> i(order.begin(), order.begin() + a), j(order.begin() + a, order.begin() + a + b),
                kk(order.begin() + a + b, order.end());
            auto lhs = eta_of_dosp(Dosp(n, {{i, 1}, {j, 1}, {kk, 1}})) + eta_of_dosp(Dosp(n, {{i, 1}, {kk, 1}, {j, 1}}));
            auto rhs = eta_of_dosp(Dosp(n, {{i, 1}, {cat(j, kk), 2}})) + eta_of_dosp(Dosp(n, {{j, 1}, {cat(kk, i), 2}}));
            rhs += eta_of_dosp(Dosp(n, {{kk, 1}, {cat(i, j), 2}}));
            ++checked;
            if (!(lhs == rhs)) v.require(false, "n=" + std::to_string(n) + " start " + std::to_string(start));
          }
    v.detail += v.ok ? std::to_string(checked) + " partitions (with rotations)" : "";
  });

  criterion(5, kBudget5, [](Verdict& v) {
    auto s3 = parse_channel("12|34|56", 6);
    auto c3 = factorization_cone(s3);
    v.require(f_vector(c3.cone) == std::vector<std::size_t>{5, 9, 6, 1}, "k=3 generators");
    HeightVector star(3, 6);
    for (const auto& g : c3.generators) star += g;
    v.require(f_vector(plucker_cone(channel_basis(s3), star).cone) == std::vector<std::size_t>{5, 9, 6, 1},
              "k=3 inequalities");
    v.require(f_vector(balancing_cone()) == std::vector<std::size_t>{5, 9, 6, 1}, "balancing cone");

    auto s4 = parse_channel("18|23|45|67", 8);
    auto c4 = factorization_cone(s4);
    const std::vector<std::size_t> f48 = {18, 108, 308, 485, 450, 250, 81, 14, 1};
    v.require(f_vector(c4.cone) == f48, "(4,8) generators");
    HeightVector star4(4, 8);
    for (const auto& g : c4.generators) star4 += g;
    v.require(f_vector(plucker_cone(channel_basis(s4), star4).cone) == f48, "(4,8) inequalities");

    const std::vector<std::size_t> f510 = {63,     895,    6010,  23965, 63191, 116936, 157285, 156950,
                                           117405, 65985, 27704, 8555,  1885,  280,    25,     1};
    v.require(f_vector(factorization_cone(parse_channel("10,1|2,3|4,5|6,7|8,9", 10)).cone) == f510, "(5,10)");
  });

  criterion(6, kBudget6, [](Verdict& v) {
    auto r = ray_from_noncrossing({KSubset(12, {1, 6, 9}), KSubset(12, {2, 5, 10})});
    HeightVector expect(3, 12);
    for (auto [j, c] : std::vector<std::pair<std::vector<int>, int>>{
             {{1, 5, 9}, -1}, {{1, 5, 10}, 1}, {{1, 6, 9}, 1}, {{2, 5, 9}, 1}})
      expect += Rational(c) * height_of_subset(KSubset(12, j));
    v.require(r.planar == planar_basis(3, 12).expand(expect).planar, "(3,12) vector");
    auto sub = subdivision_from_height(r.pi);
    v.require(sub.cells.size() == 6, "six cells");
    v.require(is_positroidal(sub), "positroidal");
    v.require(is_coarsest(sub), "coarsest");
    v.require(r.is_ray, "(3,12) ray");

    auto q = ray_from_noncrossing({KSubset(8, {1, 4, 6, 7}), KSubset(8, {2, 3, 6, 8}), KSubset(8, {2, 4, 5, 8})});
    HeightVector e4(4, 8);
    for (auto [j, c] : std::vector<std::pair<std::vector<int>, int>>{
             {{1, 3, 5, 7}, 1}, {{1, 3, 5, 8}, -1}, {{1, 3, 6, 7}, -1}, {{1, 3, 6, 8}, 1}, {{1, 4, 5, 7}, -1},
             {{1, 4, 5, 8}, 1}, {{1, 4, 6, 7}, 1}, {{2, 3, 5, 7}, -1}, {{2, 3, 5, 8}, 1}, {{2, 3, 6, 7}, 1},
             {{2, 4, 5, 7}, 1}})
      e4 += Rational(c) * height_of_subset(KSubset(8, j));
    v.require(q.planar == planar_basis(4, 8).expand(e4).planar, "(4,8) vector");
    v.require(q.is_ray, "(4,8) ray");
    v.require(affine_height_dimension(subdivision_from_height(q.pi)) == 9, "(4,8) affine heights");
  });

  criterion(7, kBudget7, [](Verdict& v) {
    std::mt19937_64 rng(2024);
    for (int n = 4; n <= 7; ++n) {
      auto fan = build_fan(2, n);
      for (int t = 0; t < kOraclePoints; ++t) {
        auto s = random_conserving_point(2, n, rng);
        if (evaluate_amplitude(fan, s) != tree_sum(n, s)) v.require(false, "tree oracle at n=" + std::to_string(n));
      }
    }
    auto f35 = build_fan(3, 5), f36 = build_fan(3, 6);
    for (int t = 0; t < kOraclePoints; ++t) {
      auto s = random_conserving_point(3, 5, rng);
      if (evaluate_amplitude(f35, s) != tree_sum(5, complement_point(3, 5, s))) v.require(false, "(3,5) duality");
      auto s6 = random_conserving_point(3, 6, rng);
      if (evaluate_amplitude(f36, s6) != evaluate_amplitude(f36, complement_point(3, 6, s6)))
        v.require(false, "(3,6) duality");
    }
  });

  criterion(8, kBudget8, [](Verdict& v) {
    auto rep = verify_factorization(parse_channel("12|34|56", 6));
    v.require(rep.nonvanishing, "nonvanishing order");
    v.require(rep.result == "1", "residue is 1, got " + rep.result);
    v.require(rep.wrong_order_checked && rep.wrong_order_vanishes, "wrong order gives 0");
    auto pre = prefactor_check(parse_channel("12|34|56", 6));
    v.require(pre.first_nonzero && pre.second_nonzero && pre.equal, "two orientations");
  });

  criterion(9, kBudget9, [](Verdict& v) {
    const std::vector<std::tuple<std::string, int, std::string, std::string>> expected = {
        {"12|34|567", 7, "(12_1 34_1 567_1)", "(12_1 567_1 34_1)"},
        {"12|34|5678", 8, "(12_1 34_1 5678_1)", "(12_1 5678_1 34_1)"},
        {"12|345|678", 8, "(12_1 345_1 678_1)", "(12_1 678_1 345_1)"}};
    for (const auto& [text, n, first, second] : expected) {
      auto s = parse_channel(text, n);
      auto pre = prefactor_check(s);
      v.require(pre.first == first && pre.second == second, text + " prefactor labels");
      v.require(pre.first_nonzero && pre.second_nonzero && pre.equal, text + " prefactor residues");
      auto rep = verify_factorization(s);
      v.require(rep.nonvanishing, text + " nonvanishing");
      v.require(rep.separability.separable && rep.separability.groups == rep.expected_groups, text + " separability");
      v.require(rep.wrong_order_vanishes, text + " wrong order");
      v.detail += (v.detail.empty() ? "" : ", ") + text + ": groups " + std::to_string(rep.separability.groups) +
                  (rep.overall_constant ? " constant " + tropfact::to_string(*rep.overall_constant) : " constant open");
    }
  });

  criterion(10, kBudget10, [](Verdict& v) {
    auto s = parse_channel("18|23|45|67", 8);
    auto tables = k4_channel_tables(s);
    using T = std::vector<std::pair<std::vector<int>, int>>;
    const std::vector<T> type1 = {
        {{{1, 2, 3, 5}, 1}},
        {{{1, 3, 5, 7}, 1}},
        {{{1, 3, 5, 8}, 1}},
        {{{1, 3, 6, 7}, 1}},
        {{{1, 3, 7, 8}, 1}},
        {{{1, 4, 5, 7}, 1}},
        {{{1, 5, 6, 7}, 1}},
        {{{2, 3, 5, 7}, 1}},
        {{{3, 4, 5, 7}, 1}},
        {{{1, 3, 5, 7}, -1}, {{1, 2, 3, 5}, 1}, {{1, 3, 6, 7}, 1}, {{1, 4, 5, 7}, 1}},
        {{{1, 3, 5, 7}, -1}, {{1, 3, 5, 8}, 1}, {{1, 3, 6, 7}, 1}, {{1, 4, 5, 7}, 1}},
        {{{1, 3, 5, 7}, -1}, {{1, 3, 5, 8}, 1}, {{1, 3, 6, 7}, 1}, {{2, 3, 5, 7}, 1}},
        {{{1, 3, 5, 7}, -1}, {{1, 3, 5, 8}, 1}, {{1, 4, 5, 7}, 1}, {{2, 3, 5, 7}, 1}},
        {{{1, 3, 5, 7}, -1}, {{1, 3, 6, 7}, 1}, {{1, 4, 5, 7}, 1}, {{2, 3, 5, 7}, 1}},
        {{{1, 3, 5, 7}, -1}, {{1, 3, 7, 8}, 1}, {{1, 4, 5, 7}, 1}, {{2, 3, 5, 7}, 1}},
        {{{1, 3, 5, 7}, -1}, {{1, 3, 5, 8}, 1}, {{1, 5, 6, 7}, 1}, {{2, 3, 5, 7}, 1}},
        {{{1, 3, 5, 7}, -1}, {{1, 3, 5, 8}, 1}, {{1, 3, 6, 7}, 1}, {{3, 4, 5, 7}, 1}},
        {{{1, 3, 5, 7}, -2}, {{1, 3, 5, 8}, 1}, {{1, 3, 6, 7}, 1}, {{1, 4, 5, 7}, 1}, {{2, 3, 5, 7}, 1}}};
    const std::vector<T> type2 = {
        {{{1, 2, 3, 5}, 1}},
        {{{3, 4, 5, 7}, 1}},
        {{{1, 3, 5, 8}, 1}},
        {{{1, 3, 7, 8}, 1}},
        {{{1, 4, 5, 7}, 1}},
        {{{1, 4, 5, 8}, 1}},
        {{{1, 5, 6, 7}, 1}},
        {{{1, 3, 5, 7}, -1}, {{1, 3, 5, 8}, 1}, {{1, 3, 6, 7}, 1}, {{3, 4, 5, 7}, 1}},
        {{{1, 3, 5, 7}, -1}, {{1, 3, 5, 8}, 1}, {{1, 4, 5, 7}, 1}, {{2, 3, 5, 7}, 1}},
        {{{1, 2, 3, 5}, 1}, {{1, 3, 5, 7}, -1}, {{1, 3, 6, 7}, 1}, {{1, 4, 5, 7}, 1}},
        {{{1, 3, 5, 7}, -1}, {{1, 3, 5, 8}, 1}, {{1, 3, 6, 7}, 1}, {{1, 4, 5, 7}, 1}},
        {{{1, 3, 5, 7}, -1}, {{1, 3, 7, 8}, 1}, {{1, 4, 5, 7}, 1}, {{2, 3, 5, 7}, 1}},
        {{{1, 2, 3, 5}, 1}, {{1, 3, 5, 8}, -1}, {{1, 3, 7, 8}, 1}, {{1, 4, 5, 8}, 1}},
        {{{1, 3, 5, 7}, -1}, {{1, 3, 5, 8}, 1}, {{1, 5, 6, 7}, 1}, {{2, 3, 5, 7}, 1}},
        {{{1, 4, 5, 7}, -1}, {{1, 4, 5, 8}, 1}, {{1, 5, 6, 7}, 1}, {{3, 4, 5, 7}, 1}},
        {{{1, 3, 5, 7}, -2}, {{1, 3, 5, 8}, 1}, {{1, 3, 6, 7}, 1}, {{1, 4, 5, 7}, 1}, {{2, 3, 5, 7}, 1}},
        {{{1, 2, 3, 5}, 1}, {{1, 3, 5, 7}, -1}, {{1, 3, 6, 7}, 1}, {{1, 4, 5, 8}, 1}, {{3, 4, 5, 7}, 1}},
        {{{1, 3, 5, 7}, -1}, {{1, 3, 7, 8}, 1}, {{1, 4, 5, 8}, 1}, {{1, 5, 6, 7}, 1}, {{2, 3, 5, 7}, 1}}};
    std::vector<KinematicForm> f1, f2;
    for (const auto& row : type1) f1.push_back(eta_sum(8, row));
    for (const auto& row : type2) f2.push_back(eta_sum(8, row));
    v.require(same_form_multiset(tables.type1, f1), "type I table");
    v.require(same_form_multiset(tables.type2, f2), "type II table");

    auto singleton = verify_factorization(parse_channel("1|23|45|67", 7));
    v.require(singleton.nonvanishing, "(4,7) singleton channel nonvanishing");
    v.require(singleton.separability.separable, "(4,7) separable");

    auto rep = verify_factorization(s);
    v.require(rep.tower.size() == 9, "nine-residue tower");
    v.require(rep.nonvanishing, "(4,8) type I nonvanishing");
    v.require(rep.separability.separable && rep.separability.groups == rep.expected_groups, "(4,8) separable");
    v.detail += "(4,7) result " + singleton.result + ", (4,8) result " + rep.result;
  });

  criterion(11, kBudget11, [](Verdict& v) {
    std::size_t checked = 0;
    for (int n : {6, 7}) {
      auto subs = enumerate_nonfrozen(3, n);
      const std::size_t m = subs.size();
      std::vector<HeightVector> h;
      for (const auto& j : subs) h.push_back(height_of_subset(j));
      auto test = [&](const std::vector<std::size_t>& pick) {
        HeightVector sum(3, n);
        bool ws = true;
        for (std::size_t a = 0; a < pick.size(); ++a) {
          sum += h[pick[a]];
          for (std::size_t b = a + 1; b < pick.size(); ++b)
            ws = ws && weakly_separated_direct(subs[pick[a]], subs[pick[b]]);
        }
        ++checked;
        if (is_positroidal(subdivision_from_height(sum)) != ws) {
          std::string what = "n=" + std::to_string(n);
          for (auto p : pick) what += " " + subs[p].to_string();
          v.require(false, what);
        }
      };
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
          test({a, b});
          for (std::size_t c = b + 1; c < m; ++c) test({a, b, c});
        }
    }
    v.detail += v.ok ? std::to_string(checked) + " collections" : "";
  });

  criterion(12, kBudget12, [](Verdict& v) {
    std::size_t triples = 0;
    for (int n = 6; n <= 9; ++n)
      for (int a = 1; a <= n; ++a)
        for (int b = a + 2; b <= n; ++b)
          for (int c = b + 2; c <= n; ++c) {
            if (a + n - c < 2) continue;
            ++triples;
            auto g = [&](int x, int y, int z) { return KSubset(n, {cyc(x, n), cyc(y, n), cyc(z, n)}); };
            // the reference table
            const std::array<std::array<KSubset, 4>, 8> expected = {{
                {g(a, b, c), g(a, a + 1, c), g(a, b, b + 1), g(b, c, c + 1)},
                {g(a, b, c), g(a, b, a - 1), g(a, b, b + 1), g(b, c, c + 1)},
                {g(a, b, c), g(a, c - 1, c), g(a, a + 1, c), g(a, b, b + 1)},
                {g(a, b, c), g(a, c - 1, c), g(a, b, a - 1), g(a, b, b + 1)},
                {g(a, b, c), g(b - 1, b, c), g(a, a + 1, c), g(b, c, c + 1)},
                {g(a, b, c), g(b - 1, b, c), g(a, b, a - 1), g(b, c, c + 1)},
                {g(a, b, c), g(b - 1, b, c), g(a, c - 1, c), g(a, a + 1, c)},
                {g(a, b, c), g(b - 1, b, c), g(a, c - 1, c), g(a, b, a - 1)},
            }};
            auto rows = eight_gamma_rows(a, b, c, n);
            for (std::size_t r = 0; r < 8; ++r) {
              std::set<KSubset> want(expected[r].begin(), expected[r].end()), got(rows[r].begin(), rows[r].end());
              if (want != got) v.require(false, "row table at " + g(a, b, c).to_string());
              std::vector<GridVector> fs;
              for (std::size_t i = 0; i < 4; ++i) {
                fs.push_back(positive_root_vector(expected[r][i]).vector);
                for (std::size_t j = i + 1; j < 4; ++j)
                  if (!weakly_separated_direct(expected[r][i], expected[r][j]))
                    v.require(false, "weak separation at " + g(a, b, c).to_string());
              }
              if (!simultaneously_minimizable(fs)) v.require(false, "minimizable at " + g(a, b, c).to_string());
            }
          }
    // eight product faces of codimension 3 at (3,6), {1,3,5}: N_{3,4} is a point
    auto face = newton_face(positive_root_vector(KSubset(6, {1, 3, 5})).vector);
    auto poly = face_polytope(face);
    auto lattice = face_lattice(poly.cone);
    std::size_t products = 0;
    auto faces = faces_of_dimension(lattice, face.dimension - 3);
    for (const auto& f : faces)
      if (face_f_vector(lattice, f) == product_f_vector({{1}, {1}, {1}})) ++products;
    v.require(faces.size() == 8 && products == 8, "eight product faces at (3,6)");
    v.detail += std::to_string(triples) + " triples";
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
