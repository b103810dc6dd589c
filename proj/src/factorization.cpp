#include "tropfact/factorization.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "tropfact/linalg.hpp"
#include "tropfact/subdivision.hpp"
#include "tropfact/tropical.hpp"

namespace tropfact {

namespace {

std::uint64_t mask(const std::vector<int>& elements) {
  std::uint64_t m = 0;
  for (int e : elements) m |= std::uint64_t{1} << (e - 1);
  return m;
}

Propagator propagator_of(const Dosp& d) {
  Dosp c = d.canonical();
  return {c.to_string(), height_of_dosp(c), eta_of_dosp(c)};
}

QMatrix planar_matrix(const std::vector<Propagator>& items) {
  if (items.empty()) return {};
  const auto& basis = planar_basis(items.front().form.k, items.front().form.n);
  QMatrix m(basis.nonfrozen().size(), items.size());
  for (std::size_t c = 0; c < items.size(); ++c) {
    QVector p = planar_coordinates(items[c].form);
    for (std::size_t r = 0; r < p.size(); ++r) m(r, c) = p[r];
  }
  return m;
}

QVector coordinates_in(const QMatrix& basis_matrix, const HeightVector& h) {
  QVector target = planar_basis(h.k, h.n).expand(h).planar;
  auto x = solve(basis_matrix, target);
  if (!x) throw std::invalid_argument("height is not in the span of the channel basis");
  return *x;
}

QVector to_q(const IVector& v) { return QVector(v.begin(), v.end()); }

}  // namespace

ChannelSpec::ChannelSpec(int n, std::vector<std::vector<int>> blocks) : n_(n) {
  if (blocks.size() < 2) throw std::invalid_argument("channel needs at least two blocks");
  std::uint64_t seen = 0;
  for (auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("channel: empty block");
    for (int e : b)
      if (e < 1 || e > n) throw std::invalid_argument("channel: element out of range");
    std::uint64_t m = mask(b);
    if (std::popcount(m) != static_cast<int>(b.size()) || (seen & m))
      throw std::invalid_argument("channel: blocks overlap");
    if (!is_cyclic_interval(m, n)) throw std::invalid_argument("channel: block is not a cyclic interval");
    seen |= m;
    b = cyclic_interval_order(b, n);
  }
  if (seen != (n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1))
    throw std::invalid_argument("channel: blocks do not cover 1..n");
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const auto& next = blocks[(j + 1) % blocks.size()];
    if (cyc(blocks[j].back() + 1, n) != next.front())
      throw std::invalid_argument("channel: blocks are not in cyclic order");
  }
  auto first = std::find_if(blocks.begin(), blocks.end(),
                            [](const std::vector<int>& b) { return std::find(b.begin(), b.end(), 1) != b.end(); });
  std::rotate(blocks.begin(), first, blocks.end());
  blocks_ = std::move(blocks);
}

int ChannelSpec::d() const {
  return static_cast<int>(std::count_if(blocks_.begin(), blocks_.end(), [](const auto& b) { return b.size() >= 2; }));
}

Dosp ChannelSpec::lumping(const std::vector<std::vector<int>>& runs) const {
  std::vector<DospBlock> out;
  for (const auto& run : runs) {
    DospBlock b;
    for (int i : run) {
      const auto& s = blocks_[static_cast<std::size_t>(i)];
      b.elements.insert(b.elements.end(), s.begin(), s.end());
    }
    b.r = static_cast<int>(run.size());
    out.push_back(std::move(b));
  }
  return Dosp(n_, std::move(out)).canonical();
}

Dosp ChannelSpec::dosp() const {
  std::vector<std::vector<int>> runs;
  for (int i = 0; i < k(); ++i) runs.push_back({i});
  return lumping(runs);
}

std::string ChannelSpec::to_string() const {
  std::string s;
  for (std::size_t j = 0; j < blocks_.size(); ++j) {
    if (j) s += '|';
    bool commas = n_ >= 10;
    for (std::size_t t = 0; t < blocks_[j].size(); ++t) {
      if (t && commas) s += ',';
      s += std::to_string(blocks_[j][t]);
    }
  }
  return s;
}

ChannelSpec parse_channel(const std::string& text, int n) {
  std::vector<std::vector<int>> blocks;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '|')) {
    std::vector<int> b;
    if (part.find(',') != std::string::npos) {
      std::stringstream ps(part);
      std::string e;
      while (std::getline(ps, e, ',')) b.push_back(std::stoi(e));
    } else {
      for (char c : part) {
        if (c < '0' || c > '9') throw std::invalid_argument("channel: bad element in '" + part + "'");
        b.push_back(c - '0');
      }
    }
    blocks.push_back(std::move(b));
  }
  return ChannelSpec(n, std::move(blocks));
}

ChannelSpec channel_from_subset(const KSubset& j) {
  auto e = j.elements();
  const int n = j.n();
  std::vector<std::vector<int>> blocks;
  for (std::size_t t = 0; t < e.size(); ++t) {
    int prev = e[(t + e.size() - 1) % e.size()];
    std::vector<int> b;
    for (int x = cyc(prev + 1, n);; x = cyc(x + 1, n)) {
      b.push_back(x);
      if (x == e[t]) break;
    }
    blocks.push_back(std::move(b));
  }
  return ChannelSpec(n, std::move(blocks));
}

std::vector<Dosp> x_collection(const ChannelSpec& s) {
  const int k = s.k();
  std::vector<Dosp> out;
  for (int len = 2; len <= k - 1; ++len)
    for (int a = 0; a < k; ++a) {
      std::vector<std::vector<int>> runs(1);
      for (int t = 0; t < len; ++t) runs[0].push_back((a + t) % k);
      for (int t = len; t < k; ++t) runs.push_back({(a + t) % k});
      out.push_back(s.lumping(runs));
    }
  return out;
}

std::vector<Dosp> hatx_collection(const ChannelSpec& s) {
  const int k = s.k();
  // cut b separates block b from block b+1
  std::vector<std::pair<int, unsigned>> cut_sets;
  for (unsigned cuts = 0; cuts < (1U << k); ++cuts)
    if (std::popcount(cuts) >= 2) cut_sets.push_back({-std::popcount(cuts), cuts});
  std::stable_sort(cut_sets.begin(), cut_sets.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Dosp> out;
  for (const auto& [neg, cuts] : cut_sets) {
    int start = std::countr_zero(cuts) + 1;
    std::vector<std::vector<int>> runs(1);
    for (int t = 0; t < k; ++t) {
      int b = (start + t) % k;
      runs.back().push_back(b);
      if (((cuts >> b) & 1U) && t + 1 < k) runs.emplace_back();
    }
    out.push_back(s.lumping(runs));
  }
  return out;
}

bool five_blade_relation(const ChannelSpec& s) {
  if (s.k() != 3) throw std::invalid_argument("five-blade relation needs three blocks");
  KinematicForm lhs = eta_of_dosp(s.dosp()) + eta_of_dosp(s.lumping({{0}, {2}, {1}}));
  KinematicForm rhs = eta_of_dosp(s.lumping({{0}, {1, 2}})) + eta_of_dosp(s.lumping({{1}, {2, 0}}));
  rhs += eta_of_dosp(s.lumping({{2}, {0, 1}}));
  return lhs == rhs;
}

PropagatorSet make_propagator_set(std::vector<Propagator> items) {
  PropagatorSet set;
  set.items = std::move(items);
  if (set.items.empty()) return set;
  QMatrix m = planar_matrix(set.items);
  set.relations = nullspace(m);
  set.rank = set.items.size() - set.relations.size();
  return set;
}

PropagatorSet n_collection(const ChannelSpec& s) {
  std::vector<Propagator> items;
  for (const auto& t : x_collection(s)) {
    Propagator p = propagator_of(t);
    if (p.form.is_zero()) continue;
    if (std::any_of(items.begin(), items.end(), [&](const Propagator& q) { return q.form == p.form; })) continue;
    items.push_back(std::move(p));
  }
  return make_propagator_set(std::move(items));
}

PropagatorSet residue_tower(const ChannelSpec& s) {
  std::vector<Propagator> items;
  Propagator top = propagator_of(s.dosp());
  if (!top.form.is_zero()) items.push_back(top);
  for (auto& p : n_collection(s).items)
    if (std::none_of(items.begin(), items.end(), [&](const Propagator& q) { return q.form == p.form; }))
      items.push_back(std::move(p));
  return make_propagator_set(std::move(items));
}

std::vector<std::pair<std::string, Dosp>> k4_dictionary(const ChannelSpec& s) {
  if (s.k() != 4 || s.d() != 4) throw std::invalid_argument("k4 tables need four blocks of size at least two");
  // block i of the template stands for the pair {2i, 2i+1} of (18,23,45,67)
  const std::vector<std::pair<std::string, std::vector<std::vector<int>>>> templates = {
      {"1235", {{0, 1, 3}, {2}}},      {"1357", {{0}, {1}, {2}, {3}}}, {"1358", {{3, 0}, {1}, {2}}},
      {"1367", {{0}, {1}, {2, 3}}},    {"1378", {{2, 3, 0}, {1}}},     {"1457", {{0}, {1, 2}, {3}}},
      {"1567", {{0}, {1, 2, 3}}},      {"2357", {{0, 1}, {2}, {3}}},   {"2367", {{0, 1}, {2, 3}}},
      {"3457", {{0, 1, 2}, {3}}},      {"1458", {{3, 0}, {1, 2}}},
  };
  std::vector<std::pair<std::string, Dosp>> out;
  for (const auto& [label, runs] : templates) out.push_back({label, s.lumping(runs)});
  return out;
}

namespace {

const char* const kType1[18] = {
    "1235", "1357", "1358", "1367", "1378", "1457", "1567", "2357", "3457",
    "-1357+1235+1367+1457", "-1357+1358+1367+1457", "-1357+1358+1367+2357",
    "-1357+1358+1457+2357", "-1357+1367+1457+2357", "-1357+1378+1457+2357",
    "-1357+1358+1567+2357", "-1357+1358+1367+3457", "-2*1357+1358+1367+1457+2357",
};

const char* const kType2[18] = {
    "1235", "3457", "1358", "1378", "1457", "1458", "1567",
    "-1357+1358+1367+3457", "-1357+1358+1457+2357",
    "1235-1357+1367+1457", "-1357+1358+1367+1457", "-1357+1378+1457+2357",
    "1235-1358+1378+1458", "-1357+1358+1567+2357", "-1457+1458+1567+3457",
    "-2*1357+1358+1367+1457+2357", "1235-1357+1367+1458+3457", "-1357+1378+1458+1567+2357",
};

std::vector<std::pair<int, std::string>> parse_combination(const std::string& text) {
  std::vector<std::pair<int, std::string>> terms;
  std::size_t i = 0;
  while (i < text.size()) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') sign = text[i++] == '-' ? -1 : 1;
    int coef = 1;
    std::size_t star = text.find('*', i);
    std::size_t next = text.find_first_of("+-", i);
    if (star != std::string::npos && star < next) {
      coef = std::stoi(text.substr(i, star - i));
      i = star + 1;
      next = text.find_first_of("+-", i);
    }
    std::size_t end = next == std::string::npos ? text.size() : next;
    terms.push_back({sign * coef, text.substr(i, end - i)});
    i = end;
  }
  return terms;
}

PropagatorSet build_table(const char* const (&rows)[18], const std::map<std::string, Propagator>& dict, int k,
                          int n) {
  std::vector<Propagator> items;
  for (const char* row : rows) {
    Propagator p{row, HeightVector(k, n), KinematicForm{}};
    bool first = true;
    for (const auto& [c, label] : parse_combination(row)) {
      const Propagator& base = dict.at(label);
      p.height += Rational(c) * base.height;
      p.form = first ? Rational(c) * base.form : p.form + Rational(c) * base.form;
      first = false;
    }
    items.push_back(std::move(p));
  }
  return make_propagator_set(std::move(items));
}

}  // namespace

K4Tables k4_channel_tables(const ChannelSpec& s) {
  std::map<std::string, Propagator> dict;
  for (const auto& [label, d] : k4_dictionary(s)) dict[label] = propagator_of(d);
  return {build_table(kType1, dict, 4, s.n()), build_table(kType2, dict, 4, s.n())};
}

HeightVector ChannelCone::height(const QVector& c) const {
  HeightVector h(basis.front().k, basis.front().n);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!is_zero(c[i])) h += c[i] * basis[i];
  return h;
}

std::vector<Propagator> channel_basis(const ChannelSpec& s) {
  auto tower = residue_tower(s).items;
  std::vector<Propagator> out;
  if (tower.empty()) return out;
  RowReducer reducer(planar_basis(s.k(), s.n()).nonfrozen().size());
  for (auto& p : tower)
    if (reducer.add(planar_coordinates(p.form))) out.push_back(std::move(p));
  return out;
}

namespace {

ChannelCone cone_over(const std::vector<Propagator>& basis, std::vector<HeightVector> generators) {
  ChannelCone c;
  for (const auto& p : basis) {
    c.basis.push_back(p.height);
    c.basis_labels.push_back(p.label);
  }
  QMatrix bm = planar_matrix(basis);
  std::vector<QVector> coords;
  for (const auto& g : generators) coords.push_back(coordinates_in(bm, g));
  c.cone = cone_from_generators(basis.size(), coords);
  c.generators = std::move(generators);
  return c;
}

}  // namespace

ChannelCone factorization_cone(const ChannelSpec& s) {
  auto basis = channel_basis(s);
  if (basis.empty()) throw std::invalid_argument("channel has no nonzero blades");
  std::vector<HeightVector> gens;
  if (s.k() == 3 && s.d() == 3) {
    gens.push_back(height_of_dosp(s.dosp()));
    gens.push_back(height_of_dosp(s.lumping({{0}, {2}, {1}})));
    for (const auto& t : x_collection(s)) gens.push_back(height_of_dosp(t));
  } else if (s.k() == 4 && s.d() == 4) {
    for (const auto& p : k4_channel_tables(s).type1.items) gens.push_back(p.height);
  } else if (s.d() == s.k() && s.k() >= 5) {
    HeightVector star(s.k(), s.n());
    for (const auto& p : basis) star += p.height;
    ChannelCone c = plucker_cone(basis, star);
    for (const auto& r : c.cone.rays) c.generators.push_back(c.height(to_q(r)));
    return c;
  } else {
    for (const auto& p : residue_tower(s).items) gens.push_back(p.height);
  }
  return cone_over(basis, std::move(gens));
}

namespace {

struct RestrictedRelation {
  QVector a;  // alpha - beta
  QVector b;  // alpha - gamma
};

std::vector<RestrictedRelation> restrict_relations(const std::vector<HeightVector>& basis) {
  const int k = basis.front().k, n = basis.front().n;
  std::set<std::pair<QVector, QVector>> seen;
  std::vector<RestrictedRelation> out;
  for (const auto& t : three_term_relations(k, n)) {
    RestrictedRelation r{QVector(basis.size()), QVector(basis.size())};
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto& h = basis[i].coeffs;
      Rational alpha = h[t.ac] + h[t.bd];
      r.a[i] = alpha - h[t.ab] - h[t.cd];
      r.b[i] = alpha - h[t.ad] - h[t.bc];
    }
    if (is_zero(r.a) && is_zero(r.b)) continue;
    if (seen.insert({r.a, r.b}).second) out.push_back(std::move(r));
  }
  return out;
}

QVector negated(QVector v) {
  for (auto& x : v) x = -x;
  return v;
}

ChannelCone plucker_cone_from(const std::vector<Propagator>& basis, const std::vector<RestrictedRelation>& rels,
                              const QVector& point) {
  std::set<IVector> ineq_set, eq_set;
  for (const auto& r : rels) {
    Rational a = dot(r.a, point), b = dot(r.b, point);
    if (sgn(a) > 0 || sgn(b) > 0 || (sgn(a) != 0 && sgn(b) != 0))
      throw std::invalid_argument("point is not a positive tropical Plucker vector");
    if (sgn(a) == 0 && !is_zero(r.a)) eq_set.insert(primitive_integer(r.a));
    if (sgn(b) == 0 && !is_zero(r.b)) eq_set.insert(primitive_integer(r.b));
    if (sgn(a) == 0 && sgn(b) != 0) ineq_set.insert(primitive_integer(negated(r.b)));
    if (sgn(b) == 0 && sgn(a) != 0) ineq_set.insert(primitive_integer(negated(r.a)));
  }
  std::vector<QVector> ineqs, eqs;
  for (const auto& v : ineq_set) ineqs.push_back(to_q(v));
  for (const auto& v : eq_set) eqs.push_back(to_q(v));
  ChannelCone c;
  for (const auto& p : basis) {
    c.basis.push_back(p.height);
    c.basis_labels.push_back(p.label);
  }
  c.cone = cone_from_inequalities(basis.size(), ineqs, eqs);
  return c;
}

}  // namespace

ChannelCone plucker_cone(const std::vector<Propagator>& basis, const HeightVector& pi) {
  if (basis.empty()) throw std::invalid_argument("plucker_cone: empty basis");
  std::vector<HeightVector> heights;
  for (const auto& p : basis) heights.push_back(p.height);
  QVector point = coordinates_in(planar_matrix(basis), pi);
  return plucker_cone_from(basis, restrict_relations(heights), point);
}

Cone balancing_cone() {
  // c12, c13, c21, c23, c31, c32
  std::vector<QVector> eqs = {
      {1, 1, -1, 0, -1, 0},
      {-1, 0, 1, 1, 0, -1},
      {0, -1, 0, -1, 1, 1},
  };
  std::vector<QVector> ineqs;
  for (std::size_t i = 0; i < 6; ++i) {
    QVector e(6);
    e[i] = 1;
    ineqs.push_back(e);
  }
  return cone_from_inequalities(6, ineqs, eqs);
}

std::optional<QVector> first_nonpositive_sample(const ChannelCone& c, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(0, 5);
  const auto& rays = c.cone.rays;
  for (std::size_t s = 0; s < samples; ++s) {
    QVector point(c.basis.size());
    for (const auto& r : rays) {
      int w = coef(rng);
      if (s % 2 == 1 && coef(rng) < 3) w = 0;  // sparse samples land on faces
      for (std::size_t i = 0; i < point.size(); ++i) point[i] += w * r[i];
    }
    if (!is_positive_tropical_plucker(c.height(point))) return point;
  }
  return std::nullopt;
}

FanSection fan_section(const std::vector<Propagator>& basis, int bound) {
  FanSection out;
  out.coefficient_bound = static_cast<std::size_t>(bound);
  std::vector<HeightVector> heights;
  for (const auto& p : basis) heights.push_back(p.height);
  auto rels = restrict_relations(heights);
  const std::size_t m = basis.size();
  // scale each restricted relation to integers for the enumeration
  std::vector<std::vector<long long>> ia, ib;
  for (const auto& r : rels) {
    QVector both = r.a;
    both.insert(both.end(), r.b.begin(), r.b.end());
    Integer den = 1;
    for (const auto& x : both) den = lcm(den, Integer(x.get_den()));
    std::vector<long long> va(m), vb(m);
    for (std::size_t i = 0; i < m; ++i) {
      va[i] = Integer(r.a[i] * den).get_si();
      vb[i] = Integer(r.b[i] * den).get_si();
    }
    ia.push_back(va);
    ib.push_back(vb);
  }
  std::vector<std::size_t> order(rels.size());
  std::iota(order.begin(), order.end(), 0);
  std::map<std::vector<std::uint8_t>, QVector> signatures;
  std::vector<int> c(m, -bound);
  std::vector<std::uint8_t> sig(rels.size());
  for (;;) {
    int g = 0;
    for (int x : c) g = std::gcd(g, std::abs(x));
    if (g == 1) {
      ++out.combinations_tested;
      bool ok = true;
      for (std::size_t pos = 0; pos < order.size(); ++pos) {
        std::size_t r = order[pos];
        long long a = 0, b = 0;
        for (std::size_t i = 0; i < m; ++i) {
          a += ia[r][i] * c[i];
          b += ib[r][i] * c[i];
        }
        if (a > 0 || b > 0 || (a != 0 && b != 0)) {
          ok = false;
          if (pos > 0) std::swap(order[pos], order[pos - 1]);
          break;
        }
        sig[r] = static_cast<std::uint8_t>((a == 0 ? 1 : 0) | (b == 0 ? 2 : 0));
      }
      if (ok) {
        ++out.positive_points;
        signatures.try_emplace(sig, QVector(c.begin(), c.end()));
      }
    }
    std::size_t i = 0;
    while (i < m && c[i] == bound) c[i++] = -bound;
    if (i == m) break;
    ++c[i];
  }
  // a signature with a minimal set of ties marks the interior of a maximal cone
  auto refines = [](const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    for (std::size_t r = 0; r < a.size(); ++r)
      if ((a[r] & b[r]) != a[r]) return false;
    return true;
  };
  std::vector<const std::pair<const std::vector<std::uint8_t>, QVector>*> minimal;
  for (const auto& entry : signatures) {
    bool is_min = std::none_of(signatures.begin(), signatures.end(), [&](const auto& other) {
      return other.first != entry.first && refines(other.first, entry.first);
    });
    if (is_min) minimal.push_back(&entry);
  }
  std::set<IVector> rays;
  for (const auto* entry : minimal) {
    ChannelCone cc = plucker_cone_from(basis, rels, entry->second);
    for (const auto& r : cc.cone.rays) rays.insert(r);
    out.maximal_cones.push_back(std::move(cc.cone));
  }
  out.rays.assign(rays.begin(), rays.end());
  return out;
}

namespace {

void require_totally_nonfrozen(int a, int b, int c, int n) {
  if (!(1 <= a && a < b && b < c && c <= n)) throw std::invalid_argument("need 1 <= i < j < k <= n");
  if (b - a < 2 || c - b < 2 || a + n - c < 2) throw std::invalid_argument("indices are cyclically adjacent");
}

KSubset triple(int a, int b, int c, int n) {
  std::vector<int> e = {cyc(a, n), cyc(b, n), cyc(c, n)};
  std::sort(e.begin(), e.end());
  return KSubset(n, e);
}

}  // namespace

std::array<std::array<KSubset, 4>, 8> eight_gamma_rows(int j1, int j2, int j3, int n) {
  require_totally_nonfrozen(j1, j2, j3, n);
  const KSubset g = triple(j1, j2, j3, n);
  const KSubset a = triple(j1, j1 + 1, j3, n);   // gamma_{j1, j1+1, j3}
  const KSubset b = triple(j1, j2, j2 + 1, n);   // gamma_{j1, j2, j2+1}
  const KSubset c = triple(j2, j3, j3 + 1, n);   // gamma_{j2, j3, j3+1}
  const KSubset d = triple(j1, j2, j1 - 1, n);   // gamma_{j1, j2, j1-1}
  const KSubset e = triple(j1, j3 - 1, j3, n);   // gamma_{j1, j3-1, j3}
  const KSubset f = triple(j2 - 1, j2, j3, n);   // gamma_{j2-1, j2, j3}
  return {{{g, a, b, c}, {g, d, b, c}, {g, e, a, b}, {g, e, d, b},
           {g, f, a, c}, {g, f, d, c}, {g, f, e, a}, {g, f, e, d}}};
}

std::vector<KSubset> split3_summands(int i, int j, int k, int n) {
  require_totally_nonfrozen(i, j, k, n);
  std::vector<KSubset> out = {triple(i, j, k, n)};
  for (int t = k + 2; t <= i - 1 + n; ++t) out.push_back(triple(t, j, k, n));
  for (int t = i + 2; t <= j - 1; ++t) out.push_back(triple(i, t, k, n));
  for (int t = j + 2; t <= k - 1; ++t) out.push_back(triple(i, j, t, n));
  return out;
}

HeightVector split3_vector(int i, int j, int k, int n) {
  HeightVector pi(3, n);
  for (const auto& s : split3_summands(i, j, k, n)) pi += height_of_subset(s);
  return pi;
}

NoncrossingRay ray_from_noncrossing(const std::vector<KSubset>& collection) {
  if (collection.size() < 2) throw std::invalid_argument("need at least two subsets");
  for (std::size_t a = 0; a < collection.size(); ++a)
    for (std::size_t b = a + 1; b < collection.size(); ++b)
      if (!is_noncrossing(collection[a], collection[b]))
        throw std::invalid_argument(collection[a].to_string() + " and " + collection[b].to_string() + " cross");
  const int k = collection.front().k(), n = collection.front().n();
  GridVector y(k, n);
  for (const auto& j : collection) y += positive_root_vector(j).vector;
  NoncrossingRay out;
  out.pi = trop_plucker(y);
  out.planar = planar_basis(k, n).expand(out.pi).planar;
  out.incompatibility = incompatibility_graph(collection);
  out.is_ray = is_coarsest(out.pi);
  return out;
}

}  // namespace tropfact
