#include "tropfact/amplitude.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "tropfact/linalg.hpp"
#include "tropfact/parallel.hpp"

namespace tropfact {

namespace {

using IntVec = std::vector<int>;

// Exponent vectors of every P_J projected to gauge coordinates, deduplicated.
struct Projected {
  int k = 0, n = 0;
  std::size_t dim = 0;
  std::vector<std::vector<IntVec>> mons;
};

const Projected& projected(int k, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<Projected>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{k, n}];
  if (slot) return *slot;
  const auto& table = monomial_table(k, n);
  auto p = std::make_unique<Projected>();
  p->k = k;
  p->n = n;
  const int cols = n - k;
  p->dim = static_cast<std::size_t>((k - 1) * (cols - 1));
  for (const auto& list : table.monomials) {
    std::set<IntVec> distinct;
    for (const auto& e : list) {
      IntVec v(p->dim);
      for (int i = 0; i < k - 1; ++i)
        for (int j = 1; j < cols; ++j) v[i * (cols - 1) + (j - 1)] = e[i * cols + j];
      distinct.insert(v);
    }
    p->mons.emplace_back(distinct.begin(), distinct.end());
  }
  slot = std::move(p);
  return *slot;
}

Rational dot_int(const IntVec& m, const QVector& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] != 0) s += m[i] * y[i];
  return s;
}

QVector to_q(const IVector& v) { return QVector(v.begin(), v.end()); }

using Choice = std::vector<std::uint16_t>;

// Per J the monomial minimizing the lexicographic list of functionals; nullopt on a tie.
std::optional<Choice> choose(const Projected& p, const std::vector<QVector>& lex) {
  Choice c(p.mons.size());
  for (std::size_t j = 0; j < p.mons.size(); ++j) {
    const auto& list = p.mons[j];
    std::vector<std::size_t> best = {0};
    for (std::size_t t = 1; t < list.size(); ++t) best.push_back(t);
    for (const auto& y : lex) {
      if (best.size() == 1) break;
      Rational lo = dot_int(list[best[0]], y);
      std::vector<std::size_t> keep = {best[0]};
      for (std::size_t b = 1; b < best.size(); ++b) {
        Rational v = dot_int(list[best[b]], y);
        if (v < lo) {
          lo = v;
          keep = {best[b]};
        } else if (v == lo) {
          keep.push_back(best[b]);
        }
      }
      best = keep;
    }
    if (best.size() != 1) return std::nullopt;
    c[j] = static_cast<std::uint16_t>(best[0]);
  }
  return c;
}

Cone cone_of_choice(const Projected& p, const Choice& c) {
  std::set<IVector> ineqs;
  for (std::size_t j = 0; j < p.mons.size(); ++j) {
    const auto& list = p.mons[j];
    for (std::size_t t = 0; t < list.size(); ++t) {
      if (t == c[j]) continue;
      QVector d(p.dim);
      for (std::size_t i = 0; i < p.dim; ++i) d[i] = list[t][i] - list[c[j]][i];
      ineqs.insert(primitive_integer(d));
    }
  }
  std::vector<QVector> rows;
  for (const auto& a : ineqs) rows.push_back(to_q(a));
  Cone cone = cone_from_inequalities(p.dim, rows);
  if (cone.dimension() != p.dim || !cone.pointed())
    throw std::runtime_error("build_fan: cone of linearity is not full-dimensional and pointed");
  return cone;
}

// The choice on the other side of facet a: per J, the tied monomial that
// decreases fastest across the facet.
Choice cross(const Projected& p, const Choice& c, const IVector& a) {
  Choice out = c;
  std::size_t lead = 0;
  while (sgn(a[lead]) == 0) ++lead;
  for (std::size_t j = 0; j < p.mons.size(); ++j) {
    const auto& list = p.mons[j];
    Rational best = 0;
    for (std::size_t t = 0; t < list.size(); ++t) {
      if (t == c[j]) continue;
      Rational lambda = frac(Integer(list[t][lead] - list[c[j]][lead]), a[lead]);
      if (sgn(lambda) <= 0) continue;
      bool prop = true;
      for (std::size_t i = 0; i < p.dim && prop; ++i) prop = list[t][i] - list[c[j]][i] == lambda * a[i];
      if (prop && lambda > best) {
        best = lambda;
        out[j] = static_cast<std::uint16_t>(t);
      }
    }
  }
  return out;
}

// Pulling triangulation of the cone over rays[ids] of dimension d.
void pull(std::size_t ambient, const std::vector<IVector>& rays, const std::vector<std::size_t>& ids, std::size_t d,
          std::vector<std::vector<std::size_t>>& out) {
  if (ids.size() == d) {
    out.push_back(ids);
    return;
  }
  std::vector<QVector> gens;
  for (auto i : ids) gens.push_back(to_q(rays[i]));
  Cone c = cone_from_generators(ambient, gens);
  std::vector<std::size_t> local(c.rays.size());
  for (std::size_t r = 0; r < c.rays.size(); ++r) {
    auto it = std::find_if(ids.begin(), ids.end(), [&](std::size_t i) { return rays[i] == c.rays[r]; });
    if (it == ids.end()) throw std::logic_error("pull: generator is not extreme");
    local[r] = *it;
  }
  const std::size_t apex = ids.front();
  const auto inc = c.facet_incidence();
  for (const auto& facet : inc) {
    std::vector<std::size_t> sub;
    bool has_apex = false;
    for (auto r : facet.indices()) {
      sub.push_back(local[r]);
      has_apex = has_apex || local[r] == apex;
    }
    if (has_apex) continue;
    std::sort(sub.begin(), sub.end());
    std::vector<std::vector<std::size_t>> part;
    pull(ambient, rays, sub, d - 1, part);
    for (auto& s : part) {
      s.push_back(apex);
      out.push_back(std::move(s));
    }
  }
}

struct CellResult {
  Cone cone;
  std::vector<Choice> neighbours;
  std::vector<std::vector<IVector>> simplices;
  std::vector<Integer> dets;
};

CellResult process_cell(const Projected& p, const Choice& c, const std::optional<IVector>& pivot) {
  CellResult res;
  res.cone = cone_of_choice(p, c);
  for (const auto& a : res.cone.facets) {
    if (pivot) {
      Integer s = 0;
      for (std::size_t i = 0; i < p.dim; ++i) s += a[i] * (*pivot)[i];
      if (sgn(s) != 0) continue;
    }
    res.neighbours.push_back(cross(p, c, a));
  }
  std::vector<std::size_t> ids(res.cone.rays.size());
  std::iota(ids.begin(), ids.end(), 0);
  // pull from the pivot ray first when there is one, so the star stays coherent
  if (pivot) {
    auto it = std::find(res.cone.rays.begin(), res.cone.rays.end(), *pivot);
    if (it != res.cone.rays.end()) std::rotate(ids.begin(), ids.begin() + (it - res.cone.rays.begin()), ids.begin() + (it - res.cone.rays.begin()) + 1);
  }
  std::vector<std::vector<std::size_t>> simplices;
  pull(p.dim, res.cone.rays, ids, p.dim, simplices);
  for (const auto& s : simplices) {
    QMatrix m(p.dim, p.dim);
    std::vector<IVector> rs;
    for (std::size_t col = 0; col < s.size(); ++col) {
      rs.push_back(res.cone.rays[s[col]]);
      for (std::size_t r = 0; r < p.dim; ++r) m(r, col) = res.cone.rays[s[col]][r];
    }
    Rational det = determinant(m);
    if (sgn(det) == 0) throw std::logic_error("pull: degenerate simplex");
    res.simplices.push_back(std::move(rs));
    res.dets.push_back(Rational(abs(det)).get_num());
  }
  return res;
}

LinearFan walk(const Projected& p, const Choice& start, const std::optional<IVector>& pivot) {
  LinearFan fan;
  fan.k = p.k;
  fan.n = p.n;
  fan.dim = p.dim;
  std::set<Choice> seen = {start};
  std::vector<Choice> frontier = {start};
  std::map<IVector, std::size_t> ray_index;
  while (!frontier.empty()) {
    std::vector<CellResult> results(frontier.size());
    parallel_for(frontier.size(), [&](std::size_t i) { results[i] = process_cell(p, frontier[i], pivot); });
    std::vector<Choice> next;
    for (auto& r : results) {
      FanCone fc;
      auto id = [&](const IVector& v) {
        auto [it, inserted] = ray_index.try_emplace(v, fan.rays.size());
        if (inserted) fan.rays.push_back(v);
        return it->second;
      };
      for (const auto& v : r.cone.rays) fc.rays.push_back(id(v));
      for (std::size_t s = 0; s < r.simplices.size(); ++s) {
        std::vector<std::size_t> simplex;
        for (const auto& v : r.simplices[s]) simplex.push_back(id(v));
        fc.simplices.push_back(std::move(simplex));
        fc.dets.push_back(r.dets[s]);
      }
      fan.cones.push_back(std::move(fc));
      for (auto& nb : r.neighbours)
        if (seen.insert(nb).second) next.push_back(std::move(nb));
    }
    frontier = std::move(next);
  }
  fan.ray_heights.resize(fan.rays.size());
  fan.ray_forms.resize(fan.rays.size());
  std::vector<char> integral(fan.rays.size(), 1);
  parallel_for(fan.rays.size(), [&](std::size_t i) {
    fan.ray_heights[i] = trop_plucker(grid_of(p.k, p.n, fan.rays[i]));
    fan.ray_forms[i] = form_of(fan.ray_heights[i]);
    for (const auto& c : planar_coordinates(fan.ray_forms[i]))
      if (c.get_den() != 1) integral[i] = 0;
  });
  fan.integral_forms = std::all_of(integral.begin(), integral.end(), [](char c) { return c != 0; });
  return fan;
}

QVector random_vector(std::size_t dim, std::mt19937_64& rng, long range = 1000) {
  std::uniform_int_distribution<long> dist(-range, range);
  QVector v(dim);
  for (auto& x : v) x = dist(rng);
  return v;
}

QVector random_nonzero(std::size_t dim, std::mt19937_64& rng, long range = 10000) {
  std::uniform_int_distribution<long> dist(1, range);
  std::bernoulli_distribution sign(0.5);
  QVector v(dim);
  for (auto& x : v) x = sign(rng) ? dist(rng) : -dist(rng);
  return v;
}

bool proportional(const KinematicForm& a, const KinematicForm& b) {
  std::optional<Rational> c;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (sgn(a.coeffs[i]) == 0 && sgn(b.coeffs[i]) == 0) continue;
    if (sgn(a.coeffs[i]) == 0 || sgn(b.coeffs[i]) == 0) return false;
    Rational r = a.coeffs[i] / b.coeffs[i];
    if (c && *c != r) return false;
    c = r;
  }
  return c.has_value();
}

IVector gauge_ray(const HeightVector& h) {
  GridVector y = proj_rt(h).gauge_fixed();
  QVector v;
  for (int i = 1; i <= y.rows(); ++i)
    for (int j = 2; j <= y.cols(); ++j) v.push_back(y.at(i, j));
  if (is_zero(v)) return {};
  return primitive_integer(v);
}

}  // namespace

std::size_t LinearFan::simplex_count() const {
  std::size_t s = 0;
  for (const auto& c : cones) s += c.simplices.size();
  return s;
}

GridVector grid_of(int k, int n, const IVector& v) {
  GridVector g(k, n);
  for (int i = 1; i <= k - 1; ++i)
    for (int j = 2; j <= n - k; ++j) g.at(i, j) = v[static_cast<std::size_t>((i - 1) * (n - k - 1) + (j - 2))];
  return g;
}

LinearFan build_fan(int k, int n, std::size_t max_dim, std::uint64_t seed) {
  const auto dim = static_cast<std::size_t>((k - 1) * (n - k - 1));
  if (dim > max_dim)
    throw GuardExceeded("build_fan: fan dimension " + std::to_string(dim) + " exceeds the guard " +
                        std::to_string(max_dim));
  const auto& p = projected(k, n);
  if (dim == 0) {
    LinearFan fan;
    fan.k = k;
    fan.n = n;
    fan.cones.push_back(FanCone{{}, {{}}, {Integer(1)}});
    return fan;
  }
  std::mt19937_64 rng(seed);
  for (;;) {
    auto c = choose(p, {random_vector(dim, rng)});
    if (c) return walk(p, *c, std::nullopt);
  }
}

LinearFan build_star(const HeightVector& height, std::uint64_t seed) {
  const int k = height.k, n = height.n;
  const auto& p = projected(k, n);
  LinearFan empty;
  empty.k = k;
  empty.n = n;
  empty.dim = p.dim;
  IVector r = gauge_ray(height);
  if (r.empty()) return empty;
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto c = choose(p, {to_q(r), random_vector(p.dim, rng), random_vector(p.dim, rng)});
    if (!c) continue;
    Cone start = cone_of_choice(p, *c);
    if (std::find(start.rays.begin(), start.rays.end(), r) == start.rays.end()) return empty;
    return walk(p, *c, r);
  }
  throw std::runtime_error("build_star: no generic perturbation found");
}

Rational evaluate_amplitude(const LinearFan& fan, const QVector& s) {
  std::vector<Rational> f(fan.rays.size());
  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    f[i] = pair(fan.ray_heights[i], s);
    if (sgn(f[i]) == 0) throw ZeroDenominator("evaluate_amplitude: kinematics on a pole");
  }
  Rational total = 0;
  for (const auto& c : fan.cones)
    for (std::size_t t = 0; t < c.simplices.size(); ++t) {
      Rational den = 1;
      for (auto r : c.simplices[t]) den *= f[r];
      total += Rational(c.dets[t]) / den;
    }
  return total;
}

KinematicSlice::KinematicSlice(int k, int n, std::vector<KinematicForm> propagators, std::vector<std::string> names)
    : k_(k), n_(n), propagators_(std::move(propagators)), names_(std::move(names)) {
  const auto& pb = planar_basis(k, n);
  const std::size_t dim = pb.nonfrozen().size();
  RowReducer red(dim);
  std::vector<QVector> cols;
  for (const auto& f : propagators_) {
    QVector c = planar_coordinates(f);
    if (!red.add(c)) throw std::invalid_argument("KinematicSlice: dependent propagators");
    cols.push_back(c);
  }
  names_.resize(propagators_.size());
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i].empty()) names_[i] = "P" + std::to_string(i + 1);
  for (std::size_t t = 0; t < dim && cols.size() < dim; ++t) {
    QVector e(dim);
    e[t] = 1;
    if (red.add(e)) {
      cols.push_back(e);
      complement_.push_back(pb.nonfrozen()[t]);
      names_.push_back("eta" + pb.nonfrozen()[t].to_string());
    }
  }
  to_planar_ = QMatrix(dim, dim);
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < dim; ++r) to_planar_(r, c) = cols[c][r];
  solver_.emplace(to_planar_);
}

void KinematicSlice::fix_complement(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  fixed_ = random_nonzero(complement_.size(), rng);
}

AffineForm KinematicSlice::restrict(const KinematicForm& f) const {
  QVector x = solver_->solve(planar_coordinates(f));
  AffineForm out;
  out.constant = 0;
  const std::size_t m = propagators_.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    if (fixed_ && i >= m)
      out.constant += x[i] * (*fixed_)[i - m];
    else
      out.coeffs.emplace_back(static_cast<Var>(i), x[i]);
  }
  return out;
}

QVector KinematicSlice::point(const QVector& values) const {
  QVector v = values;
  if (fixed_)
    for (std::size_t i = 0; i < fixed_->size(); ++i) v[propagators_.size() + i] = (*fixed_)[i];
  // planar coordinate values: v = B^T eta
  auto eta = tropfact::solve(to_planar_.transpose(), v);
  if (!eta) throw std::logic_error("KinematicSlice: singular coordinates");
  const auto& pb = planar_basis(k_, n_);
  const auto& idx = pb.index();
  const std::size_t total = idx.size();
  QMatrix a(total, total);
  QVector rhs(total);
  for (int j = 1; j <= n_; ++j)
    for (std::size_t i = 0; i < total; ++i)
      if (idx[i].contains(j)) a(static_cast<std::size_t>(j - 1), i) = 1;
  for (std::size_t t = 0; t < pb.nonfrozen().size(); ++t) {
    const auto& h = pb.height(pb.nonfrozen()[t]);
    for (std::size_t i = 0; i < total; ++i) a(static_cast<std::size_t>(n_) + t, i) = h.coeffs[i];
    rhs[static_cast<std::size_t>(n_) + t] = (*eta)[t];
  }
  auto s = tropfact::solve(a, rhs);
  if (!s) throw std::logic_error("KinematicSlice: no kinematic point");
  return *s;
}

QVector KinematicSlice::coordinates(const QVector& s) const {
  QVector v;
  for (const auto& f : propagators_) v.push_back(evaluate(f, s));
  for (const auto& j : complement_) v.push_back(evaluate(eta_of_subset(j), s));
  return v;
}

TermSum amplitude(const LinearFan& fan, const KinematicSlice& slice) {
  std::vector<AffineForm> forms(fan.rays.size());
  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    forms[i] = slice.restrict(fan.ray_forms[i]);
    if (forms[i].is_constant() && sgn(forms[i].constant) == 0)
      throw OnPoleSlice("amplitude: a ray pairing vanishes identically on the slice");
  }
  std::vector<TermSum> parts(fan.cones.size());
  parallel_for(fan.cones.size(), [&](std::size_t c) {
    const auto& cone = fan.cones[c];
    for (std::size_t t = 0; t < cone.simplices.size(); ++t) {
      std::vector<AffineForm> den;
      for (auto r : cone.simplices[t]) den.push_back(forms[r]);
      parts[c].add(Rational(cone.dets[t]), den);
    }
  });
  TermSum total;
  for (const auto& p : parts) total += p;
  return total;
}

QVector random_conserving_point(int k, int n, std::mt19937_64& rng) {
  const auto& pb = planar_basis(k, n);
  const auto& idx = pb.index();
  QVector s = random_nonzero(idx.size(), rng, 1000);
  const auto& piv = pb.pivot_coordinates();
  std::vector<char> is_piv(idx.size(), 0);
  for (auto p : piv) is_piv[p] = 1;
  QMatrix a(static_cast<std::size_t>(n), piv.size());
  QVector rhs(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    for (std::size_t c = 0; c < piv.size(); ++c)
      if (idx[piv[c]].contains(j)) a(static_cast<std::size_t>(j - 1), c) = 1;
    for (std::size_t i = 0; i < idx.size(); ++i)
      if (!is_piv[i] && idx[i].contains(j)) rhs[static_cast<std::size_t>(j - 1)] -= s[i];
  }
  auto x = tropfact::solve(a, rhs);
  if (!x) throw std::logic_error("random_conserving_point: singular pivots");
  for (std::size_t c = 0; c < piv.size(); ++c) s[piv[c]] = (*x)[c];
  return s;
}

QVector complement_kinematics(int k, int n, const QVector& s) {
  const auto& src = planar_basis(k, n).index();
  const auto& dst = planar_basis(n - k, n).index();
  const std::uint64_t full = (n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  QVector out(dst.size());
  for (std::size_t i = 0; i < dst.size(); ++i) out[i] = s[src.index_of(KSubset(n, full & ~dst[i].bits()))];
  return out;
}

Rational m2_tree_oracle(int n, const QVector& s) {
  if (n < 4) throw std::invalid_argument("m2_tree_oracle: n >= 4");
  const auto& idx = planar_basis(2, n).index();
  auto x = [&](int a, int b) {
    Rational v = 0;
    for (int i = a; i < b; ++i)
      for (int j = i + 1; j < b; ++j) v += s[idx.index_of(KSubset(n, {i, j}))];
    if (sgn(v) == 0) throw ZeroDenominator("m2_tree_oracle: kinematics on a pole");
    return v;
  };
  std::map<std::pair<int, int>, Rational> memo;
  std::function<Rational(int, int)> f = [&](int a, int b) -> Rational {
    if (b - a < 2) return 1;
    auto it = memo.find({a, b});
    if (it != memo.end()) return it->second;
    Rational total = 0;
    for (int c = a + 1; c < b; ++c) {
      Rational t = f(a, c) * f(c, b);
      if (c - a >= 2) t /= x(a, c);
      if (b - c >= 2) t /= x(c, b);
      total += t;
    }
    memo[{a, b}] = total;
    return total;
  };
  return f(1, n);
}

std::size_t m2_tree_count(int n) {
  std::size_t m = static_cast<std::size_t>(n - 2);
  std::size_t c = 1;
  for (std::size_t i = 0; i < m; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

TermSum iterated_residue(const LinearFan& fan, const KinematicSlice& slice, const std::vector<Var>& order) {
  TermSum t = amplitude(fan, slice);
  for (Var v : order) t = residue_step(t, v);
  return t;
}

ResidueResult iterated_residue(int k, int n, const std::vector<KinematicForm>& propagators, std::uint64_t seed,
                               const std::vector<std::string>& names) {
  ResidueResult res{TermSum{}, KinematicSlice(k, n, propagators, names), 0, 0, seed};
  if (propagators.empty()) return res;
  const auto& pb = planar_basis(k, n);
  HeightVector h = pb.from_planar(planar_coordinates(propagators.front()));
  for (const HeightVector& cand : {h, Rational(-1) * h}) {
    IVector r = gauge_ray(cand);
    if (r.empty()) continue;
    if (!proportional(form_of(trop_plucker(grid_of(k, n, r))), propagators.front())) continue;
    LinearFan star = build_star(cand, seed);
    if (star.cones.empty()) continue;
    res.star_cones = star.cones.size();
    res.star_simplices = star.simplex_count();
    std::vector<Var> order(propagators.size());
    std::iota(order.begin(), order.end(), Var{0});
    res.value = iterated_residue(star, res.slice, order);
    return res;
  }
  return res;  // no fan ray carries the first propagator: every residue vanishes
}

bool vanishes(const TermSum& t, std::size_t variables, std::uint64_t seed, std::size_t samples) {
  if (t.empty()) return true;
  std::mt19937_64 rng(seed);
  std::size_t done = 0;
  for (std::size_t attempt = 0; done < samples && attempt < 16 * samples; ++attempt) {
    try {
      if (sgn(t.evaluate(random_nonzero(variables, rng))) != 0) return false;
      ++done;
    } catch (const ZeroDenominator&) {
    }
  }
  return true;
}

std::vector<std::vector<AffineForm>> form_components(const std::vector<AffineForm>& forms) {
  if (forms.empty()) return {};
  Var top = 0;
  for (const auto& f : forms)
    for (const auto& p : f.coeffs) top = std::max(top, p.first);
  const std::size_t dim = top + 2;  // last slot holds the constant
  auto vec = [&](const AffineForm& f) {
    QVector v(dim);
    for (const auto& [var, c] : f.coeffs) v[var] = c;
    v[dim - 1] = f.constant;
    return v;
  };
  std::vector<std::size_t> parent(forms.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  RowReducer red(dim);
  std::vector<std::size_t> basis;
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < forms.size(); ++i) (red.add(vec(forms[i])) ? basis : others).push_back(i);
  QMatrix b(dim, basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) {
    QVector v = vec(forms[basis[c]]);
    for (std::size_t r = 0; r < dim; ++r) b(r, c) = v[r];
  }
  // fundamental circuits with respect to the basis determine the components
  for (auto o : others) {
    auto x = tropfact::solve(b, vec(forms[o]));
    for (std::size_t c = 0; c < basis.size(); ++c)
      if (sgn((*x)[c]) != 0) parent[find(basis[c])] = find(o);
  }
  std::map<std::size_t, std::vector<AffineForm>> groups;
  for (std::size_t i = 0; i < forms.size(); ++i) groups[find(i)].push_back(forms[i]);
  std::vector<std::vector<AffineForm>> out;
  for (auto& [root, g] : groups) out.push_back(std::move(g));
  return out;
}

namespace {

// A random vector annihilated by the linear parts of the given forms.
QVector annihilating(const std::vector<AffineForm>& forms, std::size_t variables, std::mt19937_64& rng) {
  if (forms.empty()) return random_nonzero(variables, rng, 50);
  QMatrix m(forms.size(), variables);
  for (std::size_t r = 0; r < forms.size(); ++r)
    for (const auto& [v, c] : forms[r].coeffs) m(r, v) = c;
  QVector out(variables);
  std::uniform_int_distribution<long> dist(-50, 50);
  for (const auto& z : nullspace(m)) {
    long c = dist(rng);
    for (std::size_t i = 0; i < variables; ++i) out[i] += c * z[i];
  }
  return out;
}

QVector add(const QVector& a, const QVector& b) {
  QVector c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

std::vector<AffineForm> all_but(const std::vector<std::vector<AffineForm>>& parts, const std::vector<std::size_t>& skip) {
  std::vector<AffineForm> out;
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (std::find(skip.begin(), skip.end(), i) == skip.end()) out.insert(out.end(), parts[i].begin(), parts[i].end());
  return out;
}

// Runs the mixed-difference identity between the forms of parts i and j;
// returns (samples evaluated, identity held at all of them).
std::pair<std::size_t, bool> mixed_difference(const TermSum& t, std::size_t variables,
                                              const std::vector<std::vector<AffineForm>>& parts,
                                              const std::vector<std::size_t>& left, const std::vector<std::size_t>& right,
                                              std::mt19937_64& rng, std::size_t samples) {
  std::vector<AffineForm> not_left = all_but(parts, left), not_right = all_but(parts, right);
  std::size_t done = 0;
  for (std::size_t attempt = 0; done < samples && attempt < 8 * samples; ++attempt) {
    QVector a = annihilating(not_left, variables, rng);
    QVector b = annihilating(not_right, variables, rng);
    QVector x = random_nonzero(variables, rng);
    try {
      Rational lhs = t.evaluate(x) * t.evaluate(add(add(x, a), b));
      Rational rhs = t.evaluate(add(x, a)) * t.evaluate(add(x, b));
      ++done;
      if (lhs != rhs) return {done, false};
    } catch (const ZeroDenominator&) {
    }
  }
  return {done, true};
}

}  // namespace

std::vector<std::vector<AffineForm>> factor_groups(const TermSum& t, std::size_t variables, std::uint64_t seed,
                                                   std::size_t samples) {
  auto comps = form_components(t.denominator_forms());
  std::vector<std::size_t> parent(comps.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      if (find(i) == find(j)) continue;
      if (!mixed_difference(t, variables, comps, {i}, {j}, rng, samples).second) parent[find(i)] = find(j);
    }
  std::map<std::size_t, std::vector<AffineForm>> groups;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    auto& g = groups[find(i)];
    g.insert(g.end(), comps[i].begin(), comps[i].end());
  }
  std::vector<std::vector<AffineForm>> out;
  for (auto& [root, g] : groups) out.push_back(std::move(g));
  return out;
}

Separability separability(const TermSum& t, std::size_t variables, std::uint64_t seed, std::size_t samples) {
  Separability out;
  auto groups = factor_groups(t, variables, seed);
  out.groups = groups.size();
  if (groups.size() < 2) return out;
  std::mt19937_64 rng(seed + 1);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    std::vector<std::size_t> rest;
    for (std::size_t h = 0; h < groups.size(); ++h)
      if (h != g) rest.push_back(h);
    auto [done, ok] = mixed_difference(t, variables, groups, {g}, rest, rng, samples);
    out.samples += done;
    if (!ok || done == 0) {
      out.separable = false;
      return out;
    }
  }
  return out;
}

namespace {

// x with g(x) = target for g in fix, o(x) = o(x0) for o in keep.
std::optional<QVector> solve_forms(const std::vector<AffineForm>& fix, const QVector& target,
                                   const std::vector<AffineForm>& keep, const QVector& x0, std::size_t variables) {
  QMatrix m(fix.size() + keep.size(), variables);
  QVector rhs(fix.size() + keep.size());
  for (std::size_t r = 0; r < fix.size(); ++r) {
    for (const auto& [v, c] : fix[r].coeffs) m(r, v) = c;
    rhs[r] = target[r] - fix[r].constant;
  }
  for (std::size_t r = 0; r < keep.size(); ++r) {
    for (const auto& [v, c] : keep[r].coeffs) m(fix.size() + r, v) = c;
    rhs[fix.size() + r] = keep[r].evaluate(x0) - keep[r].constant;
  }
  return tropfact::solve(m, rhs);
}

}  // namespace

Identification identify_factor(const TermSum& t, std::size_t variables, const std::vector<AffineForm>& group, int k,
                               int m, std::uint64_t seed, std::size_t max_poles) {
  Identification out;
  out.m = m;
  const int dim = (k - 1) * (m - k - 1);
  if (dim <= 0 || dim > 6) return out;
  out.group_forms = group.size();
  if (group.size() > max_poles) return out;
  LinearFan fan = build_fan(k, m);
  KinematicSlice slice(k, m, {});
  TermSum sub = amplitude(fan, slice);
  auto poles = sub.denominator_forms();
  out.searched = true;
  out.poles = poles.size();
  out.group_forms = group.size();
  if (poles.size() != group.size()) return out;
  std::vector<AffineForm> keep;
  {
    std::set<AffineForm> mine(group.begin(), group.end());
    for (const auto& f : t.denominator_forms())
      if (!mine.count(f)) keep.push_back(f);
  }
  std::mt19937_64 rng(seed);
  QVector x0;
  for (;;) {
    x0 = random_nonzero(variables, rng);
    try {
      if (sgn(t.evaluate(x0)) != 0) break;
    } catch (const ZeroDenominator&) {
    }
  }
  std::vector<QVector> ys, values;
  while (ys.size() < 3) {
    QVector y = random_nonzero(slice.variables(), rng);
    try {
      if (sgn(sub.evaluate(y)) == 0) continue;
      QVector v;
      for (const auto& p : poles) v.push_back(p.evaluate(y));
      ys.push_back(y);
      values.push_back(v);
    } catch (const ZeroDenominator&) {
    }
  }
  std::vector<std::size_t> perm(poles.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << poles.size()); ++signs) {
      ++out.candidates;
      std::vector<AffineForm> fix;
      for (std::size_t j = 0; j < poles.size(); ++j) fix.push_back(group[perm[j]]);
      std::optional<Rational> ratio;
      bool ok = true;
      for (std::size_t s = 0; s < ys.size() && ok; ++s) {
        QVector target = values[s];
        for (std::size_t j = 0; j < target.size(); ++j)
          if ((signs >> j) & 1U) target[j] = -target[j];
        auto x = solve_forms(fix, target, keep, x0, variables);
        if (!x) {
          ok = false;
          break;
        }
        try {
          Rational r = t.evaluate(*x) / sub.evaluate(ys[s]);
          if (ratio && *ratio != r) ok = false;
          ratio = r;
        } catch (const ZeroDenominator&) {
          ok = false;
        }
      }
      if (ok && ratio) {
        out.found = true;
        out.constant = *ratio;
        out.images = fix;
        for (std::size_t j = 0; j < poles.size(); ++j) out.signs.push_back((signs >> j) & 1U ? -1 : 1);
        out.sub_poles = poles;
        out.sub = sub;
        out.sub_variables = slice.variables();
        return out;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

// f(x) / prod sub_l(y_l) with every group's forms set from independent y_l;
// nullopt unless the ratio is the same at three samples.
std::optional<Rational> joint_constant(const TermSum& t, std::size_t variables, const std::vector<Identification>& ids,
                                       std::uint64_t seed) {
  std::set<AffineForm> mapped;
  for (const auto& id : ids) mapped.insert(id.images.begin(), id.images.end());
  std::vector<AffineForm> keep;
  for (const auto& f : t.denominator_forms())
    if (!mapped.count(f)) keep.push_back(f);
  std::mt19937_64 rng(seed + 7);
  QVector x0 = random_nonzero(variables, rng);
  std::optional<Rational> ratio;
  std::size_t done = 0;
  for (std::size_t attempt = 0; done < 3 && attempt < 48; ++attempt) {
    std::vector<AffineForm> fix;
    QVector target;
    Rational denom = 1;
    try {
      for (const auto& id : ids) {
        QVector y = random_nonzero(id.sub_variables, rng);
        denom *= id.sub.evaluate(y);
        for (std::size_t j = 0; j < id.images.size(); ++j) {
          fix.push_back(id.images[j]);
          target.push_back(id.signs[j] * id.sub_poles[j].evaluate(y));
        }
      }
      auto x = solve_forms(fix, target, keep, x0, variables);
      if (!x) return std::nullopt;
      Rational r = t.evaluate(*x) / denom;
      ++done;
      if (ratio && *ratio != r) return std::nullopt;
      ratio = r;
    } catch (const ZeroDenominator&) {
    }
  }
  return ratio;
}

}  // namespace

FactorizationReport verify_factorization(const ChannelSpec& s, std::uint64_t seed, std::size_t max_orders) {
  auto t0 = std::chrono::steady_clock::now();
  FactorizationReport rep;
  rep.channel = s.to_string();
  rep.seed = seed;
  const int k = s.k(), n = s.n();
  PropagatorSet tower = residue_tower(s);
  std::vector<KinematicForm> forms;
  for (const auto& p : tower.items) {
    forms.push_back(p.form);
    rep.tower.push_back(p.label);
  }
  for (const auto& b : s.blocks()) {
    const int m = static_cast<int>(b.size()) + k - 1;
    rep.factor_sizes.push_back(m);
    if ((k - 1) * (m - k - 1) > 0) ++rep.expected_groups;
  }

  KinematicSlice slice(k, n, forms, rep.tower);
  const auto& pb = planar_basis(k, n);
  LinearFan star = build_star(pb.from_planar(planar_coordinates(forms.front())), seed);
  rep.star_cones = star.cones.size();
  TermSum amp = star.cones.empty() ? TermSum{} : amplitude(star, slice);
  TermSum first = residue_step(amp, 0);

  std::vector<Var> rest(forms.size() - 1);
  std::iota(rest.begin(), rest.end(), Var{1});
  TermSum found;
  do {
    ++rep.orders_tried;
    TermSum t = first;
    for (Var v : rest) t = residue_step(t, v);
    if (!vanishes(t, slice.variables(), seed)) {
      rep.nonvanishing = true;
      rep.order = {0};
      rep.order.insert(rep.order.end(), rest.begin(), rest.end());
      found = t;
      break;
    }
  } while (rep.orders_tried < max_orders && std::next_permutation(rest.begin(), rest.end()));

  if (forms.size() >= 2) {
    // the channel blade last
    std::vector<KinematicForm> wrong(forms.begin() + 1, forms.end());
    wrong.push_back(forms.front());
    auto w = iterated_residue(k, n, wrong, seed);
    rep.wrong_order_checked = true;
    rep.wrong_order_vanishes = vanishes(w.value, w.slice.variables(), seed);
  }

  if (rep.nonvanishing) {
    rep.result = found.to_string(slice.names());
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 16; ++attempt) {
      try {
        rep.value_at_sample = found.evaluate(random_nonzero(slice.variables(), rng));
        break;
      } catch (const ZeroDenominator&) {
      }
    }
    rep.separability = separability(found, slice.variables(), seed);
    auto groups = factor_groups(found, slice.variables(), seed);
    std::vector<char> used(groups.size(), 0);
    for (int m : rep.factor_sizes) {
      if ((k - 1) * (m - k - 1) <= 0) continue;
      Identification best;
      best.m = m;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        if (used[g]) continue;
        auto id = identify_factor(found, slice.variables(), groups[g], k, m, seed);
        best.searched = best.searched || id.searched;
        best.candidates += id.candidates;
        if (id.found) {
          used[g] = 1;
          best = id;
          break;
        }
        best.poles = id.poles;
        best.group_forms = std::max(best.group_forms, id.group_forms);
      }
      rep.identifications.push_back(best);
    }
    if (std::all_of(rep.identifications.begin(), rep.identifications.end(),
                    [](const Identification& i) { return i.found; }))
      rep.overall_constant = joint_constant(found, slice.variables(), rep.identifications, seed);
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

PrefactorCheck prefactor_check(const ChannelSpec& s, std::uint64_t seed) {
  if (s.k() != 3) throw std::invalid_argument("prefactor_check: needs a k = 3 channel");
  PrefactorCheck out;
  out.channel = s.to_string();
  out.seed = seed;
  const int n = s.n();
  const Dosp ijk = s.dosp();
  const Dosp ikj = s.lumping({{0}, {2}, {1}});
  out.first = ijk.to_string();
  out.second = ikj.to_string();
  std::vector<KinematicForm> splits;
  for (const auto& d : x_collection(s)) splits.push_back(eta_of_dosp(d));
  auto tower = [&](const Dosp& lead) {
    std::vector<KinematicForm> forms = {eta_of_dosp(lead)};
    forms.insert(forms.end(), splits.begin(), splits.end());
    return iterated_residue(3, n, forms, seed);
  };
  ResidueResult a = tower(ijk), b = tower(ikj);
  out.first_nonzero = !vanishes(a.value, a.slice.variables(), seed);
  out.second_nonzero = !vanishes(b.value, b.slice.variables(), seed);
  std::mt19937_64 rng(seed + 3);
  out.equal = true;
  for (std::size_t attempt = 0; out.samples < 4 && attempt < 32; ++attempt) {
    QVector va = random_nonzero(a.slice.variables(), rng);
    for (std::size_t i = 0; i < a.slice.propagator_count(); ++i) va[i] = 0;
    QVector point = a.slice.point(va);
    QVector vb = b.slice.coordinates(point);
    try {
      Rational x = a.value.evaluate(va), y = b.value.evaluate(vb);
      ++out.samples;
      if (x != y) out.equal = false;
    } catch (const ZeroDenominator&) {
    }
  }
  out.equal = out.equal && out.samples > 0;
  return out;
}

}  // namespace tropfact
