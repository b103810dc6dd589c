#include "tropfact/blades.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <limits>
#include <map>
#include <stdexcept>

namespace tropfact {

HeightVector::HeightVector(int k_, int n_) : k(k_), n(n_) {
  coeffs.resize(planar_basis(k_, n_).dimension());
}

static void check_shape(int k1, int n1, int k2, int n2) {
  if (k1 != k2 || n1 != n2) throw std::invalid_argument("(k,n) mismatch");
}

HeightVector& HeightVector::operator+=(const HeightVector& o) {
  check_shape(k, n, o.k, o.n);
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

HeightVector& HeightVector::operator-=(const HeightVector& o) {
  check_shape(k, n, o.k, o.n);
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
  return *this;
}

HeightVector& HeightVector::operator*=(const Rational& c) {
  for (auto& x : coeffs) x *= c;
  return *this;
}

KinematicForm& KinematicForm::operator+=(const KinematicForm& o) {
  check_shape(k, n, o.k, o.n);
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

KinematicForm& KinematicForm::operator*=(const Rational& c) {
  for (auto& x : coeffs) x *= c;
  return *this;
}

Rational cyclic_linear_form(int j, const QVector& x) {
  const int n = static_cast<int>(x.size());
  Rational s = 0;
  for (int m = 1; m < n; ++m) {
    const auto& xi = x[cyc(j + m, n) - 1];
    if (sgn(xi) != 0) s += m * xi;
  }
  return s;
}

Rational rho_subset(const KSubset& j, const QVector& x) {
  const int n = j.n();
  if (static_cast<int>(x.size()) != n) throw std::invalid_argument("rho_subset: x has wrong length");
  QVector y = x;
  for (int e : j.elements()) y[e - 1] -= 1;
  Rational best = cyclic_linear_form(1, y);
  for (int t = 2; t <= n; ++t) {
    Rational v = cyclic_linear_form(t, y);
    if (v < best) best = v;
  }
  return best;
}

Rational rho_dosp(const Dosp& d, const QVector& x) {
  const std::size_t blocks = d.size();
  if (static_cast<int>(x.size()) != d.n()) throw std::invalid_argument("rho_dosp: x has wrong length");
  if (blocks <= 1) return 0;
  std::vector<Rational> xs(blocks);
  for (std::size_t b = 0; b < blocks; ++b)
    for (int e : d.block(b).elements) xs[b] += x[e - 1];
  std::optional<Rational> best;
  for (std::size_t j = 0; j < blocks; ++j) {
    Rational m = 0, xsum = 0;
    int rsum = 0;
    for (std::size_t t = 1; t < blocks; ++t) {
      std::size_t b = (j + blocks - t) % blocks;
      rsum += d.block(b).r;
      xsum += xs[b];
      m += xsum - rsum;
    }
    if (!best || m < *best) best = m;
  }
  return *best;
}

int plate_form_at_vertex(const Dosp& d, std::size_t j, std::uint64_t vertex) {
  const std::size_t blocks = d.size();
  int m = 0, rsum = 0, xsum = 0;
  for (std::size_t t = 1; t < blocks; ++t) {
    std::size_t b = (j + blocks - t) % blocks;
    rsum += d.block(b).r;
    xsum += std::popcount(d.block_mask(b) & vertex);
    m += xsum - rsum;
  }
  return m;
}

namespace {

QVector indicator(const KSubset& s) {
  QVector x(s.n());
  for (int e : s.elements()) x[e - 1] = 1;
  return x;
}

HeightVector compute_height_of_subset(const SubsetIndex& idx, const KSubset& j) {
  HeightVector h;
  h.k = idx.k();
  h.n = idx.n();
  h.coeffs.resize(idx.size());
  const Rational scale(-1, idx.n());
  for (std::size_t i = 0; i < idx.size(); ++i) h.coeffs[i] = scale * rho_subset(j, indicator(idx[i]));
  return h;
}

}  // namespace

PlanarBasis::PlanarBasis(int k, int n) : index_(k, n) {
  if (k < 1 || k > n - 1) throw std::invalid_argument("PlanarBasis: need 1 <= k <= n-1");
  nonfrozen_pos_.assign(index_.size(), std::numeric_limits<std::size_t>::max());
  heights_.reserve(index_.size());
  for (std::size_t i = 0; i < index_.size(); ++i) {
    if (!index_[i].is_frozen()) {
      nonfrozen_pos_[i] = nonfrozen_.size();
      nonfrozen_.push_back(index_[i]);
    }
    heights_.push_back(compute_height_of_subset(index_, index_[i]));
  }
  // pivot coordinates for canonicalization: frozen first, then lexicographic
  std::vector<std::size_t> order;
  for (const auto& f : frozen_subsets(k, n)) order.push_back(index_.index_of(f));
  std::sort(order.begin(), order.end());
  for (std::size_t i = 0; i < index_.size(); ++i)
    if (index_[i].is_frozen() == false) order.push_back(i);
  std::vector<QVector> rows;
  for (std::size_t cand : order) {
    if (pivots_.size() == static_cast<std::size_t>(n)) break;
    QVector row(n);
    for (int e : index_[cand].elements()) row[e - 1] = 1;
    rows.push_back(row);
    if (rank(rows) == rows.size())
      pivots_.push_back(cand);
    else
      rows.pop_back();
  }
  frozen_pivots_ = std::all_of(pivots_.begin(), pivots_.end(), [&](std::size_t p) { return index_[p].is_frozen(); });
  pivot_solver_ = std::make_unique<LinearSolver>(QMatrix::from_rows(rows, n));
}

std::size_t PlanarBasis::nonfrozen_position(const KSubset& j) const {
  std::size_t p = nonfrozen_pos_[index_.index_of(j)];
  if (p == std::numeric_limits<std::size_t>::max()) throw std::invalid_argument(j.to_string() + " is frozen");
  return p;
}

const HeightVector& PlanarBasis::height(const KSubset& j) const { return heights_[index_.index_of(j)]; }

HeightVector PlanarBasis::lineality_generator(int j) const {
  HeightVector h;
  h.k = k();
  h.n = n();
  h.coeffs.resize(dimension());
  for (std::size_t i = 0; i < dimension(); ++i)
    if (index_[i].contains(j)) h.coeffs[i] = 1;
  return h;
}

KinematicForm PlanarBasis::canonicalize(const HeightVector& v) const {
  check_shape(k(), n(), v.k, v.n);
  QVector rhs(n());
  for (std::size_t p = 0; p < pivots_.size(); ++p) rhs[p] = -v.coeffs[pivots_[p]];
  QVector lambda = pivot_solver_->solve(rhs);
  KinematicForm f{k(), n(), v.coeffs};
  for (std::size_t i = 0; i < dimension(); ++i) {
    const KSubset& s = index_[i];
    for (int j = 1; j <= n(); ++j)
      if (s.contains(j) && sgn(lambda[j - 1]) != 0) f.coeffs[i] += lambda[j - 1];
  }
  for (auto p : pivots_) f.coeffs[p] = 0;  // exact already; clears any representation noise
  return f;
}

const LinearSolver& PlanarBasis::solver() const {
  std::call_once(solver_once_, [this] {
    const std::size_t dim = dimension();
    QMatrix b(dim, dim);
    for (std::size_t c = 0; c < nonfrozen_.size(); ++c) {
      const auto& h = height(nonfrozen_[c]);
      for (std::size_t r = 0; r < dim; ++r) b(r, c) = h.coeffs[r];
    }
    for (int j = 1; j <= n(); ++j)
      for (std::size_t r = 0; r < dim; ++r)
        if (index_[r].contains(j)) b(r, nonfrozen_.size() + j - 1) = 1;
    solver_ = std::make_unique<LinearSolver>(b);
  });
  return *solver_;
}

PlanarBasis::Expansion PlanarBasis::expand(const HeightVector& v) const {
  check_shape(k(), n(), v.k, v.n);
  const auto& s = solver();
  if (s.singular())
    throw std::runtime_error("planar basis matrix is singular at (" + std::to_string(k()) + "," + std::to_string(n()) + ")");
  QVector x = s.solve(v.coeffs);
  Expansion e;
  e.planar.assign(x.begin(), x.begin() + nonfrozen_.size());
  e.lineality.assign(x.begin() + nonfrozen_.size(), x.end());
  return e;
}

HeightVector PlanarBasis::from_planar(const QVector& planar) const {
  if (planar.size() != nonfrozen_.size()) throw std::invalid_argument("from_planar: wrong length");
  HeightVector h;
  h.k = k();
  h.n = n();
  h.coeffs.resize(dimension());
  for (std::size_t c = 0; c < planar.size(); ++c) {
    if (sgn(planar[c]) == 0) continue;
    const auto& hj = height(nonfrozen_[c]);
    for (std::size_t r = 0; r < dimension(); ++r)
      if (sgn(hj.coeffs[r]) != 0) h.coeffs[r] += planar[c] * hj.coeffs[r];
  }
  return h;
}

const PlanarBasis& planar_basis(int k, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<PlanarBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{k, n}];
  if (!slot) slot = std::make_unique<PlanarBasis>(k, n);
  return *slot;
}

HeightVector height_of_subset(const KSubset& j) { return planar_basis(j.k(), j.n()).height(j); }

HeightVector height_of_dosp(const Dosp& d) {
  const int n = d.n(), k = d.k();
  const auto& basis = planar_basis(k, n);
  HeightVector h;
  h.k = k;
  h.n = n;
  h.coeffs.resize(basis.dimension());
  if (d.size() <= 1) return h;
  const Rational scale(-1, static_cast<long>(d.size()));
  for (std::size_t i = 0; i < basis.dimension(); ++i) {
    std::uint64_t v = basis.index()[i].bits();
    int best = INT_MAX;
    for (std::size_t j = 0; j < d.size(); ++j) best = std::min(best, plate_form_at_vertex(d, j, v));
    h.coeffs[i] = scale * best;
  }
  return h;
}

KinematicForm form_of(const HeightVector& v) { return planar_basis(v.k, v.n).canonicalize(v); }
KinematicForm eta_of_subset(const KSubset& j) { return form_of(height_of_subset(j)); }
KinematicForm eta_of_dosp(const Dosp& d) { return form_of(height_of_dosp(d)); }

bool is_conserving(int k, int n, const QVector& s) {
  const auto& idx = planar_basis(k, n).index();
  if (s.size() != idx.size()) return false;
  for (int j = 1; j <= n; ++j) {
    Rational sum = 0;
    for (std::size_t i = 0; i < idx.size(); ++i)
      if (idx[i].contains(j)) sum += s[i];
    if (sgn(sum) != 0) return false;
  }
  return true;
}

Rational pair(const HeightVector& v, const QVector& s) {
  if (!is_conserving(v.k, v.n, s)) throw std::invalid_argument("pair: kinematic point violates momentum conservation");
  return dot(v.coeffs, s);
}

Rational evaluate(const KinematicForm& f, const QVector& s) {
  if (!is_conserving(f.k, f.n, s)) throw std::invalid_argument("evaluate: kinematic point violates momentum conservation");
  return dot(f.coeffs, s);
}

QVector planar_coordinates(const KinematicForm& f) {
  return planar_basis(f.k, f.n).expand(HeightVector(f.k, f.n, f.coeffs)).planar;
}

}  // namespace tropfact
