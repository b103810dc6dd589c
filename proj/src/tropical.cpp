#include "tropfact/tropical.hpp"

#include <memory>
#include <mutex>

#include "tropfact/parallel.hpp"

namespace tropfact {

GridVector GridVector::gauge_fixed() const {
  GridVector g = *this;
  for (int i = 1; i <= rows(); ++i) {
    Rational shift = at(i, 1);
    for (int j = 1; j <= cols(); ++j) g.at(i, j) -= shift;
  }
  return g;
}

GridVector& GridVector::operator+=(const GridVector& o) {
  if (k != o.k || n != o.n) throw std::invalid_argument("GridVector: (k,n) mismatch");
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i] += o.entries[i];
  return *this;
}

GridVector& GridVector::operator*=(const Rational& c) {
  for (auto& e : entries) e *= c;
  return *this;
}

namespace {

void check_kn(int k, int n) {
  if (k < 2 || k > n - 2) throw std::invalid_argument("positive parametrization needs 2 <= k <= n-2");
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exponent e = ea;
      for (std::size_t t = 0; t < e.size(); ++t) e[t] = static_cast<std::uint8_t>(e[t] + eb[t]);
      out[e] += ca * cb;
    }
  return out;
}

Polynomial constant_one(std::size_t vars) { return Polynomial{{Exponent(vars, 0), Integer(1)}}; }

class Parametrization {
 public:
  Parametrization(int k, int n) : k_(k), n_(n), vars_(static_cast<std::size_t>((k - 1) * (n - k))) {
    entries_.resize(static_cast<std::size_t>((k - 1) * (n - k)));
    for (int j = 1; j <= n - k; ++j) {
      // tail[lo] = sum over lo <= b_i <= ... <= b_{k-1} <= j, built from the last row up
      std::vector<Polynomial> tail(static_cast<std::size_t>(j + 2), constant_one(vars_));
      for (int i = k - 1; i >= 1; --i) {
        std::vector<Polynomial> next(static_cast<std::size_t>(j + 2));
        Polynomial acc;
        for (int lo = j; lo >= 1; --lo) {
          Polynomial x = Polynomial{{unit(i, lo), Integer(1)}};
          for (const auto& [e, c] : multiply(x, tail[static_cast<std::size_t>(lo)])) acc[e] += c;
          next[static_cast<std::size_t>(lo)] = acc;
        }
        tail = std::move(next);
        entries_[static_cast<std::size_t>((i - 1) * (n - k) + (j - 1))] = tail[1];
      }
    }
  }

  const Polynomial& entry(int i, int j) const { return entries_[static_cast<std::size_t>((i - 1) * (n_ - k_) + (j - 1))]; }

  /// Entry (row, col) of the k x n matrix, or nullptr for zero.
  const Polynomial* matrix(int row, int col) const {
    if (col <= k_) return row == col ? &one_ : nullptr;
    if (row == k_) return &one_;
    return &entry(row, col - k_);
  }

  std::size_t vars() const { return vars_; }

 private:
  Exponent unit(int i, int b) const {
    Exponent e(vars_, 0);
    e[static_cast<std::size_t>((i - 1) * (n_ - k_) + (b - 1))] = 1;
    return e;
  }

  int k_, n_;
  std::size_t vars_;
  Polynomial one_ = constant_one(vars_);
  std::vector<Polynomial> entries_;
};

const Parametrization& parametrization(int k, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<Parametrization>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{k, n}];
  if (!slot) slot = std::make_unique<Parametrization>(k, n);
  return *slot;
}

// Laplace expansion down the rows; cols holds the remaining column labels.
void expand_minor(const Parametrization& m, int row, std::vector<int>& cols, const Polynomial& prefix, int sign,
                  Polynomial& acc, int k) {
  if (row > k) {
    for (const auto& [e, c] : prefix) acc[e] += sign * c;
    return;
  }
  for (std::size_t t = 0; t < cols.size(); ++t) {
    const Polynomial* e = m.matrix(row, cols[t]);
    if (e == nullptr) continue;
    Polynomial next = multiply(prefix, *e);
    int c = cols[t];
    cols.erase(cols.begin() + static_cast<long>(t));
    expand_minor(m, row + 1, cols, next, (t % 2 == 0) ? sign : -sign, acc, k);
    cols.insert(cols.begin() + static_cast<long>(t), c);
  }
}

}  // namespace

Polynomial parametrization_entry(int k, int n, int i, int j) {
  check_kn(k, n);
  if (i < 1 || i > k - 1 || j < 1 || j > n - k) throw std::out_of_range("parametrization_entry");
  return parametrization(k, n).entry(i, j);
}

Polynomial minor_polynomial(int k, int n, const KSubset& j) {
  check_kn(k, n);
  if (j.n() != n || j.k() != k) throw std::invalid_argument("minor_polynomial: subset shape");
  const auto& m = parametrization(k, n);
  std::vector<int> cols = j.elements();
  Polynomial acc;
  expand_minor(m, 1, cols, constant_one(m.vars()), 1, acc, k);
  Polynomial out;
  int common = 0;
  for (const auto& [e, c] : acc) {
    if (c == 0) continue;
    if (common == 0) common = sgn(c);
    if (sgn(c) != common) throw CancellationError("p" + j.to_string() + " has coefficients of both signs");
    if (abs(c) != 1) throw CancellationError("p" + j.to_string() + " has a coefficient " + c.get_str());
    out.emplace(e, c);
  }
  if (out.empty()) throw CancellationError("p" + j.to_string() + " vanishes identically");
  return out;
}

const MonomialTable& monomial_table(int k, int n) {
  check_kn(k, n);
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<MonomialTable>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({k, n});
    if (it != cache.end()) return *it->second;
  }
  parametrization(k, n);
  auto table = std::make_unique<MonomialTable>();
  table->k = k;
  table->n = n;
  const auto subsets = enumerate_subsets(k, n);
  table->monomials.resize(subsets.size());
  table->sign.resize(subsets.size());
  table->max_coefficient.resize(subsets.size());
  parallel_for(subsets.size(), [&](std::size_t i) {
    Polynomial p = minor_polynomial(k, n, subsets[i]);
    if (p.empty()) throw CancellationError("p" + subsets[i].to_string() + " vanishes identically");
    auto& mons = table->monomials[i];
    Integer mx = 0;
    for (const auto& [e, c] : p) {
      mons.push_back(e);
      if (abs(c) > mx) mx = abs(c);
    }
    table->sign[i] = sgn(p.begin()->second);
    table->max_coefficient[i] = mx;
  });
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{k, n}];
  if (!slot) slot = std::move(table);
  return *slot;
}

HeightVector trop_plucker(const GridVector& y) {
  const auto& table = monomial_table(y.k, y.n);
  HeightVector pi;
  pi.k = y.k;
  pi.n = y.n;
  pi.coeffs.resize(table.monomials.size());
  parallel_for(table.monomials.size(), [&](std::size_t i) {
    std::optional<Rational> best;
    for (const auto& m : table.monomials[i]) {
      Rational v = 0;
      for (std::size_t t = 0; t < m.size(); ++t)
        if (m[t] != 0) v += m[t] * y.entries[t];
      if (!best || v < *best) best = v;
    }
    pi.coeffs[i] = *best;
  });
  return pi;
}

std::optional<ThreeTermRelation> first_violated_relation(const HeightVector& pi) {
  const int k = pi.k, n = pi.n;
  if (k < 2 || k > n - 2) return std::nullopt;
  const auto& idx = planar_basis(k, n).index();
  auto value = [&](std::uint64_t bits) -> const Rational& { return pi.coeffs[idx.index_of(KSubset(n, bits))]; };
  for (const auto& l : enumerate_subsets(k - 2, n)) {
    std::vector<int> rest;
    for (int i = 1; i <= n; ++i)
      if (!l.contains(i)) rest.push_back(i);
    const std::uint64_t lb = l.bits();
    auto bit = [](int i) { return std::uint64_t{1} << (i - 1); };
    const std::size_t m = rest.size();
    for (std::size_t ia = 0; ia < m; ++ia)
      for (std::size_t ib = ia + 1; ib < m; ++ib)
        for (std::size_t ic = ib + 1; ic < m; ++ic)
          for (std::size_t id = ic + 1; id < m; ++id) {
            int a = rest[ia], b = rest[ib], c = rest[ic], d = rest[id];
            Rational lhs = value(lb | bit(a) | bit(c)) + value(lb | bit(b) | bit(d));
            Rational r1 = value(lb | bit(a) | bit(b)) + value(lb | bit(c) | bit(d));
            Rational r2 = value(lb | bit(a) | bit(d)) + value(lb | bit(b) | bit(c));
            if (lhs != (r1 < r2 ? r1 : r2)) return ThreeTermRelation{l, a, b, c, d};
          }
  }
  return std::nullopt;
}

const std::vector<RelationTerms>& three_term_relations(int k, int n) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<RelationTerms>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find({k, n});
  if (it != cache.end()) return it->second;
  check_kn(k, n);
  const auto& idx = planar_basis(k, n).index();
  auto at = [&](std::uint64_t bits) { return idx.index_of(KSubset(n, bits)); };
  auto bit = [](int i) { return std::uint64_t{1} << (i - 1); };
  std::vector<RelationTerms> out;
  for (const auto& l : enumerate_subsets(k - 2, n)) {
    std::vector<int> rest;
    for (int i = 1; i <= n; ++i)
      if (!l.contains(i)) rest.push_back(i);
    const std::uint64_t lb = l.bits();
    const std::size_t m = rest.size();
    for (std::size_t ia = 0; ia < m; ++ia)
      for (std::size_t ib = ia + 1; ib < m; ++ib)
        for (std::size_t ic = ib + 1; ic < m; ++ic)
          for (std::size_t id = ic + 1; id < m; ++id) {
            std::uint64_t a = bit(rest[ia]), b = bit(rest[ib]), c = bit(rest[ic]), d = bit(rest[id]);
            out.push_back({at(lb | a | c), at(lb | b | d), at(lb | a | b), at(lb | c | d), at(lb | a | d),
                           at(lb | b | c)});
          }
  }
  return cache.emplace(std::make_pair(k, n), std::move(out)).first->second;
}

PositiveRoot positive_root_vector(const KSubset& j) {
  if (j.is_frozen()) throw std::invalid_argument("positive root of frozen subset " + j.to_string());
  const int k = j.k(), n = j.n();
  check_kn(k, n);
  auto e = j.elements();
  PositiveRoot root{j, GridVector(k, n)};
  for (int i = 1; i <= k - 1; ++i) {
    int lo = std::max(1, e[i - 1] - (i - 1));
    int hi = std::min(n - k, e[i] - i - 1);
    for (int c = lo; c <= hi; ++c) root.vector.at(i, c) = 1;
  }
  return root;
}

Rational gamma_value(const KSubset& j, const GridVector& alpha) {
  return dot(positive_root_vector(j).vector.entries, alpha.entries);
}

GridVector proj_rt(const HeightVector& pi) {
  const auto& basis = planar_basis(pi.k, pi.n);
  auto coeffs = basis.expand(pi).planar;
  GridVector out(pi.k, pi.n);
  for (std::size_t c = 0; c < coeffs.size(); ++c) {
    if (sgn(coeffs[c]) == 0) continue;
    const auto v = positive_root_vector(basis.nonfrozen()[c]).vector;
    for (std::size_t t = 0; t < v.entries.size(); ++t)
      if (sgn(v.entries[t]) != 0) out.entries[t] += coeffs[c] * v.entries[t];
  }
  return out;
}

}  // namespace tropfact
