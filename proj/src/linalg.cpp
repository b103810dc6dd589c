#include "tropfact/linalg.hpp"

#include <utility>

namespace tropfact {

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, std::size_t cols) {
  QMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("from_rows: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

QVector QMatrix::row(std::size_t r) const {
  return QVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

QVector QMatrix::col(std::size_t c) const {
  QVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

QVector QMatrix::operator*(const QVector& x) const {
  if (x.size() != cols_) throw DimensionMismatch("matrix-vector product: size mismatch");
  QVector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (sgn((*this)(r, c)) != 0 && sgn(x[c]) != 0) y[r] += (*this)(r, c) * x[c];
  return y;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  if (o.rows_ != cols_) throw DimensionMismatch("matrix product: size mismatch");
  QMatrix p(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t m = 0; m < cols_; ++m) {
      const Rational& a = (*this)(r, m);
      if (sgn(a) == 0) continue;
      for (std::size_t c = 0; c < o.cols_; ++c)
        if (sgn(o(m, c)) != 0) p(r, c) += a * o(m, c);
    }
  return p;
}

RowEchelon rref(QMatrix a) {
  RowEchelon out;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < a.cols() && prow < a.rows(); ++c) {
    std::size_t pr = prow;
    while (pr < a.rows() && sgn(a(pr, c)) == 0) ++pr;
    if (pr == a.rows()) continue;
    if (pr != prow)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(pr, j), a(prow, j));
    Rational inv = 1 / a(prow, c);
    for (std::size_t j = c; j < a.cols(); ++j)
      if (sgn(a(prow, j)) != 0) a(prow, j) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == prow || sgn(a(r, c)) == 0) continue;
      Rational f = a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (sgn(a(prow, j)) != 0) a(r, j) -= f * a(prow, j);
    }
    out.pivot_cols.push_back(c);
    ++prow;
  }
  out.reduced = std::move(a);
  return out;
}

std::size_t rank(const QMatrix& a) { return rref(a).rank(); }

std::size_t rank(const std::vector<QVector>& rows) {
  if (rows.empty()) return 0;
  return rank(QMatrix::from_rows(rows, rows.front().size()));
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
  if (b.size() != a.rows()) throw DimensionMismatch("solve: rhs size mismatch");
  QMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  auto e = rref(std::move(aug));
  if (!e.pivot_cols.empty() && e.pivot_cols.back() == a.cols()) return std::nullopt;
  QVector x(a.cols());
  for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) x[e.pivot_cols[i]] = e.reduced(i, a.cols());
  return x;
}

std::vector<QVector> nullspace(const QMatrix& a) {
  auto e = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector v(a.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) v[e.pivot_cols[i]] = -e.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QMatrix> inverse(const QMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("inverse: matrix not square");
  const std::size_t n = a.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n + r) = 1;
  }
  auto e = rref(std::move(aug));
  if (e.rank() < n || e.pivot_cols[n - 1] != n - 1) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
  return inv;
}

Rational determinant(QMatrix a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("determinant: matrix not square");
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pr = c;
    while (pr < n && sgn(a(pr, c)) == 0) ++pr;
    if (pr == n) return 0;
    if (pr != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pr, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (sgn(a(r, c)) == 0) continue;
      Rational f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j)
        if (sgn(a(c, j)) != 0) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

LinearSolver::LinearSolver(const QMatrix& a) : n_(a.rows()), lu_(a), perm_(a.rows()) {
  if (a.rows() != a.cols()) throw DimensionMismatch("LinearSolver: matrix not square");
  for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;
  for (std::size_t c = 0; c < n_; ++c) {
    std::size_t pr = c;
    while (pr < n_ && sgn(lu_(pr, c)) == 0) ++pr;
    if (pr == n_) {
      singular_ = true;
      return;
    }
    if (pr != c) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(lu_(pr, j), lu_(c, j));
      std::swap(perm_[pr], perm_[c]);
    }
    Rational inv = 1 / lu_(c, c);
    for (std::size_t r = c + 1; r < n_; ++r) {
      if (sgn(lu_(r, c)) == 0) continue;
      lu_(r, c) *= inv;
      const Rational f = lu_(r, c);
      for (std::size_t j = c + 1; j < n_; ++j)
        if (sgn(lu_(c, j)) != 0) lu_(r, j) -= f * lu_(c, j);
    }
  }
}

QVector LinearSolver::solve(const QVector& b) const {
  if (singular_) throw std::logic_error("LinearSolver: singular matrix");
  if (b.size() != n_) throw DimensionMismatch("LinearSolver: rhs size mismatch");
  QVector y(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    y[i] = b[perm_[i]];
    for (std::size_t j = 0; j < i; ++j)
      if (sgn(lu_(i, j)) != 0 && sgn(y[j]) != 0) y[i] -= lu_(i, j) * y[j];
  }
  for (std::size_t i = n_; i-- > 0;) {
    for (std::size_t j = i + 1; j < n_; ++j)
      if (sgn(lu_(i, j)) != 0 && sgn(y[j]) != 0) y[i] -= lu_(i, j) * y[j];
    y[i] /= lu_(i, i);
  }
  return y;
}

}  // namespace tropfact

namespace tropfact {

QVector RowReducer::reduce(QVector row) const {
  if (row.size() != cols_) throw DimensionMismatch("RowReducer: row has wrong length");
  for (const auto& [lead, basis] : rows_) {
    if (sgn(row[lead]) == 0) continue;
    Rational f = row[lead];
    for (std::size_t c = lead; c < cols_; ++c)
      if (sgn(basis[c]) != 0) row[c] -= f * basis[c];
  }
  return row;
}

bool RowReducer::add(QVector row) {
  row = reduce(std::move(row));
  std::size_t lead = 0;
  while (lead < cols_ && sgn(row[lead]) == 0) ++lead;
  if (lead == cols_) return false;
  Rational inv = 1 / row[lead];
  for (std::size_t c = lead; c < cols_; ++c) row[c] *= inv;
  rows_.emplace(lead, std::move(row));
  return true;
}

}  // namespace tropfact
