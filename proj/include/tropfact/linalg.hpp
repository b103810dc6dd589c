#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tropfact/rational.hpp"

namespace tropfact {

/// Dense row-major matrix over the rationals.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  QVector row(std::size_t r) const;
  QVector col(std::size_t c) const;
  QMatrix transpose() const;

  QVector operator*(const QVector& x) const;
  QMatrix operator*(const QMatrix& other) const;

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Reduced row echelon form. Pivots are chosen as the first row (in order)
/// with a nonzero entry in the current column.
struct RowEchelon {
  QMatrix reduced;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const { return pivot_cols.size(); }
};

RowEchelon rref(QMatrix a);

std::size_t rank(const QMatrix& a);
std::size_t rank(const std::vector<QVector>& rows);

/// Some x with a * x == b (free variables set to zero), or nullopt when the
/// system is inconsistent.
std::optional<QVector> solve(const QMatrix& a, const QVector& b);

/// Basis of {x : a * x = 0}; one vector per free column, with a 1 in that column.
std::vector<QVector> nullspace(const QMatrix& a);

/// Inverse of a square matrix, nullopt when singular.
std::optional<QMatrix> inverse(const QMatrix& a);

Rational determinant(QMatrix a);

/// LU-style factorization of a square nonsingular matrix for repeated solves.
class LinearSolver {
 public:
  explicit LinearSolver(const QMatrix& a);
  bool singular() const { return singular_; }
  QVector solve(const QVector& b) const;

 private:
  std::size_t n_ = 0;
  bool singular_ = false;
  QMatrix lu_;
  std::vector<std::size_t> perm_;
};

/// Echelon basis grown one row at a time; add() reports whether the row was new.
class RowReducer {
 public:
  explicit RowReducer(std::size_t cols) : cols_(cols) {}
  bool add(QVector row);
  /// Reduces row against the basis; returns the remainder.
  QVector reduce(QVector row) const;
  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t cols_;
  std::map<std::size_t, QVector> rows_;  // leading column -> row with leading entry 1
};

}  // namespace tropfact
