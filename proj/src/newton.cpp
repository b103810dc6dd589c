#include "tropfact/newton.hpp"

#include <algorithm>
#include <set>

#include "tropfact/linalg.hpp"

namespace tropfact {

namespace {

Rational pairing(const Exponent& m, const GridVector& w) {
  Rational v = 0;
  for (std::size_t t = 0; t < m.size(); ++t)
    if (m[t] != 0) v += m[t] * w.entries[t];
  return v;
}

QVector as_point(const Exponent& m) { return QVector(m.begin(), m.end()); }

}  // namespace

NewtonFace newton_face(const GridVector& w) {
  const auto& table = monomial_table(w.k, w.n);
  NewtonFace face;
  face.k = w.k;
  face.n = w.n;
  face.w = w;
  face.minimizers.resize(table.monomials.size());
  RowReducer span(w.entries.size());
  for (std::size_t i = 0; i < table.monomials.size(); ++i) {
    std::optional<Rational> best;
    for (const auto& m : table.monomials[i]) {
      Rational v = pairing(m, w);
      if (!best || v < *best) {
        best = v;
        face.minimizers[i].clear();
      }
      if (v == *best) face.minimizers[i].push_back(m);
    }
    const auto& mins = face.minimizers[i];
    for (std::size_t t = 1; t < mins.size() && span.rank() < span.cols(); ++t) {
      QVector diff(w.entries.size());
      for (std::size_t c = 0; c < diff.size(); ++c) diff[c] = Rational(mins[t][c]) - Rational(mins[0][c]);
      span.add(std::move(diff));
    }
  }
  face.dimension = span.rank();
  return face;
}

Rational newton_support(const GridVector& w) {
  Rational s = 0;
  for (const auto& x : trop_plucker(w).coeffs) s += x;
  return s;
}

bool simultaneously_minimizable(const std::vector<GridVector>& functionals) {
  if (functionals.empty()) return true;
  GridVector total = functionals.front();
  Rational separate = newton_support(functionals.front());
  for (std::size_t i = 1; i < functionals.size(); ++i) {
    total += functionals[i];
    separate += newton_support(functionals[i]);
  }
  return newton_support(total) == separate;
}

Polytope minkowski_sum(const std::vector<std::vector<QVector>>& summands) {
  if (summands.empty()) throw DegenerateInput("minkowski_sum: no summands");
  std::vector<QVector> current = convex_hull(summands.front()).vertices;
  for (std::size_t s = 1; s < summands.size(); ++s) {
    if (summands[s].size() == 1) {
      for (auto& p : current)
        for (std::size_t c = 0; c < p.size(); ++c) p[c] += summands[s][0][c];
      continue;
    }
    std::set<QVector> sums;
    for (const auto& p : current)
      for (const auto& q : convex_hull(summands[s]).vertices) {
        QVector r = p;
        for (std::size_t c = 0; c < r.size(); ++c) r[c] += q[c];
        sums.insert(r);
      }
    current = convex_hull(std::vector<QVector>(sums.begin(), sums.end())).vertices;
  }
  return convex_hull(current);
}

Polytope face_polytope(const NewtonFace& face) {
  std::vector<std::vector<QVector>> summands;
  for (const auto& mins : face.minimizers) {
    std::vector<QVector> pts;
    for (const auto& m : mins) pts.push_back(as_point(m));
    summands.push_back(pts);
  }
  return minkowski_sum(summands);
}

std::vector<Bits> faces_of_dimension(const FaceLattice& lattice, std::size_t dim) {
  // lattice.faces[d-1] holds cone faces of dimension d, i.e. polytope faces of dimension d-1
  if (dim + 1 > lattice.faces.size()) return {};
  return lattice.faces[dim];
}

std::vector<std::size_t> face_f_vector(const FaceLattice& lattice, const Bits& face) {
  std::vector<std::size_t> f;
  for (const auto& level : lattice.faces) {
    std::size_t c = 0;
    for (const auto& g : level)
      if (g.subset_of(face)) ++c;
    if (c == 0) break;
    f.push_back(c);
  }
  return f;
}

}  // namespace tropfact
