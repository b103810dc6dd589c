#include "tropfact/subdivision.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <set>
#include <unordered_set>

#include "tropfact/cone.hpp"
#include "tropfact/linalg.hpp"
#include "tropfact/tropical.hpp"

namespace tropfact {

std::vector<KSubset> Subdivision::cell_subsets(std::size_t c) const {
  const auto& idx = planar_basis(k, n).index();
  std::vector<KSubset> out;
  for (auto v : cells.at(c)) out.push_back(idx[v]);
  return out;
}

std::size_t vertex_rank(int k, int n, const std::vector<std::size_t>& vertices) {
  const auto& idx = planar_basis(k, n).index();
  RowReducer red(static_cast<std::size_t>(n));
  for (auto v : vertices) {
    QVector row(static_cast<std::size_t>(n));
    for (int e : idx[v].elements()) row[static_cast<std::size_t>(e - 1)] = 1;
    red.add(std::move(row));
    if (red.rank() == static_cast<std::size_t>(n)) break;
  }
  return red.rank();
}

std::vector<std::vector<std::size_t>> plate_vertex_sets(const Dosp& d) {
  const auto& idx = planar_basis(d.k(), d.n()).index();
  std::vector<std::vector<std::size_t>> plates(d.size());
  for (std::size_t v = 0; v < idx.size(); ++v) {
    std::vector<int> m(d.size());
    int best = INT_MAX;
    for (std::size_t j = 0; j < d.size(); ++j) {
      m[j] = plate_form_at_vertex(d, j, idx[v].bits());
      best = std::min(best, m[j]);
    }
    for (std::size_t j = 0; j < d.size(); ++j)
      if (m[j] == best) plates[j].push_back(v);
  }
  return plates;
}

namespace {

QVector indicator_row(const KSubset& s) {
  QVector row(static_cast<std::size_t>(s.n()));
  for (int e : s.elements()) row[static_cast<std::size_t>(e - 1)] = 1;
  return row;
}

Rational affine_value(const QVector& a, const KSubset& s) {
  Rational v = 0;
  for (int e : s.elements()) v += a[static_cast<std::size_t>(e - 1)];
  return v;
}

std::vector<std::size_t> intersect(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Every vertex and every hypersimplex edge lies in some cell.
bool covers(const Subdivision& sub) {
  const auto& idx = planar_basis(sub.k, sub.n).index();
  std::vector<std::vector<std::size_t>> cells_of(idx.size());
  for (std::size_t c = 0; c < sub.cells.size(); ++c)
    for (auto v : sub.cells[c]) cells_of[v].push_back(c);
  for (std::size_t v = 0; v < idx.size(); ++v) {
    if (cells_of[v].empty()) return false;
    const auto bits = idx[v].bits();
    for (int a = 1; a <= sub.n; ++a) {
      if (!idx[v].contains(a)) continue;
      for (int b = 1; b <= sub.n; ++b) {
        if (idx[v].contains(b)) continue;
        std::size_t w = idx.index_of(KSubset(sub.n, (bits & ~(std::uint64_t{1} << (a - 1))) | (std::uint64_t{1} << (b - 1))));
        if (w < v) continue;
        if (intersect(cells_of[v], cells_of[w]).empty()) return false;
      }
    }
  }
  return true;
}

void sort_cells(std::vector<std::vector<std::size_t>>& cells) {
  for (auto& c : cells) std::sort(c.begin(), c.end());
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
}

}  // namespace

Subdivision subdivision_from_height(const HeightVector& pi) {
  const int k = pi.k, n = pi.n;
  const auto& basis = planar_basis(k, n);
  const auto& idx = basis.index();
  const auto coeffs = basis.expand(pi).planar;

  std::vector<std::vector<std::vector<std::size_t>>> blades;
  for (std::size_t c = 0; c < coeffs.size(); ++c)
    if (sgn(coeffs[c]) != 0) blades.push_back(plate_vertex_sets(dosp_of_subset(basis.nonfrozen()[c])));

  std::vector<std::size_t> all(idx.size());
  for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;

  std::vector<std::vector<std::size_t>> refined;
  std::function<void(std::size_t, const std::vector<std::size_t>&)> descend = [&](std::size_t b,
                                                                                   const std::vector<std::size_t>& cur) {
    if (b == blades.size()) {
      refined.push_back(cur);
      return;
    }
    for (const auto& plate : blades[b]) {
      auto next = intersect(cur, plate);
      if (vertex_rank(k, n, next) == static_cast<std::size_t>(n)) descend(b + 1, next);
    }
  };
  descend(0, all);

  Subdivision sub;
  sub.k = k;
  sub.n = n;
  sub.height = pi;
  sub.method = Subdivision::Method::PlateRefinement;
  bool certified = true;
  std::set<std::vector<std::size_t>> tight_sets;
  for (const auto& cell : refined) {
    std::vector<QVector> rows;
    QVector rhs;
    for (auto v : cell) {
      rows.push_back(indicator_row(idx[v]));
      rhs.push_back(pi.coeffs[v]);
    }
    auto a = solve(QMatrix::from_rows(rows, static_cast<std::size_t>(n)), rhs);
    if (!a) {
      certified = false;
      break;
    }
    std::vector<std::size_t> tight;
    for (std::size_t v = 0; v < idx.size() && certified; ++v) {
      Rational val = affine_value(*a, idx[v]);
      if (val > pi.coeffs[v]) certified = false;
      if (val == pi.coeffs[v]) tight.push_back(v);
    }
    if (!certified) break;
    tight_sets.insert(tight);
  }
  if (certified) {
    sub.cells.assign(tight_sets.begin(), tight_sets.end());
    sort_cells(sub.cells);
    certified = covers(sub);
  }
  if (!certified) return lower_hull_oracle(pi, SIZE_MAX);
  return sub;
}

Subdivision lower_hull_oracle(const HeightVector& pi, std::size_t max_vertices) {
  const int k = pi.k, n = pi.n;
  const auto& idx = planar_basis(k, n).index();
  if (idx.size() > max_vertices)
    throw SizeGuardExceeded("lower_hull_oracle: C(n,k) = " + std::to_string(idx.size()) + " exceeds guard " +
                            std::to_string(max_vertices));
  const std::size_t dim = static_cast<std::size_t>(n) + 1;
  std::vector<IVector> rows;
  IVector t_row(dim);
  t_row[dim - 1] = 1;
  rows.push_back(t_row);
  for (std::size_t v = 0; v < idx.size(); ++v) {
    QVector row(dim);
    for (int e : idx[v].elements()) row[static_cast<std::size_t>(e - 1)] = -1;
    row[dim - 1] = pi.coeffs[v];
    rows.push_back(primitive_integer(row));
  }
  auto dd = double_description(dim, rows);
  Subdivision sub;
  sub.k = k;
  sub.n = n;
  sub.height = pi;
  sub.method = Subdivision::Method::LowerHull;
  for (const auto& r : dd.rays) {
    if (sgn(r[dim - 1]) <= 0) continue;
    QVector a(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = Rational(r[i]) / Rational(r[dim - 1]);
    std::vector<std::size_t> tight;
    for (std::size_t v = 0; v < idx.size(); ++v)
      if (affine_value(a, idx[v]) == pi.coeffs[v]) tight.push_back(v);
    sub.cells.push_back(tight);
  }
  sort_cells(sub.cells);
  return sub;
}

bool satisfies_basis_exchange(int k, int n, const std::vector<std::size_t>& vertices) {
  const auto& idx = planar_basis(k, n).index();
  std::unordered_set<std::uint64_t> bases;
  for (auto v : vertices) bases.insert(idx[v].bits());
  for (auto b1 : bases)
    for (auto b2 : bases) {
      std::uint64_t only1 = b1 & ~b2, only2 = b2 & ~b1;
      for (int x = 0; x < n; ++x) {
        if (!((only1 >> x) & 1U)) continue;
        bool found = false;
        for (int y = 0; y < n && !found; ++y)
          if ((only2 >> y) & 1U)
            found = bases.count((b1 & ~(std::uint64_t{1} << x)) | (std::uint64_t{1} << y)) > 0;
        if (!found) return false;
      }
    }
  return true;
}

bool is_matroidal(const Subdivision& sub) {
  return std::all_of(sub.cells.begin(), sub.cells.end(),
                     [&](const auto& c) { return satisfies_basis_exchange(sub.k, sub.n, c); });
}

bool is_positroidal(const Subdivision& sub) { return is_matroidal(sub) && is_positive_tropical_plucker(sub.height); }

Graph dual_graph(const Subdivision& sub) {
  Graph g;
  g.nodes = sub.cells.size();
  for (std::size_t a = 0; a < sub.cells.size(); ++a)
    for (std::size_t b = a + 1; b < sub.cells.size(); ++b) {
      auto common = intersect(sub.cells[a], sub.cells[b]);
      if (vertex_rank(sub.k, sub.n, common) + 1 == static_cast<std::size_t>(sub.n)) g.edges.emplace_back(a, b);
    }
  return g;
}

std::vector<std::string> cell_labels(const Subdivision& sub) {
  std::vector<std::string> out;
  for (std::size_t c = 0; c < sub.cells.size(); ++c)
    out.push_back("C" + std::to_string(c) + " (" + std::to_string(sub.cells[c].size()) + " vertices)");
  return out;
}

std::size_t affine_height_dimension(const Subdivision& sub) {
  const auto& idx = planar_basis(sub.k, sub.n).index();
  const std::size_t n = static_cast<std::size_t>(sub.n);
  const std::size_t unknowns = n * sub.cells.size();
  std::vector<std::vector<std::size_t>> cells_of(idx.size());
  for (std::size_t c = 0; c < sub.cells.size(); ++c)
    for (auto v : sub.cells[c]) cells_of[v].push_back(c);
  RowReducer red(unknowns);
  for (std::size_t v = 0; v < idx.size() && red.rank() < unknowns; ++v) {
    const auto& cs = cells_of[v];
    for (std::size_t t = 1; t < cs.size(); ++t) {
      QVector row(unknowns);
      for (int e : idx[v].elements()) {
        row[cs[0] * n + static_cast<std::size_t>(e - 1)] += 1;
        row[cs[t] * n + static_cast<std::size_t>(e - 1)] -= 1;
      }
      red.add(std::move(row));
    }
  }
  return unknowns - red.rank();
}

bool is_coarsest(const Subdivision& sub) { return affine_height_dimension(sub) == static_cast<std::size_t>(sub.n) + 1; }

}  // namespace tropfact
