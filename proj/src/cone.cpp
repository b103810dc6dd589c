#include "tropfact/cone.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "tropfact/linalg.hpp"

namespace tropfact {

std::size_t Bits::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Bits::subset_of(const Bits& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~o.words_[i]) return false;
  return true;
}

Bits Bits::operator&(const Bits& o) const {
  Bits r(size_);
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
  return r;
}

std::size_t Bits::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto w : words_) h = (h ^ w) * 0x100000001b3ULL;
  return h;
}

std::vector<std::size_t> Bits::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size_; ++i)
    if (test(i)) out.push_back(i);
  return out;
}

namespace {

struct BitsHash {
  std::size_t operator()(const Bits& b) const { return b.hash(); }
};

void make_primitive(IVector& v) {
  Integer g = 0;
  for (const auto& x : v) {
    if (sgn(x) == 0) continue;
    g = gcd(g, x);
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& x : v) x /= g;
}

Integer idot(const IVector& a, const IVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

// p*x - q*y, made primitive
IVector combine(const Integer& p, const IVector& x, const Integer& q, const IVector& y) {
  IVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = p * x[i] - q * y[i];
  make_primitive(out);
  return out;
}

IVector to_integer(const QVector& v) { return primitive_integer(v); }

QVector to_rational(const IVector& v) { return QVector(v.begin(), v.end()); }

bool is_zero_vector(const IVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return sgn(x) == 0; });
}

// Canonical basis of a linear subspace: reduced row echelon form, each row primitive.
std::vector<IVector> canonical_basis(const std::vector<IVector>& vectors, std::size_t dim) {
  if (vectors.empty()) return {};
  std::vector<QVector> rows;
  for (const auto& v : vectors) rows.push_back(to_rational(v));
  auto e = rref(QMatrix::from_rows(rows, dim));
  std::vector<IVector> out;
  for (std::size_t r = 0; r < e.rank(); ++r) out.push_back(to_integer(e.reduced.row(r)));
  return out;
}

void sort_unique(std::vector<IVector>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

DoubleDescription double_description(std::size_t dim, const std::vector<IVector>& inequalities) {
  const std::size_t m = inequalities.size();
  std::vector<IVector> lin;
  for (std::size_t i = 0; i < dim; ++i) {
    IVector e(dim);
    e[i] = 1;
    lin.push_back(e);
  }
  std::vector<IVector> rays;
  std::vector<Bits> zeros;

  for (std::size_t c = 0; c < m; ++c) {
    const IVector& a = inequalities[c];
    if (a.size() != dim) throw std::invalid_argument("double_description: inequality has wrong length");
    if (is_zero_vector(a)) continue;

    std::size_t pivot = lin.size();
    for (std::size_t i = 0; i < lin.size(); ++i)
      if (sgn(idot(a, lin[i])) != 0) {
        pivot = i;
        break;
      }
    if (pivot < lin.size()) {
      IVector l = lin[pivot];
      Integer al = idot(a, l);
      if (al < 0) {
        for (auto& x : l) x = -x;
        al = -al;
      }
      std::vector<IVector> next_lin;
      for (std::size_t i = 0; i < lin.size(); ++i) {
        if (i == pivot) continue;
        Integer ai = idot(a, lin[i]);
        next_lin.push_back(sgn(ai) == 0 ? lin[i] : combine(al, lin[i], ai, l));
      }
      for (std::size_t r = 0; r < rays.size(); ++r) {
        Integer ar = idot(a, rays[r]);
        if (sgn(ar) != 0) rays[r] = combine(al, rays[r], ar, l);
        zeros[r].set(c);
      }
      Bits z(m);
      for (std::size_t j = 0; j < c; ++j) z.set(j);
      rays.push_back(l);
      zeros.push_back(z);
      lin = std::move(next_lin);
      continue;
    }

    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg, zer;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = idot(a, rays[r]);
      int s = sgn(val[r]);
      (s > 0 ? pos : s < 0 ? neg : zer).push_back(r);
    }
    if (neg.empty()) {
      for (auto r : zer) zeros[r].set(c);
      continue;
    }
    const std::size_t pointed_dim = dim - lin.size();
    std::vector<IVector> next_rays;
    std::vector<Bits> next_zeros;
    for (auto r : pos) {
      next_rays.push_back(rays[r]);
      next_zeros.push_back(zeros[r]);
    }
    for (auto r : zer) {
      next_rays.push_back(rays[r]);
      zeros[r].set(c);
      next_zeros.push_back(zeros[r]);
    }
    for (auto p : pos)
      for (auto q : neg) {
        Bits z = zeros[p] & zeros[q];
        if (pointed_dim >= 2 && z.count() + 2 < pointed_dim) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
          if (r != p && r != q && z.subset_of(zeros[r])) adjacent = false;
        if (!adjacent) continue;
        // val[p] > 0 > val[q]: val[p]*q - val[q]*p has nonnegative weights and vanishes on a
        next_rays.push_back(combine(val[p], rays[q], val[q], rays[p]));
        z.set(c);
        next_zeros.push_back(z);
      }
    rays = std::move(next_rays);
    zeros = std::move(next_zeros);
  }
  return {lin, rays};
}

bool Cone::contains(const QVector& x) const {
  for (const auto& f : facets)
    if (dot(to_rational(f), x) < 0) return false;
  for (const auto& e : equations)
    if (sgn(dot(to_rational(e), x)) != 0) return false;
  return true;
}

std::vector<Bits> Cone::facet_incidence() const {
  std::vector<Bits> out;
  for (const auto& f : facets) {
    Bits b(rays.size());
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (sgn(idot(f, rays[r])) == 0) b.set(r);
    out.push_back(b);
  }
  return out;
}

namespace {

// Completes a cone given irredundant-or-not H data by recomputing both sides.
Cone finish(std::size_t ambient, const std::vector<IVector>& ineqs, const std::vector<IVector>& eqs) {
  std::vector<IVector> all = ineqs;
  for (const auto& e : eqs) {
    all.push_back(e);
    IVector m = e;
    for (auto& x : m) x = -x;
    all.push_back(m);
  }
  auto v = double_description(ambient, all);
  Cone c;
  c.ambient = ambient;
  c.lineality = canonical_basis(v.lineality, ambient);
  c.rays = v.rays;
  for (auto& r : c.rays) make_primitive(r);
  sort_unique(c.rays);

  std::vector<IVector> gens = c.rays;
  for (const auto& l : c.lineality) {
    gens.push_back(l);
    IVector m = l;
    for (auto& x : m) x = -x;
    gens.push_back(m);
  }
  auto h = double_description(ambient, gens);
  c.equations = canonical_basis(h.lineality, ambient);
  c.facets = h.rays;
  sort_unique(c.facets);
  return c;
}

}  // namespace

Cone cone_from_generators(std::size_t ambient, const std::vector<QVector>& generators) {
  std::vector<IVector> gens;
  for (const auto& g : generators) {
    if (g.size() != ambient) throw std::invalid_argument("cone_from_generators: generator has wrong length");
    IVector v = to_integer(g);
    if (!is_zero_vector(v)) gens.push_back(v);
  }
  if (gens.empty()) throw DegenerateInput("cone_from_generators: no nonzero generators");
  auto h = double_description(ambient, gens);
  return finish(ambient, h.rays, h.lineality);
}

Cone cone_from_inequalities(std::size_t ambient, const std::vector<QVector>& inequalities,
                            const std::vector<QVector>& equations) {
  std::vector<IVector> ineqs, eqs;
  for (const auto& a : inequalities) {
    if (a.size() != ambient) throw std::invalid_argument("cone_from_inequalities: row has wrong length");
    ineqs.push_back(to_integer(a));
  }
  for (const auto& e : equations) {
    if (e.size() != ambient) throw std::invalid_argument("cone_from_inequalities: row has wrong length");
    eqs.push_back(to_integer(e));
  }
  Cone c = finish(ambient, ineqs, eqs);
  if (c.rays.empty() && c.lineality.empty()) throw DegenerateInput("cone_from_inequalities: cone is {0}");
  return c;
}

std::vector<std::size_t> FaceLattice::f_vector() const {
  std::vector<std::size_t> f;
  for (const auto& level : faces) f.push_back(level.size());
  return f;
}

FaceLattice face_lattice(const Cone& c) {
  if (!c.pointed()) throw DegenerateInput("face_lattice: cone is not pointed");
  const std::size_t d = c.dimension();
  FaceLattice lat;
  lat.faces.resize(d);
  if (d == 0) return lat;
  Bits all(c.rays.size());
  for (std::size_t r = 0; r < c.rays.size(); ++r) all.set(r);
  lat.faces[d - 1] = {all};
  const auto inc = c.facet_incidence();
  for (std::size_t dim = d; dim >= 2; --dim) {
    std::unordered_set<Bits, BitsHash> seen;
    std::vector<Bits> next;
    for (const auto& face : lat.faces[dim - 1]) {
      std::vector<Bits> cand;
      for (const auto& f : inc) {
        if (face.subset_of(f)) continue;
        cand.push_back(face & f);
      }
      std::sort(cand.begin(), cand.end());
      cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
      for (std::size_t i = 0; i < cand.size(); ++i) {
        if (cand[i].count() == 0) continue;
        bool maximal = true;
        for (std::size_t j = 0; j < cand.size() && maximal; ++j)
          if (j != i && cand[i].subset_of(cand[j])) maximal = false;
        if (maximal && seen.insert(cand[i]).second) next.push_back(cand[i]);
      }
    }
    std::sort(next.begin(), next.end());
    lat.faces[dim - 2] = std::move(next);
  }
  return lat;
}

std::vector<std::size_t> f_vector(const Cone& c) { return face_lattice(c).f_vector(); }

Polytope convex_hull(const std::vector<QVector>& points) {
  if (points.empty()) throw DegenerateInput("convex_hull: no points");
  const std::size_t dim = points.front().size();
  std::vector<QVector> gens;
  for (const auto& p : points) {
    if (p.size() != dim) throw std::invalid_argument("convex_hull: points of mixed dimension");
    QVector g{Rational(1)};
    g.insert(g.end(), p.begin(), p.end());
    gens.push_back(g);
  }
  Polytope poly{cone_from_generators(dim + 1, gens), {}};
  for (const auto& r : poly.cone.rays) {
    QVector v;
    Rational h = r[0];
    for (std::size_t i = 1; i < r.size(); ++i) v.push_back(Rational(r[i]) / h);
    poly.vertices.push_back(v);
  }
  return poly;
}

}  // namespace tropfact
