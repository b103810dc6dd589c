#include "tropfact/io.hpp"

#include <fstream>
#include <sstream>

namespace tropfact {

namespace {

Json rational_json(const Rational& q) { return tropfact::to_string(q); }

Json elements_json(const KSubset& j) { return j.elements(); }

KSubset subset_from_json(const Json& j, int n) {
  if (!j.is_array()) throw MalformedInput("subset must be an array of integers");
  std::vector<int> e;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw MalformedInput("subset entries must be integers");
    int v = x.get<int>();
    if (v < 1 || v > n) throw MalformedInput("subset entry out of range");
    e.push_back(v);
  }
  KSubset s(n, e);
  if (static_cast<std::size_t>(s.k()) != e.size()) throw MalformedInput("repeated subset entry");
  return s;
}

std::pair<int, int> kn_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("k") || !j.contains("n")) throw MalformedInput("expected an object with k and n");
  int k = j.at("k").get<int>(), n = j.at("n").get<int>();
  if (k < 1 || n > 63 || k >= n) throw MalformedInput("bad (k, n)");
  return {k, n};
}

QVector coefficients_from_json(const Json& j, int k, int n, const char* key) {
  if (!j.contains("coeffs") || !j.at("coeffs").is_array()) throw MalformedInput("missing coeffs array");
  const auto& idx = planar_basis(k, n).index();
  QVector out(idx.size());
  for (const auto& entry : j.at("coeffs")) {
    if (!entry.contains(key) || !entry.contains("c")) throw MalformedInput(std::string("coefficient entry needs ") + key + " and c");
    auto s = subset_from_json(entry.at(key), n);
    if (s.k() != k) throw MalformedInput("subset has the wrong size");
    out[idx.index_of(s)] += rational_from_json(entry.at("c"));
  }
  return out;
}

Json coefficients_json(int k, int n, const QVector& v, const char* key) {
  const auto& idx = planar_basis(k, n).index();
  Json arr = Json::array();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) arr.push_back({{key, elements_json(idx[i])}, {"c", rational_json(v[i])}});
  return {{"k", k}, {"n", n}, {"coeffs", arr}};
}

std::string term(const Rational& c, const std::string& name, bool first) {
  std::string s;
  if (first)
    s = sgn(c) < 0 ? "-" : "";
  else
    s = sgn(c) < 0 ? " - " : " + ";
  Rational a = abs(c);
  if (a != 1) s += tropfact::to_string(a) + " ";
  return s + name;
}

std::string compact(const KSubset& j) {
  std::string s;
  bool wide = j.n() >= 10;
  for (int e : j.elements()) {
    if (wide && !s.empty()) s += ",";
    s += std::to_string(e);
  }
  return s;
}

}  // namespace

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw MalformedInput(e.what());
    }
  }
  throw MalformedInput("rationals are integers or \"p/q\" strings");
}

Json to_json(const HeightVector& h) { return coefficients_json(h.k, h.n, h.coeffs, "J"); }

HeightVector height_from_json(const Json& j) {
  auto [k, n] = kn_from_json(j);
  return HeightVector(k, n, coefficients_from_json(j, k, n, "J"));
}

Json to_json(const KinematicForm& f) { return coefficients_json(f.k, f.n, f.coeffs, "s"); }

Json kinematics_to_json(int k, int n, const QVector& s) { return coefficients_json(k, n, s, "s"); }

QVector kinematics_from_json(const Json& j, int k, int n) {
  auto [jk, jn] = kn_from_json(j);
  if (jk != k || jn != n) throw MalformedInput("kinematic point has a different (k, n)");
  return coefficients_from_json(j, k, n, "s");
}

GridVector grid_from_json(const Json& j) {
  auto [k, n] = kn_from_json(j);
  if (!j.contains("y") || !j.at("y").is_array() || j.at("y").size() != static_cast<std::size_t>(k - 1))
    throw MalformedInput("y must list k-1 rows");
  GridVector y(k, n);
  for (int i = 1; i <= k - 1; ++i) {
    const auto& row = j.at("y")[static_cast<std::size_t>(i - 1)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n - k)) throw MalformedInput("each row has n-k entries");
    for (int c = 1; c <= n - k; ++c) y.at(i, c) = rational_from_json(row[static_cast<std::size_t>(c - 1)]);
  }
  return y;
}

Json to_json(const GridVector& y) {
  Json rows = Json::array();
  for (int i = 1; i <= y.rows(); ++i) {
    Json row = Json::array();
    for (int c = 1; c <= y.cols(); ++c) row.push_back(rational_json(y.at(i, c)));
    rows.push_back(row);
  }
  return {{"k", y.k}, {"n", y.n}, {"y", rows}};
}

Json planar_json(int k, int n, const QVector& planar) {
  const auto& nf = planar_basis(k, n).nonfrozen();
  Json arr = Json::array();
  for (std::size_t i = 0; i < planar.size(); ++i)
    if (sgn(planar[i]) != 0) arr.push_back({{"J", elements_json(nf[i])}, {"c", rational_json(planar[i])}});
  return arr;
}

Json to_json(const Subdivision& s) {
  Json cells = Json::array();
  for (std::size_t c = 0; c < s.cells.size(); ++c) {
    Json cell = Json::array();
    for (const auto& j : s.cell_subsets(c)) cell.push_back(elements_json(j));
    cells.push_back(cell);
  }
  return {{"k", s.k}, {"n", s.n}, {"cells", cells}};
}

Json to_json(const PropagatorSet& p) {
  Json items = Json::array();
  for (const auto& it : p.items) {
    auto planar = planar_basis(it.form.k, it.form.n).expand(it.height).planar;
    items.push_back({{"label", it.label}, {"planar", planar_json(it.form.k, it.form.n, planar)}});
  }
  Json rels = Json::array();
  for (const auto& r : p.relations) {
    Json row = Json::array();
    for (const auto& c : r) row.push_back(rational_json(c));
    rels.push_back(row);
  }
  return {{"size", p.items.size()}, {"rank", p.rank}, {"items", items}, {"relations", rels}};
}

Json to_json(const Cone& c) {
  auto vecs = [](const std::vector<IVector>& vs) {
    Json a = Json::array();
    for (const auto& v : vs) {
      Json row = Json::array();
      for (const auto& x : v) row.push_back(x.get_str());
      a.push_back(row);
    }
    return a;
  };
  return {{"ambient", c.ambient},   {"dimension", c.dimension()},     {"rays", vecs(c.rays)},
          {"lineality", vecs(c.lineality)}, {"facets", vecs(c.facets)}, {"equations", vecs(c.equations)}};
}

Json to_json(const FactorizationReport& r) {
  Json ids = Json::array();
  for (const auto& id : r.identifications) {
    Json j = {{"m", id.m}, {"searched", id.searched}, {"found", id.found}, {"poles", id.poles},
              {"group_forms", id.group_forms}, {"candidates", id.candidates}};
    if (id.found) j["constant"] = rational_json(id.constant);
    ids.push_back(j);
  }
  Json out = {{"channel", r.channel},
              {"seed", r.seed},
              {"tower", r.tower},
              {"order", r.order},
              {"orders_tried", r.orders_tried},
              {"nonvanishing", r.nonvanishing},
              {"result", r.result},
              {"value_at_sample", rational_json(r.value_at_sample)},
              {"star_cones", r.star_cones},
              {"groups", r.separability.groups},
              {"expected_groups", r.expected_groups},
              {"separable", r.separability.separable},
              {"separability_samples", r.separability.samples},
              {"factor_sizes", r.factor_sizes},
              {"identifications", ids}};
  out["overall_constant"] = r.overall_constant ? Json(rational_json(*r.overall_constant)) : Json(nullptr);
  out["wrong_order_checked"] = r.wrong_order_checked;
  out["wrong_order_vanishes"] = r.wrong_order_vanishes;
  return out;
}

Json to_json(const PrefactorCheck& p) {
  return {{"channel", p.channel},           {"first", p.first},   {"second", p.second},
          {"first_nonzero", p.first_nonzero}, {"second_nonzero", p.second_nonzero},
          {"equal", p.equal},               {"samples", p.samples}, {"seed", p.seed}};
}

std::string expansion_string(const HeightVector& h, const std::string& symbol) {
  const auto& idx = planar_basis(h.k, h.n).index();
  std::string s;
  for (std::size_t i = 0; i < h.coeffs.size(); ++i)
    if (sgn(h.coeffs[i]) != 0) s += term(h.coeffs[i], symbol + compact(idx[i]), s.empty());
  return s.empty() ? "0" : s;
}

std::string planar_string(int k, int n, const QVector& planar) {
  const auto& nf = planar_basis(k, n).nonfrozen();
  std::string s;
  for (std::size_t i = 0; i < planar.size(); ++i)
    if (sgn(planar[i]) != 0) s += term(planar[i], "eta" + compact(nf[i]), s.empty());
  return s.empty() ? "0" : s;
}

std::vector<KSubset> parse_collection(const std::string& text, int n) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw MalformedInput(e.what());
  }
  if (!j.is_array()) throw MalformedInput("collection must be an array of subsets");
  std::vector<KSubset> out;
  for (const auto& x : j) out.push_back(subset_from_json(x, n));
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw MalformedInput(path + ": " + e.what());
  }
}

}  // namespace tropfact
