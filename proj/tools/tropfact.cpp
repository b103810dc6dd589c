#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <random>
#include <set>

#include "CLI11.hpp"
#include "tropfact/amplitude.hpp"
#include "tropfact/io.hpp"
#include "tropfact/newton.hpp"
#include "tropfact/parallel.hpp"

using namespace tropfact;

namespace {

struct RunConfig {
  std::uint64_t seed = 1;
  std::size_t max_dim = 6;
  int bound = 2;
  std::size_t max_orders = 120;
  bool long_run = false;
  bool json = false;
  std::string report;
  std::string dot;
};

struct Outcome {
  int code = 0;
  Json result = Json::object();
  std::string text;  // printed instead of the JSON result when non-empty
};

struct Usage : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string iso_now() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::pair<int, int> parse_kn(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw Usage("--kn expects k,n");
  int k = std::stoi(text.substr(0, comma)), n = std::stoi(text.substr(comma + 1));
  if (k < 2 || n > 63 || k > n - 2) throw Usage("--kn needs 2 <= k <= n-2, n <= 63");
  return {k, n};
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(std::stoi(item));
  return out;
}

int infer_n(const std::string& partition) {
  int n = 0;
  bool wide = partition.find(',') != std::string::npos;
  std::string num;
  auto flush = [&] {
    if (!num.empty()) n = std::max(n, std::stoi(num));
    num.clear();
  };
  for (char c : partition) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      if (wide)
        num += c;
      else
        n = std::max(n, c - '0');
    } else {
      flush();
    }
  }
  flush();
  return n;
}

ChannelSpec channel_arg(const std::string& text, int n) { return parse_channel(text, n > 0 ? n : infer_n(text)); }

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

void write_dot(const RunConfig& cfg, const Graph& g, const std::vector<std::string>& labels, const std::string& name) {
  if (cfg.dot.empty()) return;
  std::ofstream out(cfg.dot);
  if (!out) throw Usage("cannot write " + cfg.dot);
  out << g.to_dot(labels, name);
}

std::vector<std::size_t> product_f_vector(const std::vector<std::vector<std::size_t>>& factors) {
  std::vector<std::size_t> acc = {1};
  for (const auto& f : factors) {
    std::vector<std::size_t> next(acc.size() + f.size() - 1);
    for (std::size_t i = 0; i < acc.size(); ++i)
      for (std::size_t j = 0; j < f.size(); ++j) next[i + j] += acc[i] * f[j];
    acc = next;
  }
  return acc;
}

// f-vector of N_{k,m}; a point when m <= k + 1.
std::vector<std::size_t> newton_f_vector(int k, int m) {
  if (m <= k + 1) return {1};
  return face_polytope(newton_face(GridVector(k, m))).f_vector();
}

std::vector<int> factor_sizes(const ChannelSpec& s) {
  std::vector<int> out;
  for (const auto& b : s.blocks())
    if (b.size() >= 2) out.push_back(static_cast<int>(b.size()) + s.k() - 1);
  return out;
}

// ---------------------------------------------------------------- blades

Outcome blades_eta(const std::string& dosp, const std::string& subset, int n) {
  if (dosp.empty() == subset.empty()) throw Usage("give exactly one of --dosp, --subset");
  Dosp d;
  std::optional<KSubset> j;
  if (!dosp.empty()) {
    d = parse_dosp(dosp, n);
    try {
      j = subset_of_dosp(d);
    } catch (const NotInImage&) {
    }
  } else {
    j = KSubset(n, parse_ints(subset));
    d = dosp_of_subset(*j);
  }
  auto h = dosp.empty() ? height_of_subset(*j) : height_of_dosp(d);
  auto planar = planar_coordinates(eta_of_dosp(d));
  Outcome o;
  o.result = {{"dosp", d.canonical().to_string()},
              {"subset", j ? Json(j->elements()) : Json(nullptr)},
              {"height", to_json(h)},
              {"planar", planar_json(h.k, n, planar)}};
  o.text = "eta_" + d.canonical().to_string() + " = " + expansion_string(h) + "\n";
  o.text += "planar: " + planar_string(h.k, n, planar) + "\n";
  o.text += "subset: " + (j ? j->to_string() : std::string("none")) + "\n";
  return o;
}

Outcome blades_expand(const std::string& path) {
  auto h = height_from_json(read_json_file(path));
  auto e = planar_basis(h.k, h.n).expand(h);
  Json lin = Json::array();
  for (const auto& c : e.lineality) lin.push_back(tropfact::to_string(c));
  Outcome o;
  o.result = {{"planar", planar_json(h.k, h.n, e.planar)}, {"lineality", lin}};
  o.text = "planar: " + planar_string(h.k, h.n, e.planar) + "\nlineality: " + lin.dump() + "\n";
  return o;
}

// ---------------------------------------------------------------- trop

Outcome trop_pluecker(const std::string& kn, const std::string& path) {
  auto [k, n] = parse_kn(kn);
  auto y = grid_from_json(read_json_file(path));
  if (y.k != k || y.n != n) throw Usage("grid file has a different (k, n)");
  auto pi = trop_plucker(y);
  Outcome o;
  o.result = {{"pi", to_json(pi)}, {"positive", is_positive_tropical_plucker(pi)}};
  return o;
}

Outcome trop_check(const std::string& path) {
  auto pi = height_from_json(read_json_file(path));
  auto rel = first_violated_relation(pi);
  Outcome o;
  o.result["positive"] = !rel;
  if (rel) {
    o.code = 1;
    o.result["violated"] = {{"L", rel->l.elements()}, {"a", rel->a}, {"b", rel->b}, {"c", rel->c}, {"d", rel->d}};
    o.text = "violated: L=" + rel->l.to_string() + " a,b,c,d=" + std::to_string(rel->a) + "," + std::to_string(rel->b) +
             "," + std::to_string(rel->c) + "," + std::to_string(rel->d) + "\n";
  } else {
    o.text = "positive\n";
  }
  return o;
}

Outcome trop_root(const std::string& subset, int n) {
  auto r = positive_root_vector(KSubset(n, parse_ints(subset)));
  Outcome o;
  o.result = to_json(r.vector);
  return o;
}

Outcome trop_proj(const std::string& path) {
  Outcome o;
  o.result = to_json(proj_rt(height_from_json(read_json_file(path))));
  return o;
}

// ---------------------------------------------------------------- subdivisions and rays

HeightVector collection_height(const std::string& collection, const std::string& kn) {
  auto [k, n] = parse_kn(kn);
  HeightVector h(k, n);
  for (const auto& j : parse_collection(collection, n)) {
    if (j.k() != k) throw Usage("collection member has the wrong size");
    h += height_of_subset(j);
  }
  return h;
}

Json subdivision_summary(const Subdivision& s) {
  Json j = to_json(s);
  j["method"] = s.method == Subdivision::Method::LowerHull ? "lower-hull" : "plate-refinement";
  j["cell_count"] = s.cells.size();
  j["matroidal"] = is_matroidal(s);
  j["positroidal"] = is_positroidal(s);
  j["coarsest"] = is_coarsest(s);
  return j;
}

Outcome subdiv(const RunConfig& cfg, const std::string& heights, const std::string& dosp, int n,
               const std::string& collection, const std::string& kn, bool oracle) {
  HeightVector h;
  if (!heights.empty())
    h = height_from_json(read_json_file(heights));
  else if (!dosp.empty())
    h = height_of_dosp(parse_dosp(dosp, n));
  else if (!collection.empty())
    h = collection_height(collection, kn);
  else
    throw Usage("give --heights, --dosp or --collection");
  auto s = oracle ? lower_hull_oracle(h) : subdivision_from_height(h);
  write_dot(cfg, dual_graph(s), cell_labels(s), "dual");
  Outcome o;
  o.result = subdivision_summary(s);
  return o;
}

Json ray_json(const NoncrossingRay& r, int k, int n) {
  auto sub = subdivision_from_height(r.pi);
  return {{"planar", planar_json(k, n, r.planar)},
          {"incompatibility_edges", r.incompatibility.edges.size()},
          {"is_ray", r.is_ray},
          {"cells", sub.cells.size()},
          {"positroidal", is_positroidal(sub)},
          {"coarsest", is_coarsest(sub)}};
}

Outcome ray(const RunConfig& cfg, const std::string& collection, const std::string& kn) {
  auto [k, n] = parse_kn(kn);
  auto members = parse_collection(collection, n);
  for (const auto& j : members)
    if (j.k() != k) throw Usage("collection member has the wrong size");
  auto r = ray_from_noncrossing(members);
  std::vector<std::string> labels;
  for (const auto& j : members) labels.push_back(j.to_string());
  write_dot(cfg, r.incompatibility, labels, "incompatibility");
  Outcome o;
  o.result = ray_json(r, k, n);
  o.result["pi"] = to_json(r.pi);
  o.code = r.is_ray ? 0 : 1;
  return o;
}

// ---------------------------------------------------------------- cones and channels

Outcome cone_fvector(bool k3, bool balancing, const std::string& channel, int n, bool inequalities) {
  Cone c;
  if (balancing) {
    c = balancing_cone();
  } else {
    if (!k3 && channel.empty()) throw Usage("give --channel-k3, --balancing or --channel");
    auto s = k3 ? parse_channel("12|34|56", 6) : channel_arg(channel, n);
    auto gen = factorization_cone(s);
    if (inequalities) {
      HeightVector star(s.k(), s.n());
      for (const auto& g : gen.generators) star += g;
      c = plucker_cone(channel_basis(s), star).cone;
    } else {
      c = gen.cone;
    }
  }
  auto f = f_vector(c);
  Outcome o;
  o.result = {{"f_vector", f}, {"rays", c.rays.size()}, {"dimension", c.dimension()}};
  o.text = join(f) + "\n";
  return o;
}

Outcome cone_rays(const std::string& channel, int n) {
  auto s = channel_arg(channel, n);
  auto c = factorization_cone(s);
  Outcome o;
  o.result = {{"channel", s.to_string()}, {"basis", c.basis_labels}, {"cone", to_json(c.cone)}};
  return o;
}

Outcome cone_section(const RunConfig& cfg, const std::string& channel, int n) {
  auto s = channel_arg(channel, n);
  std::vector<Propagator> basis;
  for (const auto& d : hatx_collection(s)) basis.push_back({d.to_string(), height_of_dosp(d), eta_of_dosp(d)});
  auto fs = fan_section(basis, cfg.bound);
  Json dims = Json::array();
  for (const auto& c : fs.maximal_cones) dims.push_back(c.dimension());
  Outcome o;
  o.result = {{"channel", s.to_string()},
              {"bound", cfg.bound},
              {"combinations_tested", fs.combinations_tested},
              {"positive_points", fs.positive_points},
              {"maximal_cones", fs.maximal_cones.size()},
              {"cone_dimensions", dims},
              {"rays", fs.rays.size()}};
  return o;
}

Outcome channel_cmd(const std::string& partition, int n, const std::string& type) {
  auto s = channel_arg(partition, n);
  Outcome o;
  o.result["channel"] = s.to_string();
  auto labels = [](const std::vector<Dosp>& ds) {
    Json a = Json::array();
    for (const auto& d : ds) a.push_back(d.canonical().to_string());
    return a;
  };
  if (type == "I" || type == "II") {
    auto t = k4_channel_tables(s);
    o.result["table"] = to_json(type == "I" ? t.type1 : t.type2);
  } else if (type == "cone") {
    auto c = factorization_cone(s);
    o.result["basis"] = c.basis_labels;
    o.result["f_vector"] = f_vector(c.cone);
    o.result["cone"] = to_json(c.cone);
  } else if (type == "nset") {
    o.result["nset"] = to_json(n_collection(s));
  } else if (type == "tower") {
    o.result["tower"] = to_json(residue_tower(s));
  } else if (type == "x") {
    o.result["x"] = labels(x_collection(s));
  } else if (type == "xhat") {
    o.result["xhat"] = labels(hatx_collection(s));
  } else if (type == "dictionary") {
    Json a = Json::array();
    for (const auto& [key, d] : k4_dictionary(s)) a.push_back({{"eta", key}, {"dosp", d.canonical().to_string()}});
    o.result["dictionary"] = a;
  } else {
    throw Usage("unknown --type " + type);
  }
  return o;
}

// ---------------------------------------------------------------- amplitudes

Outcome amp_fan(const RunConfig& cfg, const std::string& kn) {
  auto [k, n] = parse_kn(kn);
  auto fan = build_fan(k, n, cfg.max_dim, cfg.seed);
  Outcome o;
  o.result = {{"k", k},
              {"n", n},
              {"dimension", fan.dim},
              {"rays", fan.rays.size()},
              {"cones", fan.cones.size()},
              {"simplices", fan.simplex_count()},
              {"integral_forms", fan.integral_forms}};
  o.code = fan.integral_forms ? 0 : 1;
  return o;
}

Outcome amp_compute(const RunConfig& cfg, const std::string& kn, const std::string& kin) {
  auto [k, n] = parse_kn(kn);
  QVector s;
  if (!kin.empty()) {
    s = kinematics_from_json(read_json_file(kin), k, n);
    if (!is_conserving(k, n, s)) throw Usage("kinematic point violates momentum conservation");
  } else {
    std::mt19937_64 rng(cfg.seed);
    s = random_conserving_point(k, n, rng);
  }
  auto fan = build_fan(k, n, cfg.max_dim, cfg.seed);
  auto value = evaluate_amplitude(fan, s);
  Outcome o;
  o.result = {{"k", k}, {"n", n}, {"value", tropfact::to_string(value)}, {"simplices", fan.simplex_count()}};
  if (kin.empty()) o.result["kinematics"] = kinematics_to_json(k, n, s);
  if (k == 2) {
    auto tree = m2_tree_oracle(n, s);
    o.result["tree_oracle"] = tropfact::to_string(tree);
    o.result["agree"] = tree == value;
    if (tree != value) o.code = 1;
  }
  return o;
}

Outcome amp_residue(const RunConfig& cfg, const std::string& channel, int n, const std::string& order) {
  auto s = channel_arg(channel, n);
  auto tower = residue_tower(s);
  std::vector<std::size_t> idx;
  if (order.empty()) {
    for (std::size_t i = 0; i < tower.items.size(); ++i) idx.push_back(i);
  } else {
    for (int i : parse_ints(order)) {
      if (i < 0 || static_cast<std::size_t>(i) >= tower.items.size()) throw Usage("--order index out of range");
      idx.push_back(static_cast<std::size_t>(i));
    }
  }
  std::vector<KinematicForm> forms;
  std::vector<std::string> names;
  for (auto i : idx) {
    forms.push_back(tower.items[i].form);
    names.push_back(tower.items[i].label);
  }
  auto r = iterated_residue(s.k(), s.n(), forms, cfg.seed, names);
  Json labels = Json::array();
  for (const auto& p : tower.items) labels.push_back(p.label);
  Outcome o;
  o.result = {{"channel", s.to_string()},
              {"tower", labels},
              {"order", idx},
              {"star_cones", r.star_cones},
              {"star_simplices", r.star_simplices},
              {"seed", r.seed},
              {"nonzero", !vanishes(r.value, r.slice.variables(), cfg.seed)},
              {"result", r.value.to_string(r.slice.names())}};
  return o;
}

// ---------------------------------------------------------------- conjectures

std::vector<ChannelSpec> three_block_channels(int n) {
  std::vector<ChannelSpec> out;
  std::set<std::string> seen;
  for (int start = 1; start <= n; ++start)
    for (int a = 1; a <= n - 2; ++a)
      for (int b = 1; a + b <= n - 1; ++b) {
        std::vector<std::vector<int>> blocks(3);
        int sizes[3] = {a, b, n - a - b};
        int next = start;
        for (int t = 0; t < 3; ++t)
          for (int u = 0; u < sizes[t]; ++u) {
            blocks[t].push_back(next);
            next = cyc(next + 1, n);
          }
        ChannelSpec s(n, blocks);
        if (seen.insert(s.to_string()).second) out.push_back(s);
      }
  return out;
}

Outcome conjecture_2_6(int max_n) {
  if (max_n < 3 || max_n > 20) throw Usage("--n must lie in 3..20");
  std::size_t checked = 0;
  Json failures = Json::array();
  for (int n = 4; n <= max_n; ++n)
    for (const auto& s : three_block_channels(n)) {
      ++checked;
      if (!five_blade_relation(s)) failures.push_back(s.to_string());
    }
  Outcome o;
  o.result = {{"max_n", max_n}, {"channels", checked}, {"failures", failures}};
  o.code = failures.empty() ? 0 : 1;
  return o;
}

Outcome conjecture_2_7(const std::string& triple, int n) {
  auto t = parse_ints(triple);
  if (t.size() != 3) throw Usage("--triple expects a,b,c");
  auto rows = eight_gamma_rows(t[0], t[1], t[2], n);
  KSubset j(n, t);
  bool minimizable = true;
  for (const auto& row : rows) {
    std::vector<GridVector> fs;
    for (const auto& x : row) fs.push_back(positive_root_vector(x).vector);
    minimizable = minimizable && simultaneously_minimizable(fs);
  }
  auto face = newton_face(positive_root_vector(j).vector);
  auto poly = face_polytope(face);
  auto lattice = face_lattice(poly.cone);
  std::vector<std::vector<std::size_t>> factors;
  for (int m : factor_sizes(channel_from_subset(j))) factors.push_back(newton_f_vector(3, m));
  auto expect = product_f_vector(factors);
  std::size_t matches = 0, total = 0;
  if (face.dimension >= 3) {
    auto faces = faces_of_dimension(lattice, face.dimension - 3);
    total = faces.size();
    for (const auto& f : faces)
      if (face_f_vector(lattice, f) == expect) ++matches;
  }
  Outcome o;
  o.result = {{"triple", t},         {"n", n},
              {"rows_minimizable", minimizable}, {"face_dimension", face.dimension},
              {"face_f_vector", poly.f_vector()}, {"codim3_faces", total},
              {"product_f_vector", expect},       {"product_faces", matches}};
  o.code = minimizable && matches == 8 ? 0 : 1;
  return o;
}

Outcome conjecture_2_11(const RunConfig& cfg, const std::string& channel, int n) {
  auto s = channel_arg(channel, n);
  auto rep = verify_factorization(s, cfg.seed, cfg.max_orders);
  Outcome o;
  o.result = {{"factorization", to_json(rep)}};
  bool ok = rep.nonvanishing && rep.separability.separable && rep.separability.groups == rep.expected_groups &&
            (!rep.wrong_order_checked || rep.wrong_order_vanishes);
  bool open = false;
  for (const auto& id : rep.identifications) open = open || !id.found;
  if (s.k() == 3) {
    auto pre = prefactor_check(s, cfg.seed);
    o.result["prefactor"] = to_json(pre);
    ok = ok && pre.first_nonzero && pre.second_nonzero && pre.equal;
  }
  o.result["identification_open"] = open;
  o.result["confirmed"] = ok;
  o.code = ok ? 0 : 1;
  return o;
}

Outcome conjecture_2_12(const RunConfig& cfg, const std::string& channel, int n) {
  auto s = channel_arg(channel, n);
  const int k = s.k(), d = s.d();
  std::vector<Propagator> basis;
  for (const auto& x : hatx_collection(s)) basis.push_back({x.to_string(), height_of_dosp(x), eta_of_dosp(x)});
  auto fs = fan_section(basis, cfg.bound);
  const std::size_t want = static_cast<std::size_t>((d - 1) * (k - 1));
  bool item1 = !fs.maximal_cones.empty();
  for (const auto& c : fs.maximal_cones) item1 = item1 && c.dimension() == want;

  // item 3 on a relative-interior point of each maximal cone
  auto sizes = factor_sizes(s);
  std::size_t product_dim = 0;
  for (int m : sizes) product_dim += static_cast<std::size_t>((k - 1) * (m - k - 1));
  bool item3 = true;
  Json faces = Json::array();
  for (const auto& c : fs.maximal_cones) {
    HeightVector pi(k, s.n());
    for (const auto& r : c.rays)
      for (std::size_t i = 0; i < r.size(); ++i) pi += Rational(r[i]) * basis[i].height;
    auto face = newton_face(proj_rt(pi));
    Json f = {{"dimension", face.dimension}};
    bool match = face.dimension == product_dim;
    if (match && product_dim <= 4) {
      std::vector<std::vector<std::size_t>> factors;
      for (int m : sizes) factors.push_back(newton_f_vector(k, m));
      auto got = face_polytope(face).f_vector();
      f["f_vector"] = got;
      match = got == product_f_vector(factors);
    }
    f["matches_product"] = match;
    item3 = item3 && match;
    faces.push_back(f);
  }

  auto rep = verify_factorization(s, cfg.seed, cfg.max_orders);
  int poles = 0;
  for (int m : sizes) poles += m;
  bool item4 = rep.nonvanishing && rep.separability.separable && rep.separability.groups == rep.expected_groups;
  Outcome o;
  o.result = {{"channel", s.to_string()},
              {"bound", cfg.bound},
              {"item1", {{"expected_dimension", want}, {"maximal_cones", fs.maximal_cones.size()}, {"holds", item1}}},
              {"item2", "not checked"},
              {"item3", {{"product_dimension", product_dim}, {"faces", faces}, {"holds", item3}}},
              {"item4",
               {{"factor_sizes", sizes}, {"size_total", poles}, {"factorization", to_json(rep)}, {"holds", item4}}}};
  o.code = item1 && item3 && item4 ? 0 : 1;
  return o;
}

Outcome conjecture_3_1(const std::string& collection, const std::string& kn) {
  auto [k, n] = parse_kn(kn);
  auto members = parse_collection(collection, n);
  for (const auto& j : members)
    if (j.k() != k) throw Usage("collection member has the wrong size");
  auto r = ray_from_noncrossing(members);
  Outcome o;
  o.result = ray_json(r, k, n);
  bool ok = r.is_ray && o.result["positroidal"].get<bool>() && o.result["coarsest"].get<bool>();
  o.result["confirmed"] = ok;
  o.code = ok ? 0 : 1;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tropfact: blades, positive tropical Grassmannians and generalized biadjoint amplitudes"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "seed for random points and slices");
  app.add_option("--max-dim", cfg.max_dim, "fan dimension guard (k-1)(n-k-1)");
  app.add_option("--bound", cfg.bound, "coefficient bound for fan sections");
  app.add_option("--max-orders", cfg.max_orders, "residue orders to try");
  app.add_flag("--long", cfg.long_run, "allow gated long runs");
  app.add_flag("--json", cfg.json, "print the JSON result instead of text");
  app.add_option("--report", cfg.report, "append a JSON-lines report to this file");
  app.add_option("--dot", cfg.dot, "write a DOT graph to this file");

  std::function<Outcome()> run;
  std::string dosp, subset, heights, ypath, kn, collection, channel, kin, order, type, triple, id;
  int n = 0;
  bool k3 = false, balancing = false, oracle = false, inequalities = false;

  auto* blades = app.add_subcommand("blades", "kinematic blades")->require_subcommand(1);
  auto* eta = blades->add_subcommand("eta", "expansion of a blade");
  eta->add_option("--dosp", dosp);
  eta->add_option("--subset", subset);
  eta->add_option("--n", n)->required();
  eta->callback([&] { run = [&] { return blades_eta(dosp, subset, n); }; });
  auto* expand = blades->add_subcommand("expand", "planar-basis expansion of a height vector");
  expand->add_option("--heights", heights)->required();
  expand->callback([&] { run = [&] { return blades_expand(heights); }; });

  auto* trop = app.add_subcommand("trop", "tropical Pluecker vectors")->require_subcommand(1);
  auto* pl = trop->add_subcommand("pluecker", "tropical Pluecker vector of a grid point");
  pl->add_option("--kn", kn)->required();
  pl->add_option("--y", ypath)->required();
  pl->callback([&] { run = [&] { return trop_pluecker(kn, ypath); }; });
  auto* check = trop->add_subcommand("check", "three-term positivity test");
  check->add_option("--heights", heights)->required();
  check->callback([&] { run = [&] { return trop_check(heights); }; });
  auto* root = trop->add_subcommand("root", "generalized positive root of a subset");
  root->add_option("--subset", subset)->required();
  root->add_option("--n", n)->required();
  root->callback([&] { run = [&] { return trop_root(subset, n); }; });
  auto* proj = trop->add_subcommand("proj", "grid projection of a height vector");
  proj->add_option("--heights", heights)->required();
  proj->callback([&] { run = [&] { return trop_proj(heights); }; });

  auto* sub = app.add_subcommand("subdiv", "regular subdivision of the hypersimplex");
  sub->add_option("--heights", heights);
  sub->add_option("--dosp", dosp);
  sub->add_option("--n", n);
  sub->add_option("--collection", collection);
  sub->add_option("--kn", kn);
  sub->add_flag("--oracle", oracle, "use the lower-hull construction");
  sub->callback([&] { run = [&] { return subdiv(cfg, heights, dosp, n, collection, kn, oracle); }; });

  auto* cone = app.add_subcommand("cone", "factorization cones")->require_subcommand(1);
  auto* fv = cone->add_subcommand("fvector", "f-vector of a channel cone");
  fv->add_flag("--channel-k3", k3);
  fv->add_flag("--balancing", balancing);
  fv->add_flag("--inequalities", inequalities, "use the three-term fan route");
  fv->add_option("--channel", channel);
  fv->add_option("--n", n);
  fv->callback([&] { run = [&] { return cone_fvector(k3, balancing, channel, n, inequalities); }; });
  auto* rays = cone->add_subcommand("rays", "rays of a channel cone");
  rays->add_option("--channel", channel)->required();
  rays->add_option("--n", n);
  rays->callback([&] { run = [&] { return cone_rays(channel, n); }; });
  auto* section = cone->add_subcommand("section", "fan section over the lumping span");
  section->add_option("--channel", channel)->required();
  section->add_option("--n", n);
  section->callback([&] { run = [&] { return cone_section(cfg, channel, n); }; });

  auto* ch = app.add_subcommand("channel", "propagator sets of a channel");
  ch->add_option("--partition", channel)->required();
  ch->add_option("--n", n);
  ch->add_option("--type", type)->required()->check(
      CLI::IsMember({"I", "II", "cone", "nset", "tower", "x", "xhat", "dictionary"}));
  ch->callback([&] { run = [&] { return channel_cmd(channel, n, type); }; });

  auto* amp = app.add_subcommand("amp", "amplitudes")->require_subcommand(1);
  auto* fan = amp->add_subcommand("fan", "linearity fan summary");
  fan->add_option("--kn", kn)->required();
  fan->callback([&] { run = [&] { return amp_fan(cfg, kn); }; });
  auto* compute = amp->add_subcommand("compute", "exact amplitude at a kinematic point");
  compute->add_option("--kn", kn)->required();
  compute->add_option("--kin", kin);
  compute->callback([&] { run = [&] { return amp_compute(cfg, kn, kin); }; });
  auto* residue = amp->add_subcommand("residue", "iterated residue along a channel tower");
  residue->add_option("--channel", channel)->required();
  residue->add_option("--n", n);
  residue->add_option("--order", order, "tower indices, e.g. 0,2,1,3");
  residue->callback([&] { run = [&] { return amp_residue(cfg, channel, n, order); }; });

  auto* conj = app.add_subcommand("conjecture", "conjecture checks")->require_subcommand(1);
  auto* cc = conj->add_subcommand("check", "check one conjecture instance");
  cc->add_option("id", id)->required()->check(CLI::IsMember({"2.6", "2.7", "2.11", "2.12", "3.1"}));
  cc->add_option("--n", n);
  cc->add_option("--channel", channel);
  cc->add_option("--collection", collection);
  cc->add_option("--kn", kn);
  cc->add_option("--triple", triple);
  cc->callback([&] {
    run = [&]() -> Outcome {
      if (id == "2.6") return conjecture_2_6(n > 0 ? n : 9);
      if (id == "2.7") {
        if (triple.empty() || n == 0) throw Usage("2.7 needs --triple and --n");
        return conjecture_2_7(triple, n);
      }
      if (id == "3.1") {
        if (collection.empty() || kn.empty()) throw Usage("3.1 needs --collection and --kn");
        return conjecture_3_1(collection, kn);
      }
      if (channel.empty()) throw Usage(id + " needs --channel");
      return id == "2.11" ? conjecture_2_11(cfg, channel, n) : conjecture_2_12(cfg, channel, n);
    };
  });

  auto* rcmd = app.add_subcommand("ray", "ray of a noncrossing collection");
  rcmd->add_option("--collection", collection)->required();
  rcmd->add_option("--kn", kn)->required();
  rcmd->callback([&] { run = [&] { return ray(cfg, collection, kn); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto start = std::chrono::steady_clock::now();
  Outcome out;
  std::string error;
  try {
    out = run();
  } catch (const std::invalid_argument& e) {  // malformed input, guards, bad channels
    error = e.what();
    out.code = 2;
  } catch (const SizeGuardExceeded& e) {
    error = e.what();
    out.code = 2;
  } catch (const std::exception& e) {
    error = e.what();
    out.code = 1;
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!error.empty()) {
    std::cerr << "error: " << error << "\n";
    out.result = {{"error", error}};
  } else if (cfg.json || out.text.empty()) {
    std::cout << out.result.dump() << "\n";
  } else {
    std::cout << out.text;
  }

  if (!cfg.report.empty()) {
    Json cmd = Json::array();
    for (int i = 1; i < argc; ++i) cmd.push_back(argv[i]);
    Json line = {{"timestamp", iso_now()},
                 {"command", cmd},
                 {"config",
                  {{"seed", cfg.seed},
                   {"max_dim", cfg.max_dim},
                   {"bound", cfg.bound},
                   {"max_orders", cfg.max_orders},
                   {"long", cfg.long_run},
                   {"threads", worker_count()},
                   {"dot", cfg.dot}}},
                 {"exit", out.code},
                 {"seconds", seconds},
                 {"result", out.result}};
    std::ofstream rep(cfg.report, std::ios::app);
    if (!rep) {
      std::cerr << "error: cannot write " << cfg.report << "\n";
      return 2;
    }
    rep << line.dump() << "\n";
  }
  return out.code;
}
