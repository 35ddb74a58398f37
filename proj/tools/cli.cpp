#include "cli.hpp"

#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tfib/chern.hpp"
#include "tfib/fibration.hpp"
#include "tfib/intersection.hpp"
#include "tfib/io.hpp"
#include "tfib/monodromy.hpp"
#include "tfib/quintic.hpp"
#include "tfib/random.hpp"
#include "tfib/toric.hpp"

namespace tfib::cli {

namespace {

using json = nlohmann::ordered_json;
namespace ix = tfib::intersection;

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

Level log_level() {
  const char* env = std::getenv("TFIB_LOG");
  if (env == nullptr) return Level::Warn;
  const std::string s(env);
  if (s == "error" || s == "0") return Level::Error;
  if (s == "info" || s == "2") return Level::Info;
  if (s == "debug" || s == "3") return Level::Debug;
  return Level::Warn;
}

struct RunConfig {
  std::string subcommand;
  std::string in;
  std::string out;
  std::string format;
  std::uint64_t seed = 20240101;
  int trials = 20;
  bool mirror = false;
  bool invariants = false;
  bool saturation = false;
  long face = 0;
  long trapezoid = -1;
};

// Input problems map to the usage exit code.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A failed check carries its report and the first counterexample.
struct Outcome {
  json report;
  std::string text;  // preformatted output for dot/csv/graph dumps
  bool passed = true;
  std::string counterexample;
};

json integer(const Integer& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(x.get_str());
}

json matrix(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(integer(m(r, c)));
    a.push_back(row);
  }
  return a;
}

json embed(const std::string& text) { return json::parse(text); }

json fiber_type_json(const FiberType& t) {
  json j;
  j["kind"] = std::string(to_string(t.kind));
  j["b1"] = t.b1;
  j["b2"] = t.b2;
  return j;
}

json profile_json(const VertexProfile& p) {
  json j;
  j["type"] = fiber_type_json(p.type);
  j["valency"] = p.valency;
  j["rotation"] = p.rotation;
  j["braid_move"] = p.braid_move;
  if (p.parameter_a) j["a"] = integer(*p.parameter_a);
  j["basis_change"] = matrix(p.basis_change);
  return j;
}

json census_json(const FiberCensus& c) {
  json j = json::object();
  for (const auto& [kind, n] : c.counts) j[std::string(to_string(kind))] = n;
  return j;
}

// Aggregates surfaces by (kind, genus, punctures, size).
json surfaces_json(const std::vector<CriticalSurface>& ss) {
  std::map<std::tuple<std::string, long, long, std::size_t>, std::size_t> agg;
  for (const auto& s : ss) ++agg[{std::string(to_string(s.kind)), s.genus, s.punctures, s.vertices.size()}];
  json a = json::array();
  for (const auto& [k, n] : agg) {
    json j;
    j["kind"] = std::get<0>(k);
    j["vertices"] = std::get<3>(k);
    j["genus"] = std::get<1>(k);
    j["punctures"] = std::get<2>(k);
    j["count"] = n;
    a.push_back(j);
  }
  return a;
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// key=value lines; nested objects use dotted keys, arrays of objects use [i].
void flatten(const json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
    return;
  }
  if (j.is_array() && !j.empty() && (j[0].is_object())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
    return;
  }
  os << prefix << "=" << scalar_text(j) << "\n";
}

std::string table(const json& j) {
  std::ostringstream os;
  flatten(j, "", os);
  return os.str();
}

std::string read_input(const RunConfig& cfg) {
  if (cfg.in.empty()) throw InputError("--in is required for '" + cfg.subcommand + "'");
  try {
    return io::read_file(cfg.in);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

FibrationGraph read_graph(const RunConfig& cfg) { return io::parse_fibration(read_input(cfg)); }

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (cfg.format == a) return;
  throw InputError("format '" + cfg.format + "' is not supported by '" + cfg.subcommand + "'");
}

FiberType classify_one(const MonodromyRep& rep) {
  if (rep.generators.size() == 1) {
    return rep.dimension == 2 ? classify_edge_2d(rep.generators[0]) : classify_edge_3d(rep.generators[0]);
  }
  return fiber_type(rep);
}

Outcome cmd_classify(const RunConfig& cfg) {
  require_format(cfg, {"table", "json"});
  const MonodromyRep rep = io::parse_rep(read_input(cfg));
  if (rep.dimension != 2 && rep.dimension != 3) throw InputError("generators must be 2x2 or 3x3");
  Outcome o;
  json& r = o.report;
  r["dimension"] = rep.dimension;
  r["generators"] = rep.generators.size();
  const FiberType t = classify_one(rep);
  r["type"] = fiber_type_json(t);
  IntMatrix prod = IntMatrix::identity(static_cast<std::size_t>(rep.dimension));
  for (const auto& g : rep.generators) prod = prod * g;
  if (rep.dimension == 3 && rep.generators.size() >= 2 && prod.is_identity()) {
    try {
      r["profile"] = profile_json(vertex_profile(rep.generators));
    } catch (const Error& e) {
      r["profile_error"] = e.what();
    }
  }
  std::mt19937_64 rng(cfg.seed);
  bool invariant = true;
  for (int k = 0; k < cfg.trials && invariant; ++k) {
    const IntMatrix P = random_unimodular(static_cast<std::size_t>(rep.dimension), rng);
    const IntMatrix Pinv = inverse_unimodular(P);
    MonodromyRep conj = rep;
    for (auto& g : conj.generators) g = P * g * Pinv;
    const FiberType ct = classify_one(conj);
    if (!(ct == t)) {
      invariant = false;
      o.counterexample = "conjugation by " + P.to_string() + " changes the type to " + std::string(to_string(ct.kind));
    }
  }
  r["conjugation_check"] = {{"seed", cfg.seed}, {"trials", cfg.trials}, {"invariant", invariant}};
  o.passed = invariant;
  return o;
}

json violations_json(const std::vector<Violation>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back({{"code", v.code}, {"subject", v.subject}, {"id", v.id}, {"message", v.message}});
  return a;
}

Outcome cmd_validate(const RunConfig& cfg) {
  require_format(cfg, {"table", "json", "dot"});
  const FibrationGraph g = read_graph(cfg);
  const ValidationReport rep = validate(g);
  Outcome o;
  if (cfg.format == "dot") o.text = to_dot(g);
  json& r = o.report;
  r["ok"] = rep.ok();
  r["vertices"] = g.vertices.size();
  r["edges"] = g.edges.size();
  std::map<std::string, std::size_t> kinds;
  for (const auto& [id, p] : rep.profiles) ++kinds[std::string(to_string(p.type.kind))];
  r["profiles"] = kinds;
  r["violations"] = violations_json(rep.violations);
  o.passed = rep.ok();
  if (!rep.ok()) {
    const auto& v = rep.violations.front();
    o.counterexample = v.subject + " " + std::to_string(v.id) + ": " + v.code + ": " + v.message;
  }
  return o;
}

Outcome cmd_dualize(const RunConfig& cfg) {
  require_format(cfg, {"json", "dot", "table"});
  const FibrationGraph d = dualize(read_graph(cfg));
  Outcome o;
  if (cfg.format == "json") o.text = io::to_json(d);
  if (cfg.format == "dot") o.text = to_dot(d);
  o.report["base"] = std::string(to_string(d.base));
  o.report["vertices"] = d.vertices.size();
  o.report["edges"] = d.edges.size();
  return o;
}

json invariants_json(const FibrationGraph& g) {
  json r;
  const FiberCensus c = census(g);
  r["base"] = std::string(to_string(g.base));
  r["vertices"] = g.vertices.size();
  r["edges"] = g.edges.size();
  r["census"] = census_json(c);
  r["chi"] = euler_characteristic(g);
  if (g.base == Base::Sphere3) {
    r["simply_connected"] = is_simply_connected(g);
  } else {
    r["simply_connected"] = "n/a";
  }
  r["critical_surfaces"] = surfaces_json(critical_surface_stats(g));
  return r;
}

Outcome cmd_invariants(const RunConfig& cfg) {
  require_format(cfg, {"table", "json"});
  const FibrationGraph g = read_graph(cfg);
  const ValidationReport rep = validate(g);
  Outcome o;
  if (!rep.ok()) {
    o.passed = false;
    o.report["ok"] = false;
    o.report["violations"] = violations_json(rep.violations);
    const auto& v = rep.violations.front();
    o.counterexample = v.subject + " " + std::to_string(v.id) + ": " + v.code + ": " + v.message;
    return o;
  }
  o.report = invariants_json(g);
  return o;
}

Outcome cmd_chern(const RunConfig& cfg) {
  require_format(cfg, {"table", "json", "dot"});
  const ChernChain c = io::parse_chain(read_input(cfg));
  const ChainReport rep = validate_chain(c);
  Outcome o;
  json& r = o.report;
  r["ok"] = rep.ok();
  r["violations"] = violations_json(rep.violations);
  if (!rep.ok()) {
    o.passed = false;
    const auto& v = rep.violations.front();
    o.counterexample = v.subject + " " + std::to_string(v.id) + ": " + v.code + ": " + v.message;
    return o;
  }
  const FibrationGraph g = fibration_from_chain(c);
  const ValidationReport gv = validate(g);
  r["fibration_valid"] = gv.ok();
  r["fibration"] = invariants_json(g);
  if (cfg.format == "json") r["graph"] = embed(io::to_json(g));
  if (cfg.format == "dot") o.text = to_dot(g);
  o.passed = gv.ok();
  if (!gv.ok()) o.counterexample = "synthesized fibration: " + gv.violations.front().message;
  return o;
}

Outcome cmd_toric(const RunConfig& cfg) {
  require_format(cfg, {"table", "json", "dot"});
  const Triangulation t = io::parse_triangulation(read_input(cfg));
  Outcome o;
  json& r = o.report;
  r["points"] = t.model.points.size();
  r["triangles"] = t.triangles.size();
  r["unimodular"] = is_unimodular(t);
  if (!is_unimodular(t)) {
    o.passed = false;
    o.counterexample = "triangulation is not a unimodular tiling of its hull";
    return o;
  }
  r["interior_points"] = interior_points(t).size();
  const DualGraph d = dual_graph(t);
  r["dual_graph"] = {{"vertices", d.vertex_count}, {"internal_edges", d.internal_edge_count()}, {"legs", d.leg_count()}};
  const ChernChain chain = chern_chain_from_triangulation(t);
  const ChainReport cr = validate_chain(chain);
  r["chain_valid"] = cr.ok();
  const MirrorCurve mc = mirror_curve_stats(t);
  r["mirror_curve"] = {{"genus", mc.genus}, {"punctures", mc.punctures}};
  const FibrationGraph g = local_fibration(t);
  const auto ss = critical_surface_stats(g);
  r["local_fibration"] = invariants_json(g);
  const bool matches = ss.size() == 1 && ss[0].genus == mc.genus && ss[0].punctures == mc.punctures;
  r["mirror_curve_matches_critical_surface"] = matches;
  if (cfg.format == "json") {
    r["chain"] = embed(io::to_json(chain));
    r["graph"] = embed(io::to_json(g));
  }
  if (cfg.format == "dot") o.text = to_dot(g);
  o.passed = cr.ok() && matches;
  if (!cr.ok()) o.counterexample = "chain: " + cr.violations.front().message;
  else if (!matches) o.counterexample = "mirror curve statistics differ from the critical surface";
  return o;
}

Outcome cmd_quintic(const RunConfig& cfg) {
  require_format(cfg, {"table", "json", "dot"});
  const FibrationGraph g = quintic::build_quintic_fibration();
  Outcome o;
  json& r = o.report;
  if (!cfg.mirror) {
    const ValidationReport rep = validate(g);
    const auto q = quintic::quintic_invariants(g);
    std::size_t closed = 0, total = 0;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        for (int k = 0; k < 5; ++k) {
          if (i == j || j == k || i == k) continue;
          ++total;
          closed += quintic::edge_monodromy(i, j, k).matches_closed_form ? 1 : 0;
        }
    std::size_t legs = 0, fives = 0;
    const auto lc = quintic::leg_product_checks(g);
    for (const auto& c : lc) {
      legs += c.equals_chart_composite ? 1 : 0;
      fives += c.factor_five ? 1 : 0;
    }
    r["valid"] = rep.ok();
    r["vertices"] = q.vertices;
    r["edges"] = q.edges;
    r["census"] = {{"T12", q.t12}, {"T21", q.t21}};
    r["chi"] = q.chi;
    r["b2"] = q.b2;
    r["b3"] = q.b3;
    r["simply_connected"] = q.simply_connected;
    r["h_cubed"] = q.h_cubed;
    r["critical_curves"] = q.critical_curves;
    r["curve_degree"] = q.curve_degree;
    r["crit_h"] = q.crit_h;
    r["p1_h"] = q.p1_h;
    r["h_c2"] = q.h_c2;
    r["edge_monodromy_closed_form"] = std::to_string(closed) + "/" + std::to_string(total);
    r["leg_products"] = std::to_string(legs) + "/" + std::to_string(lc.size());
    r["leg_factor_five"] = std::to_string(fives) + "/" + std::to_string(lc.size());
    r["critical_surfaces"] = surfaces_json(q.surfaces);
    o.passed = rep.ok() && closed == total && legs == lc.size() && fives == lc.size();
    if (!o.passed) o.counterexample = rep.ok() ? "edge monodromy or leg product mismatch" : rep.violations.front().message;
    if (!cfg.invariants && cfg.format == "json") r["graph"] = embed(io::to_json(g));
    if (cfg.format == "dot") o.text = to_dot(g);
    return o;
  }
  const auto m = quintic::build_mirror_fibration(g);
  const ValidationReport rep = validate(m.graph);
  const auto rk = ix::rank_and_radical(ix::cubic_form_table());
  r["valid"] = rep.ok();
  r["vertices"] = m.graph.vertices.size();
  r["edges"] = m.graph.edges.size();
  r["census"] = {{"T12", m.t12}, {"T21", m.t21}};
  r["chi"] = m.chi;
  r["b2"] = m.b2;
  r["b2_intersection_rank"] = rk.rank;
  r["b2_confirmed"] = static_cast<long>(rk.rank) == m.b2;
  r["b3"] = m.b3;
  r["simply_connected"] = m.simply_connected;
  r["critical_surfaces"] = surfaces_json(m.surfaces);
  o.passed = rep.ok() && static_cast<long>(rk.rank) == m.b2;
  if (!o.passed) o.counterexample = rep.ok() ? "intersection rank differs from b2" : rep.violations.front().message;
  if (!cfg.invariants && cfg.format == "json") r["graph"] = embed(io::to_json(m.graph));
  if (cfg.format == "dot") o.text = to_dot(m.graph);
  return o;
}

// Value of a family of products if it is the same everywhere, else "mixed".
json uniform(const std::vector<Integer>& vs) {
  if (vs.empty()) return "none";
  for (const auto& v : vs)
    if (v != vs.front()) return "mixed";
  return integer(vs.front());
}

std::string triple_name(const ix::Triple& t) {
  return ix::divisor_name(t[0]) + "." + ix::divisor_name(t[1]) + "." + ix::divisor_name(t[2]);
}

Outcome cmd_cubic(const RunConfig& cfg) {
  require_format(cfg, {"table", "json", "csv"});
  const ix::CubicForm f = ix::cubic_form_table();
  Outcome o;
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "d1,d2,d3,value\n";
    for (const auto& [t, v] : f.entries())
      os << ix::divisor_name(t[0]) << "," << ix::divisor_name(t[1]) << "," << ix::divisor_name(t[2]) << "," << v.get_str() << "\n";
    o.text = os.str();
    return o;
  }
  json& r = o.report;
  const LatticeVector H = ix::hyperplane_class();
  auto u = [](std::size_t d) { return ix::unit_class(d); };
  std::vector<Integer> hee, he2, h2l, hle, hl2;
  std::map<std::string, std::vector<Integer>> rim;
  const char* rim_names[] = {"L_i.(E^1_ij)^2", "L_i^2.E^1_ij", "E^1_ij.(E^2_ij)^2", "(E^1_ij)^2.E^2_ij",
                             "E^2_ij.(E^3_ij)^2", "(E^2_ij)^2.E^3_ij", "E^3_ij.(E^4_ij)^2", "(E^3_ij)^2.E^4_ij"};
  std::vector<Integer> l3, e3;
  for (int i = 0; i < 5; ++i) {
    const std::size_t L = ix::divisor_L(i);
    h2l.push_back(f.eval(H, H, u(L)));
    hl2.push_back(f.eval(H, u(L), u(L)));
    l3.push_back(f.get(L, L, L));
    for (int j = 0; j < 5; ++j) {
      if (i == j) continue;
      std::size_t E[5];
      for (int l = 1; l <= 4; ++l) E[l] = ix::divisor_E(i, j, l);
      hle.push_back(f.eval(H, u(L), u(E[1])));
      for (int l = 1; l <= 4; ++l) {
        he2.push_back(f.eval(H, u(E[l]), u(E[l])));
        e3.push_back(f.get(E[l], E[l], E[l]));
        if (l < 4) hee.push_back(f.eval(H, u(E[l]), u(E[l + 1])));
      }
      const Integer vals[] = {f.get(L, E[1], E[1]), f.get(L, L, E[1]), f.get(E[1], E[2], E[2]), f.get(E[1], E[1], E[2]),
                              f.get(E[2], E[3], E[3]), f.get(E[2], E[2], E[3]), f.get(E[3], E[4], E[4]), f.get(E[3], E[3], E[4])};
      for (int k = 0; k < 8; ++k) rim[rim_names[k]].push_back(vals[k]);
    }
  }
  r["hyperplane"] = {{"H^3", integer(f.eval(H, H, H))}, {"H.E^l_ij.E^(l+1)_ij", uniform(hee)}, {"H.(E^l_ij)^2", uniform(he2)},
                 {"H^2.L_i", uniform(h2l)}, {"H.L_i.E^1_ij", uniform(hle)}, {"H.L_i^2", uniform(hl2)}};
  json p2;
  for (const char* n : rim_names) p2[n] = uniform(rim[n]);
  p2["L_i^3"] = uniform(l3);
  p2["(E^l_ij)^3"] = uniform(e3);
  r["simplex_edges"] = p2;
  const ix::CubicForm local = ix::assemble_global_form(ix::standard_face_triangulations());
  {
    const Triangulation t = dilated_triangle(5);
    std::map<std::pair<std::size_t, std::size_t>, int> edge_use;
    for (const auto& tr : t.triangles)
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = a + 1; b < 3; ++b) ++edge_use[std::minmax(tr[a], tr[b])];
    std::vector<Integer> tri, edge, cube;
    for (const auto& face : quintic::faces()) {
      auto D = [&](std::size_t p) { return ix::face_triangulation_divisor(face, t.model.points[p]); };
      for (const auto& tr : t.triangles) tri.push_back(f.get(D(tr[0]), D(tr[1]), D(tr[2])));
      for (const auto& [e, n] : edge_use) {
        if (n != 2) continue;
        edge.push_back(f.get(D(e.first), D(e.first), D(e.second)));
        edge.push_back(f.get(D(e.second), D(e.second), D(e.first)));
      }
      for (std::size_t p : interior_points(t)) cube.push_back(f.get(D(p), D(p), D(p)));
    }
    r["faces"] = {{"faces", quintic::faces().size()},
                   {"D_i.D_j.D_k (triangles)", uniform(tri)},
                   {"D_i^2.D_j (interior edges)", uniform(edge)},
                   {"D_i^3 (interior vertices)", uniform(cube)},
                   {"local_toric_agrees", local == f}};
  }
  r["table"] = {{"nonzero_entries", f.entries().size()}};
  r["second_chern"] = {{"H.c2", integer(ix::c2(H))}, {"E^l_ij.c2", integer(ix::c2(ix::divisor_E(0, 1, 1)))},
                 {"E^l_ijk.c2", integer(ix::c2(ix::divisor_F(0, 1, 2, 1)))}, {"L_i.c2", integer(ix::c2(ix::divisor_L(0)))}};
  const auto rk = ix::rank_and_radical(f);
  const std::size_t lrank = ix::l_basis_rank(f);
  r["rank"] = rk.rank;
  r["radical"] = rk.radical_rank;
  r["l_basis_rank"] = lrank;
  const auto cart = ix::cartan_check(f);
  r["cartan_a4"] = cart.all_cartan;
  r["fibre_classes_orthogonal"] = cart.orthogonal_to_rest;
  const auto z = ix::z5_cochain_check();
  r["z5_cochains"] = {{"rank_d0", z.rank_d0}, {"rank_d1", z.rank_d1}, {"ker_d1_dimension", z.ker_d1_dimension},
                      {"ker_d0_constants", z.ker_d0_constants}, {"exact", z.exact}};
  std::size_t index_ok = 0;
  std::string first_bad;
  for (std::size_t d = 0; d < ix::kClassCount; ++d) {
    const auto c = ix::index_consistency(f, d);
    if (c.ok) ++index_ok;
    else if (first_bad.empty()) first_bad = "index consistency fails for " + ix::divisor_name(d);
  }
  r["index_consistency"] = std::to_string(index_ok) + "/" + std::to_string(ix::kClassCount);
  bool sat_ok = true;
  if (cfg.saturation) {
    const auto s = ix::saturation_quotient(f);
    r["saturation"] = s.group() + (s.generated_by_l ? ", generated by L_0..L_4" : ", not generated by L_0..L_4");
    r["saturation_order"] = integer(s.order);
    r["sum_of_l_in_lattice"] = s.sum_of_l_in_lattice;
    sat_ok = s.generated_by_l && s.sum_of_l_in_lattice;
  }
  if (cfg.format == "json") {
    json triples = json::array();
    for (const auto& [t, v] : f.entries()) triples.push_back({{"classes", triple_name(t)}, {"value", integer(v)}});
    r["triples"] = triples;
  }
  o.passed = local == f && cart.all_cartan && cart.orthogonal_to_rest && z.exact && z.ker_d0_constants &&
             index_ok == ix::kClassCount && rk.rank == lrank && sat_ok;
  if (!o.passed) o.counterexample = first_bad.empty() ? "a structural check failed; see report" : first_bad;
  return o;
}

Outcome cmd_flop(const RunConfig& cfg) {
  require_format(cfg, {"table", "json"});
  if (cfg.face < 0 || cfg.face >= static_cast<long>(quintic::faces().size())) throw InputError("--face must be in 0..9");
  const std::size_t trap = cfg.trapezoid < 0 ? ix::interior_trapezoid() : static_cast<std::size_t>(cfg.trapezoid);
  const auto rep = ix::flop(static_cast<std::size_t>(cfg.face), trap);
  const auto& face = quintic::faces()[static_cast<std::size_t>(cfg.face)];
  auto name = [&](std::size_t p) { return ix::divisor_name(ix::face_triangulation_divisor(face, rep.before.model.points[p])); };
  Outcome o;
  json& r = o.report;
  r["face"] = "P_" + std::to_string(face[0]) + "P_" + std::to_string(face[1]) + "P_" + std::to_string(face[2]);
  r["trapezoid"] = trap;
  r["old_diagonal"] = name(rep.old_diagonal.first) + "--" + name(rep.old_diagonal.second);
  r["new_diagonal"] = name(rep.new_diagonal.first) + "--" + name(rep.new_diagonal.second);
  r["after_unimodular"] = rep.after_unimodular;
  json deltas = json::array();
  for (const auto& d : rep.deltas) deltas.push_back({{"classes", triple_name(d.classes)}, {"before", integer(d.before)}, {"after", integer(d.after)}});
  r["changed_triples"] = rep.deltas.size();
  r["deltas"] = deltas;
  r["rank_before"] = rep.rank_before.rank;
  r["radical_before"] = rep.rank_before.radical_rank;
  r["rank_after"] = rep.rank_after.rank;
  r["radical_after"] = rep.rank_after.radical_rank;
  r["double_flip_restores"] = rep.double_flip_restores;
  const bool rank_kept =
      rep.rank_before.rank == rep.rank_after.rank && rep.rank_before.radical_rank == rep.rank_after.radical_rank;
  o.passed = rep.after_unimodular && !rep.deltas.empty() && rank_kept && rep.double_flip_restores;
  if (!o.passed) o.counterexample = "flop changed rank/radical, changed nothing, or did not restore";
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"tfib: torus fibrations, toric models and intersection forms"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--in", cfg.in, "input JSON file");
  app.add_option("--out", cfg.out, "write output here instead of stdout");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "dot", "table", "csv"}));
  app.add_option("--seed", cfg.seed, "seed for randomized checks");

  std::map<std::string, std::function<Outcome(const RunConfig&)>> handlers{
      {"classify", cmd_classify}, {"validate", cmd_validate}, {"dualize", cmd_dualize},
      {"invariants", cmd_invariants}, {"chern", cmd_chern}, {"toric", cmd_toric},
      {"quintic", cmd_quintic}, {"cubic", cmd_cubic}, {"flop", cmd_flop}};
  auto* classify = app.add_subcommand("classify", "classify a monodromy matrix or representation");
  classify->add_option("--trials", cfg.trials, "random conjugates for the invariance check");
  app.add_subcommand("validate", "validate a fibration graph");
  app.add_subcommand("dualize", "SYZ-dualize a fibration graph");
  app.add_subcommand("invariants", "census, Euler characteristic, simple connectivity, critical surfaces");
  app.add_subcommand("chern", "validate a Chern chain and synthesize its fibration");
  app.add_subcommand("toric", "dual graph, Chern chain and mirror curve of a triangulation");
  auto* q = app.add_subcommand("quintic", "build the quintic fibration");
  q->add_flag("--mirror", cfg.mirror, "report the dual fibration");
  q->add_flag("--invariants", cfg.invariants, "omit the graph dump");
  auto* c = app.add_subcommand("cubic", "mirror quintic cubic form and lattice checks");
  c->add_flag("--saturation", cfg.saturation, "compute the saturation quotient");
  auto* f = app.add_subcommand("flop", "flip one trapezoid diagonal in a face");
  f->add_option("--face", cfg.face, "face index 0..9");
  f->add_option("--trapezoid", cfg.trapezoid, "index into the flippable edges; default is the first interior one");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  const bool graph_dump = cfg.subcommand == "dualize" || (cfg.subcommand == "quintic" && !cfg.invariants);
  if (cfg.format.empty()) cfg.format = graph_dump ? "json" : "table";
  const Level level = log_level();
  if (level >= Level::Info) err << "tfib: " << cfg.subcommand << " format=" << cfg.format << " seed=" << cfg.seed << "\n";

  Outcome o;
  try {
    o = handlers.at(cfg.subcommand)(cfg);
  } catch (const InputError& e) {
    err << "tfib: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MalformedInput) {
      err << "tfib: malformed input: " << e.what() << "\n";
      return kExitUsage;
    }
    err << "tfib: " << e.what() << "\n";
    return kExitFailed;
  }

  std::string text = o.text;
  if (text.empty()) text = cfg.format == "json" ? o.report.dump(2) + "\n" : table(o.report);
  if (cfg.out.empty()) {
    out << text;
  } else {
    try {
      io::write_file(cfg.out, text);
    } catch (const Error& e) {
      err << "tfib: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  if (!o.passed) {
    if (level >= Level::Error) err << "tfib: check failed: " << o.counterexample << "\n";
    return kExitFailed;
  }
  if (level >= Level::Debug) err << "tfib: " << cfg.subcommand << " passed\n";
  return kExitOk;
}

}  // namespace tfib::cli
