#include "tfib/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace tfib::io {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::MalformedInput, (where.empty() ? "/" : where) + ": " + what);
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedInput, "byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(x.get_str());
}

Integer integer_from(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long>()));
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) fail(where, "not a decimal integer");
    return x;
  }
  fail(where, "expected an integer");
}

long long_from(const json& j, const std::string& where) {
  const Integer x = integer_from(j, where);
  if (!x.fits_slong_p()) fail(where, "integer out of range");
  return x.get_si();
}

json vector_json(const LatticeVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(integer_json(x));
  return a;
}

LatticeVector vector_from(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  LatticeVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer_from(j[i], where + "/" + std::to_string(i)));
  return v;
}

json matrix_json(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(vector_json(m.row(r)));
  return a;
}

IntMatrix matrix_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a nonempty array of rows");
  std::vector<LatticeVector> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    rows.push_back(vector_from(j[r], where + "/" + std::to_string(r)));
    if (rows.back().size() != rows.front().size()) fail(where + "/" + std::to_string(r), "ragged matrix");
  }
  if (rows.front().empty()) fail(where, "empty rows");
  return IntMatrix::from_rows(rows);
}

json end_json(long e) { return e == kLeg ? json("LEG") : json(e); }

long end_from(const json& j, const std::string& where) {
  if (j.is_string() && j.get<std::string>() == "LEG") return kLeg;
  return long_from(j, where);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

bool is_matrix_json(const json& j) { return j.is_array() && !j.empty() && j[0].is_array() && (j[0].empty() || !j[0][0].is_array()); }

}  // namespace

std::string to_json(const IntMatrix& m) { return dump(matrix_json(m)); }

IntMatrix parse_matrix(const std::string& text) {
  const json j = parse_text(text);
  if (j.is_object()) return matrix_from(field(j, "matrix", ""), "/matrix");
  return matrix_from(j, "");
}

std::string to_json(const MonodromyRep& rep) {
  json j;
  j["dimension"] = rep.dimension;
  j["basis_label"] = rep.basis_label;
  j["generators"] = json::array();
  for (const auto& g : rep.generators) j["generators"].push_back(matrix_json(g));
  return dump(j);
}

MonodromyRep parse_rep(const std::string& text) {
  const json j = parse_text(text);
  MonodromyRep rep;
  json gens;
  if (is_matrix_json(j)) {
    gens = json::array({j});
  } else if (j.is_array()) {
    gens = j;
  } else if (j.is_object() && j.contains("matrix")) {
    gens = json::array({j["matrix"]});
  } else {
    gens = field(j, "generators", "");
    if (j.contains("basis_label")) {
      if (!j["basis_label"].is_string()) fail("/basis_label", "expected a string");
      rep.basis_label = j["basis_label"].get<std::string>();
    }
  }
  if (!gens.is_array() || gens.empty()) fail("/generators", "expected a nonempty list of matrices");
  for (std::size_t i = 0; i < gens.size(); ++i) rep.generators.push_back(matrix_from(gens[i], "/generators/" + std::to_string(i)));
  rep.dimension = static_cast<int>(rep.generators.front().rows());
  if (j.is_object() && j.contains("dimension") && long_from(j["dimension"], "/dimension") != rep.dimension)
    fail("/dimension", "does not match the generator size");
  for (std::size_t i = 0; i < rep.generators.size(); ++i) {
    const auto& g = rep.generators[i];
    if (!g.is_square() || static_cast<int>(g.rows()) != rep.dimension)
      fail("/generators/" + std::to_string(i), "generators must be square of a common size");
  }
  return rep;
}

std::string to_json(const FibrationGraph& g) {
  json j;
  j["base"] = std::string(to_string(g.base));
  j["vertices"] = json::array();
  for (const auto& v : g.vertices) {
    json loops = json::array();
    for (const auto& l : v.loops) loops.push_back(json::array({l.edge, l.exponent}));
    j["vertices"].push_back({{"id", v.id}, {"loops", loops}});
  }
  j["edges"] = json::array();
  for (const auto& e : g.edges) {
    json je = {{"id", e.id}, {"ends", json::array({end_json(e.ends[0]), end_json(e.ends[1])})}, {"monodromy", matrix_json(e.monodromy)}};
    if (!e.transport.is_identity()) je["transport"] = matrix_json(e.transport);
    j["edges"].push_back(je);
  }
  return dump(j);
}

FibrationGraph parse_fibration(const std::string& text) {
  const json j = parse_text(text);
  FibrationGraph g;
  const json& base = field(j, "base", "");
  if (base == "sphere3") {
    g.base = Base::Sphere3;
  } else if (base == "ball3") {
    g.base = Base::Ball3;
  } else {
    fail("/base", "expected \"sphere3\" or \"ball3\"");
  }
  const json& vs = field(j, "vertices", "");
  if (!vs.is_array()) fail("/vertices", "expected an array");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string w = "/vertices/" + std::to_string(i);
    GraphVertex v;
    v.id = long_from(field(vs[i], "id", w), w + "/id");
    const json& loops = field(vs[i], "loops", w);
    if (!loops.is_array()) fail(w + "/loops", "expected an array");
    for (std::size_t k = 0; k < loops.size(); ++k) {
      const std::string wl = w + "/loops/" + std::to_string(k);
      if (!loops[k].is_array() || loops[k].size() != 2) fail(wl, "expected [edge, exponent]");
      v.loops.push_back({long_from(loops[k][0], wl + "/0"), static_cast<int>(long_from(loops[k][1], wl + "/1"))});
    }
    g.vertices.push_back(std::move(v));
  }
  const json& es = field(j, "edges", "");
  if (!es.is_array()) fail("/edges", "expected an array");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string w = "/edges/" + std::to_string(i);
    GraphEdge e;
    e.id = long_from(field(es[i], "id", w), w + "/id");
    const json& ends = field(es[i], "ends", w);
    if (!ends.is_array() || ends.size() != 2) fail(w + "/ends", "expected two endpoints");
    e.ends = {end_from(ends[0], w + "/ends/0"), end_from(ends[1], w + "/ends/1")};
    e.monodromy = matrix_from(field(es[i], "monodromy", w), w + "/monodromy");
    if (es[i].contains("transport")) e.transport = matrix_from(es[i]["transport"], w + "/transport");
    g.edges.push_back(std::move(e));
  }
  return g;
}

std::string to_json(const ChernChain& c) {
  json j;
  j["lattice_basis"] = json::array();
  for (const auto& b : c.lattice_basis) j["lattice_basis"].push_back(vector_json(b));
  j["edges"] = json::array();
  for (const auto& e : c.edges)
    j["edges"].push_back(
        {{"id", e.id}, {"orient", json::array({end_json(e.ends[0]), end_json(e.ends[1])})}, {"coeff", vector_json(e.coeff)}});
  j["vertices"] = json::array();
  for (const auto& v : c.vertices) j["vertices"].push_back({{"id", v.id}, {"order", v.order}});
  return dump(j);
}

ChernChain parse_chain(const std::string& text) {
  const json j = parse_text(text);
  ChernChain c;
  if (j.contains("lattice_basis")) {
    const json& lb = j["lattice_basis"];
    if (!lb.is_array()) fail("/lattice_basis", "expected an array");
    for (std::size_t i = 0; i < lb.size(); ++i) c.lattice_basis.push_back(vector_from(lb[i], "/lattice_basis/" + std::to_string(i)));
  }
  const json& es = field(j, "edges", "");
  if (!es.is_array()) fail("/edges", "expected an array");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string w = "/edges/" + std::to_string(i);
    ChainEdge e;
    e.id = long_from(field(es[i], "id", w), w + "/id");
    const json& o = field(es[i], "orient", w);
    if (!o.is_array() || o.size() != 2) fail(w + "/orient", "expected [from, to]");
    e.ends = {end_from(o[0], w + "/orient/0"), end_from(o[1], w + "/orient/1")};
    e.coeff = vector_from(field(es[i], "coeff", w), w + "/coeff");
    c.edges.push_back(std::move(e));
  }
  const json& vs = field(j, "vertices", "");
  if (!vs.is_array()) fail("/vertices", "expected an array");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string w = "/vertices/" + std::to_string(i);
    ChainVertex v;
    v.id = long_from(field(vs[i], "id", w), w + "/id");
    const json& order = field(vs[i], "order", w);
    if (!order.is_array()) fail(w + "/order", "expected an array");
    for (std::size_t k = 0; k < order.size(); ++k) v.order.push_back(long_from(order[k], w + "/order/" + std::to_string(k)));
    c.vertices.push_back(std::move(v));
  }
  return c;
}

std::string to_json(const Triangulation& t) {
  json j;
  j["m0"] = vector_json(t.model.m0);
  j["points"] = json::array();
  for (const auto& p : t.model.points) j["points"].push_back(vector_json(p));
  j["triangles"] = json::array();
  for (const auto& tr : t.triangles) j["triangles"].push_back(json::array({tr[0], tr[1], tr[2]}));
  return dump(j);
}

Triangulation parse_triangulation(const std::string& text) {
  const json j = parse_text(text);
  Triangulation t;
  t.model.m0 = vector_from(field(j, "m0", ""), "/m0");
  if (t.model.m0.size() != 3) fail("/m0", "expected three entries");
  const json& ps = field(j, "points", "");
  if (!ps.is_array()) fail("/points", "expected an array");
  for (std::size_t i = 0; i < ps.size(); ++i) {
    t.model.points.push_back(vector_from(ps[i], "/points/" + std::to_string(i)));
    if (t.model.points.back().size() != 3) fail("/points/" + std::to_string(i), "expected three coordinates");
  }
  const json& ts = field(j, "triangles", "");
  if (!ts.is_array()) fail("/triangles", "expected an array");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string w = "/triangles/" + std::to_string(i);
    if (!ts[i].is_array() || ts[i].size() != 3) fail(w, "expected three point indices");
    Triangle tr{};
    for (std::size_t k = 0; k < 3; ++k) {
      const long x = long_from(ts[i][k], w + "/" + std::to_string(k));
      if (x < 0 || static_cast<std::size_t>(x) >= t.model.points.size()) fail(w + "/" + std::to_string(k), "point index out of range");
      tr[k] = static_cast<std::size_t>(x);
    }
    t.triangles.push_back(tr);
  }
  return t;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorCode::InvalidArgument, "write to '" + path + "' failed");
}

}  // namespace tfib::io
