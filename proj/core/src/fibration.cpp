#include "tfib/fibration.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace tfib {

std::string_view to_string(Base base) { return base == Base::Sphere3 ? "sphere3" : "ball3"; }

std::size_t FiberCensus::count(FiberKind kind) const {
  auto it = counts.find(kind);
  return it == counts.end() ? 0 : it->second;
}

namespace {

struct Index {
  std::unordered_map<long, std::size_t> vertex;
  std::unordered_map<long, std::size_t> edge;
};

Index make_index(const FibrationGraph& g) {
  Index ix;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) ix.vertex.emplace(g.vertices[i].id, i);
  for (std::size_t i = 0; i < g.edges.size(); ++i) ix.edge.emplace(g.edges[i].id, i);
  return ix;
}

// Monodromy of edge e read at vertex v; occurrence disambiguates self-loops.
IntMatrix read_at(const GraphEdge& e, long v, int occurrence) {
  const bool first = e.ends[0] == v && (e.ends[1] != v || occurrence == 0);
  if (first) return e.monodromy;
  return e.transport * e.monodromy * inverse_unimodular(e.transport);
}

void require_valid(const FibrationGraph& g, const char* what) {
  auto rep = validate(g);
  if (!rep.ok()) {
    const auto& v = rep.violations.front();
    throw Error(ErrorCode::InvalidGraph, std::string(what) + ": " + v.subject + " " + std::to_string(v.id) + " " +
                                             v.code + " (" + v.message + ")");
  }
}

}  // namespace

std::vector<IntMatrix> vertex_loop_matrices(const FibrationGraph& g, long vertex_id) {
  const Index ix = make_index(g);
  const auto vit = ix.vertex.find(vertex_id);
  if (vit == ix.vertex.end()) throw Error(ErrorCode::InvalidGraph, "unknown vertex " + std::to_string(vertex_id));
  std::map<long, int> seen;
  std::vector<IntMatrix> out;
  for (const auto& letter : g.vertices[vit->second].loops) {
    const auto eit = ix.edge.find(letter.edge);
    if (eit == ix.edge.end()) throw Error(ErrorCode::InvalidGraph, "unknown edge " + std::to_string(letter.edge));
    out.push_back(matrix_power(read_at(g.edges[eit->second], vertex_id, seen[letter.edge]++), letter.exponent));
  }
  return out;
}

ValidationReport validate(const FibrationGraph& g) {
  ValidationReport rep;
  auto add = [&](std::string code, const char* subject, long id, std::string msg) {
    rep.violations.push_back({std::move(code), subject, id, std::move(msg)});
  };
  const Index ix = make_index(g);
  if (ix.vertex.size() != g.vertices.size()) add("DUPLICATE_ID", "vertex", -1, "vertex ids are not unique");
  if (ix.edge.size() != g.edges.size()) add("DUPLICATE_ID", "edge", -1, "edge ids are not unique");

  std::vector<const GraphEdge*> edges;
  for (const auto& e : g.edges) edges.push_back(&e);
  std::sort(edges.begin(), edges.end(), [](auto* a, auto* b) { return a->id < b->id; });
  std::set<long> bad_edges, shape_edges;
  for (const GraphEdge* e : edges) {
    bool ok = true;
    for (long end : e->ends)
      if (end != kLeg && !ix.vertex.count(end)) {
        add("UNKNOWN_VERTEX", "edge", e->id, "endpoint " + std::to_string(end) + " does not exist");
        ok = false;
      }
    if (e->ends[0] == kLeg && e->ends[1] == kLeg) {
      add("DETACHED_EDGE", "edge", e->id, "both endpoints are legs");
      ok = false;
    }
    if (e->monodromy.rows() != 3 || e->monodromy.cols() != 3 || e->transport.rows() != 3 ||
        e->transport.cols() != 3) {
      add("SHAPE", "edge", e->id, "monodromy and transport must be 3x3");
      bad_edges.insert(e->id);
      shape_edges.insert(e->id);
      continue;
    }
    if (!is_unimodular(e->transport)) {
      add("NOT_UNIMODULAR", "edge", e->id, "transport " + e->transport.to_string());
      ok = false;
    }
    try {
      const FiberType ft = classify_edge_3d(e->monodromy);
      if (ft.kind != FiberKind::T22) {
        add("EDGE_NOT_T22", "edge", e->id, e->monodromy.to_string() + " classifies as " + std::string(to_string(ft.kind)));
        ok = false;
      }
    } catch (const Error& err) {
      add(std::string(to_string(err.code())), "edge", e->id, err.what());
      ok = false;
    }
    if (!ok) bad_edges.insert(e->id);
  }

  std::vector<const GraphVertex*> vertices;
  for (const auto& v : g.vertices) vertices.push_back(&v);
  std::sort(vertices.begin(), vertices.end(), [](auto* a, auto* b) { return a->id < b->id; });
  for (const GraphVertex* v : vertices) {
    std::map<long, int> incidence, letters;
    for (const auto& e : g.edges)
      for (long end : e.ends)
        if (end == v->id) ++incidence[e.id];
    bool ok = true, relation_only = false;
    for (const auto& l : v->loops) {
      ++letters[l.edge];
      if (l.exponent != 1 && l.exponent != -1) {
        add("BAD_EXPONENT", "vertex", v->id, "exponent " + std::to_string(l.exponent) + " on edge " + std::to_string(l.edge));
        ok = false;
      }
      if (!ix.edge.count(l.edge)) {
        add("UNKNOWN_EDGE", "vertex", v->id, "loop word names edge " + std::to_string(l.edge));
        ok = false;
      } else if (shape_edges.count(l.edge)) {
        ok = false;
      } else if (bad_edges.count(l.edge)) {
        relation_only = true;
      }
    }
    if (letters != incidence) {
      add("LOOP_WORD_MISMATCH", "vertex", v->id, "loop word does not list each incident half-edge exactly once");
      ok = false;
    }
    if (v->loops.size() != 3 && v->loops.size() != 4) {
      add("VALENCY_MISMATCH", "vertex", v->id, "valency " + std::to_string(v->loops.size()) + " is not 3 or 4");
      ok = false;
    }
    if (!ok) continue;
    if (relation_only) {
      // Classification is moot with a malformed edge; the relation itself is still checked.
      IntMatrix p = IntMatrix::identity(3);
      for (const auto& T : vertex_loop_matrices(g, v->id)) p = p * T;
      if (!p.is_identity()) add("RELATION_VIOLATED", "vertex", v->id, "ordered product is " + p.to_string());
      continue;
    }
    try {
      rep.profiles.emplace(v->id, vertex_profile(vertex_loop_matrices(g, v->id)));
    } catch (const Error& err) {
      add(std::string(to_string(err.code())), "vertex", v->id, err.what());
    }
  }
  return rep;
}

FibrationGraph dualize(const FibrationGraph& g) {
  require_valid(g, "dualize");
  FibrationGraph d = g;
  for (auto& e : d.edges) {
    e.monodromy = transpose_inverse(e.monodromy);
    e.transport = transpose_inverse(e.transport);
  }
  return d;
}

FiberCensus census(const FibrationGraph& g) {
  ValidationReport rep = validate(g);
  if (!rep.ok()) require_valid(g, "census");
  FiberCensus c;
  for (FiberKind k : {FiberKind::T22, FiberKind::T21, FiberKind::T12, FiberKind::T11}) c.counts[k] = 0;
  for (const auto& [id, p] : rep.profiles) ++c.counts[p.type.kind];
  c.profiles = std::move(rep.profiles);
  return c;
}

long euler_characteristic(const FibrationGraph& g) {
  const FiberCensus c = census(g);
  return static_cast<long>(c.count(FiberKind::T12)) - static_cast<long>(c.count(FiberKind::T21));
}

std::vector<IntMatrix> global_monodromy_generators(const FibrationGraph& g) {
  std::unordered_map<long, std::vector<std::size_t>> adjacent;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (e.ends[0] == kLeg || e.ends[1] == kLeg) continue;
    adjacent[e.ends[0]].push_back(i);
    if (e.ends[1] != e.ends[0]) adjacent[e.ends[1]].push_back(i);
  }
  // frame[v] maps coordinates in v's frame to the component root frame.
  std::unordered_map<long, IntMatrix> frame;
  std::vector<bool> tree(g.edges.size(), false);
  std::vector<long> order;
  for (const auto& v : g.vertices) order.push_back(v.id);
  std::sort(order.begin(), order.end());
  for (long root : order) {
    if (frame.count(root)) continue;
    frame.emplace(root, IntMatrix::identity(3));
    std::deque<long> queue{root};
    while (!queue.empty()) {
      const long u = queue.front();
      queue.pop_front();
      for (std::size_t i : adjacent[u]) {
        const auto& e = g.edges[i];
        const long w = e.ends[0] == u ? e.ends[1] : e.ends[0];
        if (frame.count(w)) continue;
        frame.emplace(w, e.ends[0] == u ? frame.at(u) * inverse_unimodular(e.transport) : frame.at(u) * e.transport);
        tree[i] = true;
        queue.push_back(w);
      }
    }
  }
  std::vector<IntMatrix> out;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (e.ends[0] != kLeg) {
      const IntMatrix& F = frame.at(e.ends[0]);
      out.push_back(F * e.monodromy * inverse_unimodular(F));
    } else if (e.ends[1] != kLeg) {
      const IntMatrix& F = frame.at(e.ends[1]);
      const IntMatrix M = e.transport * e.monodromy * inverse_unimodular(e.transport);
      out.push_back(F * M * inverse_unimodular(F));
    }
    if (!tree[i] && e.ends[0] != kLeg && e.ends[1] != kLeg) {
      const IntMatrix K = frame.at(e.ends[1]) * e.transport * inverse_unimodular(frame.at(e.ends[0]));
      if (!K.is_identity()) out.push_back(K);
    }
  }
  return out;
}

bool is_simply_connected(const FibrationGraph& g) {
  if (g.base != Base::Sphere3) throw Error(ErrorCode::InvalidArgument, "simple connectivity needs base sphere3");
  const auto gens = global_monodromy_generators(g);
  if (gens.empty()) return false;
  return trivial_invariants_all_n(gens);
}

std::vector<CriticalSurface> critical_surface_stats(const FibrationGraph& g) {
  const FiberCensus c = census(g);
  std::unordered_map<long, FiberKind> kind;
  for (const auto& [id, p] : c.profiles)
    if (p.type.kind == FiberKind::T12 || p.type.kind == FiberKind::T21) kind.emplace(id, p.type.kind);

  std::unordered_map<long, long> parent;
  for (const auto& [id, k] : kind) parent.emplace(id, id);
  auto find = [&](long x) {
    while (parent.at(x) != x) x = parent[x] = parent.at(parent.at(x));
    return x;
  };
  auto internal = [&](const GraphEdge& e) {
    return e.ends[0] != kLeg && e.ends[1] != kLeg && kind.count(e.ends[0]) && kind.count(e.ends[1]) &&
           kind.at(e.ends[0]) == kind.at(e.ends[1]);
  };
  for (const auto& e : g.edges)
    if (internal(e)) {
      const long a = find(e.ends[0]), b = find(e.ends[1]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

  std::map<long, CriticalSurface> comps;
  for (const auto& [id, k] : kind) {
    auto& s = comps[find(id)];
    s.kind = k;
    s.vertices.push_back(id);
  }
  for (const auto& e : g.edges) {
    if (internal(e)) {
      ++comps[find(e.ends[0])].internal_edges;
      continue;
    }
    for (long end : e.ends)
      if (end != kLeg && kind.count(end)) ++comps[find(end)].punctures;
  }
  std::vector<CriticalSurface> out;
  for (auto& [root, s] : comps) {
    std::sort(s.vertices.begin(), s.vertices.end());
    s.genus = s.internal_edges - static_cast<long>(s.vertices.size()) + 1;
    out.push_back(std::move(s));
  }
  return out;
}

std::string to_dot(const FibrationGraph& g) {
  std::map<long, std::string> label;
  const ValidationReport rep = validate(g);
  for (const auto& v : g.vertices) label[v.id] = "?";
  for (const auto& [id, p] : rep.profiles) label[id] = std::string(to_string(p.type.kind));
  std::ostringstream os;
  os << "graph fibration {\n";
  os << "  node [shape=circle];\n";
  for (const auto& [id, l] : label) os << "  v" << id << " [label=\"" << id << ":" << l << "\"];\n";
  for (const auto& e : g.edges) {
    std::string a = e.ends[0] == kLeg ? "leg" + std::to_string(e.id) + "a" : "v" + std::to_string(e.ends[0]);
    std::string b = e.ends[1] == kLeg ? "leg" + std::to_string(e.id) + "b" : "v" + std::to_string(e.ends[1]);
    if (e.ends[0] == kLeg) os << "  " << a << " [shape=point];\n";
    if (e.ends[1] == kLeg) os << "  " << b << " [shape=point];\n";
    os << "  " << a << " -- " << b << " [label=\"e" << e.id << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace tfib
