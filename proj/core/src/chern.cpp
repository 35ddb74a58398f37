#include "tfib/chern.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace tfib {

ChainReport validate_chain(const ChernChain& c) {
  ChainReport rep;
  auto add = [&](const char* code, const char* subject, long id, std::string msg) {
    rep.violations.push_back({code, subject, id, std::move(msg)});
  };
  if (!c.lattice_basis.empty()) {
    bool ok = c.lattice_basis.size() == 2 && c.lattice_basis[0].size() == c.lattice_basis[1].size();
    if (ok) {
      const auto ed = elementary_divisors(IntMatrix::from_rows(c.lattice_basis));
      ok = ed.size() == 2 && ed[0] == 1 && ed[1] == 1;
    }
    if (!ok) add("BASIS", "chain", -1, "lattice basis must be two vectors spanning a saturated rank-2 lattice");
  }

  std::unordered_map<long, const ChainEdge*> edges;
  std::unordered_map<long, const ChainVertex*> vertices;
  for (const auto& v : c.vertices)
    if (!vertices.emplace(v.id, &v).second) add("DUPLICATE_ID", "vertex", v.id, "vertex id repeated");
  for (const auto& e : c.edges)
    if (!edges.emplace(e.id, &e).second) add("DUPLICATE_ID", "edge", e.id, "edge id repeated");

  std::vector<const ChainEdge*> sorted_edges;
  for (const auto& e : c.edges) sorted_edges.push_back(&e);
  std::sort(sorted_edges.begin(), sorted_edges.end(), [](auto* a, auto* b) { return a->id < b->id; });
  for (const ChainEdge* e : sorted_edges) {
    for (long end : e->ends)
      if (end != kLeg && !vertices.count(end))
        add("UNKNOWN_VERTEX", "edge", e->id, "endpoint " + std::to_string(end) + " does not exist");
    if (e->coeff.size() != 2) {
      add("SHAPE", "edge", e->id, "coefficient must have rank 2");
      continue;
    }
    if (content(e->coeff) != 1)
      add("PRIMITIVITY", "edge", e->id, "coefficient " + to_string(e->coeff) + " is not primitive");
  }

  std::vector<const ChainVertex*> sorted_vertices;
  for (const auto& v : c.vertices) sorted_vertices.push_back(&v);
  std::sort(sorted_vertices.begin(), sorted_vertices.end(), [](auto* a, auto* b) { return a->id < b->id; });
  for (const ChainVertex* v : sorted_vertices) {
    std::map<long, int> incidence, listed;
    std::vector<LatticeVector> outward;
    LatticeVector total{Integer(0), Integer(0)};
    bool shapes_ok = true;
    for (const auto& e : c.edges)
      for (int s = 0; s < 2; ++s)
        if (e.ends[s] == v->id) {
          ++incidence[e.id];
          if (e.coeff.size() != 2) {
            shapes_ok = false;
            continue;
          }
          LatticeVector o = e.coeff;
          if (s == 1)
            for (auto& x : o) x = -x;
          total[0] += o[0];
          total[1] += o[1];
          outward.push_back(o);
        }
    for (long id : v->order) ++listed[id];
    std::size_t degree = 0;
    for (const auto& [id, n] : incidence) degree += n;
    if (degree != 3) add("NOT_TRIVALENT", "vertex", v->id, "degree " + std::to_string(degree));
    if (listed != incidence) add("ORDER_MISMATCH", "vertex", v->id, "cyclic order does not list the incident edges");
    if (!shapes_ok) continue;
    if (total[0] != 0 || total[1] != 0)
      add("BOUNDARY", "vertex", v->id, "signed coefficient sum is " + to_string(total));
    const auto ed = outward.empty() ? std::vector<Integer>{} : elementary_divisors(IntMatrix::from_rows(outward));
    if (!(ed.size() == 2 && ed[0] == 1 && ed[1] == 1))
      add("SPAN", "vertex", v->id, "incident coefficients do not span the lattice");
  }
  return rep;
}

IntMatrix monodromy_for_coefficient(const LatticeVector& coeff) {
  if (coeff.size() != 2) throw Error(ErrorCode::InvalidArgument, "chain coefficient must have rank 2");
  IntMatrix M = IntMatrix::identity(3);
  M(0, 2) = coeff[0];
  M(1, 2) = coeff[1];
  return M;
}

namespace {

void require_valid(const ChernChain& c) {
  const auto rep = validate_chain(c);
  if (!rep.ok()) {
    const auto& v = rep.violations.front();
    throw Error(ErrorCode::InvalidChain, v.subject + " " + std::to_string(v.id) + " " + v.code + " (" + v.message + ")");
  }
}

}  // namespace

IntMatrix monodromy_from_chain(const ChernChain& c, long edge_id, bool forward) {
  require_valid(c);
  for (const auto& e : c.edges)
    if (e.id == edge_id) {
      LatticeVector v = e.coeff;
      if (!forward)
        for (auto& x : v) x = -x;
      return monodromy_for_coefficient(v);
    }
  throw Error(ErrorCode::InvalidArgument, "unknown chain edge " + std::to_string(edge_id));
}

FibrationGraph fibration_from_chain(const ChernChain& c) {
  require_valid(c);
  FibrationGraph g;
  g.base = Base::Ball3;
  std::unordered_map<long, const ChainEdge*> edges;
  for (const auto& e : c.edges) {
    edges.emplace(e.id, &e);
    GraphEdge ge;
    ge.id = e.id;
    ge.ends = e.ends;
    ge.monodromy = monodromy_for_coefficient(e.coeff);
    g.edges.push_back(std::move(ge));
  }
  for (const auto& v : c.vertices) {
    GraphVertex gv;
    gv.id = v.id;
    std::map<long, int> seen;
    for (long id : v.order) {
      const ChainEdge* e = edges.at(id);
      const bool outgoing = e->ends[0] == v.id && (e->ends[1] != v.id || seen[id]++ == 0);
      gv.loops.push_back({id, outgoing ? 1 : -1});
    }
    g.vertices.push_back(std::move(gv));
  }
  return g;
}

ChernChain negate(const ChernChain& c) {
  ChernChain n = c;
  for (auto& e : n.edges)
    for (auto& x : e.coeff) x = -x;
  return n;
}

}  // namespace tfib
