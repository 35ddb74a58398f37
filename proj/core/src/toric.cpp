#include "tfib/toric.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tfib {

std::size_t DualGraph::internal_edge_count() const {
  return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [](const DualEdge& e) { return e.to != kLeg; }));
}

std::size_t DualGraph::leg_count() const { return edges.size() - internal_edge_count(); }

namespace {

using P2 = std::array<Integer, 2>;

Integer orient(const P2& a, const P2& b, const P2& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

int sgn(const Integer& x) { return x > 0 ? 1 : x < 0 ? -1 : 0; }

using EdgeKey = std::pair<std::size_t, std::size_t>;

EdgeKey key(std::size_t a, std::size_t b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

std::map<EdgeKey, std::vector<std::size_t>> edge_map(const Triangulation& t) {
  std::map<EdgeKey, std::vector<std::size_t>> m;
  for (std::size_t i = 0; i < t.triangles.size(); ++i) {
    const auto& tr = t.triangles[i];
    for (int k = 0; k < 3; ++k) m[key(tr[k], tr[(k + 1) % 3])].push_back(i);
  }
  return m;
}

std::size_t opposite(const Triangle& tr, const EdgeKey& e) {
  for (std::size_t v : tr)
    if (v != e.first && v != e.second) return v;
  return tr[0];
}

// Strict hull vertices in counter-clockwise order.
std::vector<std::size_t> hull(const std::vector<P2>& pts) {
  std::vector<std::size_t> idx(pts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
  if (idx.size() < 3) return idx;
  std::vector<std::size_t> h(2 * idx.size());
  std::size_t k = 0;
  for (std::size_t i : idx) {
    while (k >= 2 && orient(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  for (std::size_t j = idx.size() - 1, lo = k + 1; j-- > 0;) {
    const std::size_t i = idx[j];
    while (k >= lo && orient(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  return h;
}

bool on_hull_boundary(const std::vector<P2>& pts, const std::vector<std::size_t>& h, const P2& p) {
  for (std::size_t i = 0; i < h.size(); ++i)
    if (orient(pts[h[i]], pts[h[(i + 1) % h.size()]], p) == 0) return true;
  return false;
}

struct Checked {
  PolygonChart chart;
  std::vector<std::size_t> hull;
  std::map<EdgeKey, std::vector<std::size_t>> edges;
  bool unimodular = true;
};

Checked check_tiling(const Triangulation& t) {
  Checked c{polygon_chart(t.model), {}, edge_map(t), true};
  const auto& pts = c.chart.coords;
  if (std::set<P2>(pts.begin(), pts.end()).size() != pts.size())
    throw Error(ErrorCode::InvalidArgument, "repeated polygon point");
  c.hull = hull(pts);
  if (c.hull.size() < 3) throw Error(ErrorCode::NotTiling, "polygon is degenerate");
  Integer hull_area = 0;
  for (std::size_t i = 0; i < c.hull.size(); ++i) {
    const P2& a = pts[c.hull[i]];
    const P2& b = pts[c.hull[(i + 1) % c.hull.size()]];
    hull_area += a[0] * b[1] - a[1] * b[0];
  }
  Integer area = 0;
  for (const auto& tr : t.triangles) {
    for (std::size_t v : tr)
      if (v >= pts.size()) throw Error(ErrorCode::NotTiling, "triangle references a missing point");
    const Integer a = abs(orient(pts[tr[0]], pts[tr[1]], pts[tr[2]]));
    if (a == 0) throw Error(ErrorCode::NotTiling, "degenerate triangle");
    if (a != 1) c.unimodular = false;
    area += a;
  }
  if (area != hull_area) throw Error(ErrorCode::NotTiling, "triangle areas do not sum to the polygon area");
  for (const auto& [e, tris] : c.edges) {
    if (tris.size() > 2) throw Error(ErrorCode::NotTiling, "edge shared by more than two triangles");
    if (tris.size() == 2) {
      const int s1 = sgn(orient(pts[e.first], pts[e.second], pts[opposite(t.triangles[tris[0]], e)]));
      const int s2 = sgn(orient(pts[e.first], pts[e.second], pts[opposite(t.triangles[tris[1]], e)]));
      if (s1 * s2 != -1) throw Error(ErrorCode::NotTiling, "overlapping triangles");
    } else {
      bool on = false;
      for (std::size_t i = 0; i < c.hull.size() && !on; ++i) {
        const P2& a = pts[c.hull[i]];
        const P2& b = pts[c.hull[(i + 1) % c.hull.size()]];
        on = orient(a, b, pts[e.first]) == 0 && orient(a, b, pts[e.second]) == 0;
      }
      if (!on) throw Error(ErrorCode::NotTiling, "unpaired edge inside the polygon");
    }
  }
  return c;
}

Checked check_unimodular(const Triangulation& t) {
  Checked c = check_tiling(t);
  if (!c.unimodular) throw Error(ErrorCode::NotUnimodularTriangulation, "triangulation has a triangle of area > 1");
  return c;
}

bool strictly_convex(const std::vector<P2>& pts, const EdgeKey& e, std::size_t r, std::size_t s) {
  const int a = sgn(orient(pts[e.first], pts[e.second], pts[r]));
  const int b = sgn(orient(pts[e.first], pts[e.second], pts[s]));
  const int c = sgn(orient(pts[r], pts[s], pts[e.first]));
  const int d = sgn(orient(pts[r], pts[s], pts[e.second]));
  return a * b == -1 && c * d == -1;
}

}  // namespace

PolygonChart polygon_chart(const GorensteinModel& m, int orientation) {
  if (m.m0.size() != 3) throw Error(ErrorCode::InvalidArgument, "m0 must have rank 3");
  if (m.points.empty()) throw Error(ErrorCode::InvalidArgument, "empty polygon");
  for (const auto& p : m.points) {
    if (p.size() != 3) throw Error(ErrorCode::InvalidArgument, "points must have rank 3");
    Integer h = 0;
    for (int i = 0; i < 3; ++i) h += m.m0[i] * p[i];
    if (h != 1) throw Error(ErrorCode::InvalidArgument, "point " + to_string(p) + " is not at height 1");
  }
  const auto K = kernel_saturated(IntMatrix::from_rows({m.m0}));
  PolygonChart c;
  c.basis = {K[0], K[1]};
  c.origin = m.points.front();
  if (sgn(determinant(IntMatrix::from_columns({c.basis[0], c.basis[1], c.origin}))) != (orientation >= 0 ? 1 : -1))
    std::swap(c.basis[0], c.basis[1]);
  const IntMatrix B = IntMatrix::from_columns({c.basis[0], c.basis[1]});
  for (const auto& p : m.points) {
    LatticeVector d(3);
    for (int i = 0; i < 3; ++i) d[i] = p[i] - c.origin[i];
    auto x = solve_integer(B, d);
    if (!x) throw Error(ErrorCode::Internal, "point outside the chart lattice");
    c.coords.push_back({(*x)[0], (*x)[1]});
  }
  return c;
}

bool is_unimodular(const Triangulation& t) { return check_tiling(t).unimodular; }

DualGraph dual_graph(const Triangulation& t) {
  const Checked c = check_unimodular(t);
  DualGraph g;
  g.vertex_count = t.triangles.size();
  g.order.resize(g.vertex_count);
  long id = 0;
  for (const auto& [e, tris] : c.edges) {
    DualEdge d;
    d.id = id++;
    d.p = e.first;
    d.q = e.second;
    d.from = static_cast<long>(tris[0]);
    d.to = tris.size() == 2 ? static_cast<long>(tris[1]) : kLeg;
    for (std::size_t tri : tris) g.order[tri].push_back(d.id);
    g.edges.push_back(d);
  }
  return g;
}

ChernChain chern_chain_from_triangulation(const Triangulation& t, int orientation) {
  const Checked c = check_unimodular(t);
  const DualGraph g = dual_graph(t);
  const auto& pts = c.chart.coords;
  ChernChain chain;
  chain.lattice_basis = {c.chart.basis[0], c.chart.basis[1]};
  for (std::size_t i = 0; i < g.vertex_count; ++i) chain.vertices.push_back({static_cast<long>(i), g.order[i]});
  auto sum = [&](const Triangle& tr) {
    return P2{pts[tr[0]][0] + pts[tr[1]][0] + pts[tr[2]][0], pts[tr[0]][1] + pts[tr[1]][1] + pts[tr[2]][1]};
  };
  for (const auto& d : g.edges) {
    P2 dir;
    const Triangle& from = t.triangles[static_cast<std::size_t>(d.from)];
    if (d.to != kLeg) {
      const P2 a = sum(from), b = sum(t.triangles[static_cast<std::size_t>(d.to)]);
      dir = {b[0] - a[0], b[1] - a[1]};
    } else {
      const P2& r = pts[opposite(from, {d.p, d.q})];
      dir = {pts[d.p][0] + pts[d.q][0] - 2 * r[0], pts[d.p][1] + pts[d.q][1] - 2 * r[1]};
    }
    // <tau_i, tau_j> followed by the dual edge is a positive frame.
    P2 step{pts[d.q][0] - pts[d.p][0], pts[d.q][1] - pts[d.p][1]};
    const Integer det = dir[0] * step[1] - dir[1] * step[0];
    if (sgn(det) * (orientation >= 0 ? 1 : -1) > 0) step = {-step[0], -step[1]};
    chain.edges.push_back({d.id, {d.from, d.to}, {step[0], step[1]}});
  }
  return chain;
}

std::vector<std::size_t> interior_points(const Triangulation& t) {
  const Checked c = check_tiling(t);
  std::set<std::size_t> used;
  for (const auto& tr : t.triangles) used.insert(tr.begin(), tr.end());
  std::vector<std::size_t> out;
  for (std::size_t v : used)
    if (!on_hull_boundary(c.chart.coords, c.hull, c.chart.coords[v])) out.push_back(v);
  return out;
}

MirrorCurve mirror_curve_stats(const Triangulation& t) {
  const Checked c = check_unimodular(t);
  MirrorCurve m;
  m.genus = static_cast<long>(interior_points(t).size());
  for (const auto& [e, tris] : c.edges)
    if (tris.size() == 1) ++m.punctures;
  return m;
}

FibrationGraph local_fibration(const Triangulation& t) { return fibration_from_chain(chern_chain_from_triangulation(t)); }

Triangulation canonical(const Triangulation& t) {
  Triangulation c = t;
  for (auto& tr : c.triangles) std::sort(tr.begin(), tr.end());
  std::sort(c.triangles.begin(), c.triangles.end());
  return c;
}

std::vector<std::pair<std::size_t, std::size_t>> flippable_edges(const Triangulation& t) {
  const Checked c = check_tiling(t);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& [e, tris] : c.edges) {
    if (tris.size() != 2) continue;
    if (strictly_convex(c.chart.coords, e, opposite(t.triangles[tris[0]], e), opposite(t.triangles[tris[1]], e)))
      out.push_back(e);
  }
  return out;
}

Triangulation flip_edge(const Triangulation& t, std::size_t p, std::size_t q) {
  const Checked c = check_tiling(t);
  const EdgeKey e = key(p, q);
  const auto it = c.edges.find(e);
  if (it == c.edges.end() || it->second.size() != 2)
    throw Error(ErrorCode::NotFlippable, "edge (" + std::to_string(p) + "," + std::to_string(q) + ") is not interior");
  const std::size_t r = opposite(t.triangles[it->second[0]], e);
  const std::size_t s = opposite(t.triangles[it->second[1]], e);
  if (!strictly_convex(c.chart.coords, e, r, s))
    throw Error(ErrorCode::NotFlippable, "quadrilateral around (" + std::to_string(p) + "," + std::to_string(q) + ") is not strictly convex");
  Triangulation out = t;
  out.triangles.clear();
  for (std::size_t i = 0; i < t.triangles.size(); ++i)
    if (i != it->second[0] && i != it->second[1]) out.triangles.push_back(t.triangles[i]);
  out.triangles.push_back({r, s, e.first});
  out.triangles.push_back({r, s, e.second});
  return canonical(out);
}

Triangulation unit_triangle() {
  Triangulation t;
  t.model.m0 = {1, 1, 1};
  t.model.points = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  t.triangles = {{0, 1, 2}};
  return t;
}

Triangulation c3_z3(bool subdivided) {
  Triangulation t;
  // Basis ((1,1,1)/3, e2, e3) of the refined lattice; e1 = 3w - e2 - e3.
  t.model.m0 = {1, 1, 1};
  t.model.points = {{3, -1, -1}, {0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
  if (subdivided)
    t.triangles = {{0, 1, 3}, {1, 2, 3}, {0, 2, 3}};
  else
    t.triangles = {{0, 1, 2}};
  return canonical(t);
}

Triangulation dilated_triangle(long n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "dilation factor must be positive");
  Triangulation t;
  t.model.m0 = {0, 0, 1};
  std::map<std::pair<long, long>, std::size_t> index;
  for (long x = 0; x <= n; ++x)
    for (long y = 0; x + y <= n; ++y) {
      index[{x, y}] = t.model.points.size();
      t.model.points.push_back({x, y, 1});
    }
  for (long x = 0; x < n; ++x)
    for (long y = 0; x + y < n; ++y) {
      t.triangles.push_back({index[{x, y}], index[{x + 1, y}], index[{x, y + 1}]});
      if (x + y + 2 <= n) t.triangles.push_back({index[{x + 1, y}], index[{x + 1, y + 1}], index[{x, y + 1}]});
    }
  return canonical(t);
}

}  // namespace tfib
