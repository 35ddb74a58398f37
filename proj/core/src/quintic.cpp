#include "tfib/quintic.hpp"

#include <algorithm>
#include <map>

#include "tfib/chern.hpp"

namespace tfib::quintic {

namespace {

std::vector<int> others(int i) {
  std::vector<int> o;
  for (int k = 0; k < 5; ++k)
    if (k != i) o.push_back(k);
  return o;
}

// N_i has canonical basis the three smallest e_k (k != i); the largest is minus their sum.
int dropped(int i) { return others(i).back(); }

IntMatrix section(int i) {
  IntMatrix S(5, 3);
  const auto o = others(i);
  for (int c = 0; c < 3; ++c) S(static_cast<std::size_t>(o[c]), static_cast<std::size_t>(c)) = 1;
  return S;
}

// dual(N_j) has basis e_k* - e_r* (k not in {j, r}); coordinates are the k-components.
IntMatrix dual_coordinates(int j) {
  IntMatrix C(3, 5);
  std::size_t r = 0;
  for (int k = 0; k < 5; ++k)
    if (k != j && k != dropped(j)) C(r++, static_cast<std::size_t>(k)) = 1;
  return C;
}

// Z^5-level lift of T_ij: e_k -> e_k* - e_i*, e_j -> minus the sum of the others, e_i -> 0.
IntMatrix lift(int i, int j) {
  IntMatrix M(5, 5);
  for (int k = 0; k < 5; ++k) {
    if (k == i || k == j) continue;
    M(static_cast<std::size_t>(k), static_cast<std::size_t>(k)) += 1;
    M(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) -= 1;
  }
  for (int k = 0; k < 5; ++k) {
    if (k == i || k == j) continue;
    for (std::size_t r = 0; r < 5; ++r) M(r, static_cast<std::size_t>(j)) -= M(r, static_cast<std::size_t>(k));
  }
  return M;
}

void require_index(int i) {
  if (i < 0 || i > 4) throw Error(ErrorCode::IndexClash, "simplex index " + std::to_string(i) + " outside 0..4");
}

std::array<int, 2> complement_pair(int i, int j, int k) {
  std::array<int, 2> c{};
  std::size_t n = 0;
  for (int x = 0; x < 5; ++x)
    if (x != i && x != j && x != k) c[n++] = x;
  return c;
}

std::size_t simplex_edge_index(int a, int b) {
  const auto& es = simplex_edges();
  for (std::size_t e = 0; e < es.size(); ++e)
    if (es[e][0] == std::min(a, b) && es[e][1] == std::max(a, b)) return e;
  throw Error(ErrorCode::IndexClash, "no simplex edge {" + std::to_string(a) + "," + std::to_string(b) + "}");
}

// Frame change N_l -> N_L through dual(N_a).
IntMatrix frame_change(int l, int L, int a) {
  if (l == L) return IntMatrix::identity(3);
  return inverse_unimodular(chart_map(L, a)) * chart_map(l, a);
}

struct LegInfo {
  std::array<int, 2> side;  // global simplex indices, sorted
  std::size_t slot = 0;
};

// Side and slot of a boundary edge of the dilated triangle with corners (P_i, P_j, P_k).
LegInfo leg_info(const Triangulation& tri, std::size_t p, std::size_t q, const std::array<int, 3>& f) {
  auto weights = [&](std::size_t v) {
    const auto& pt = tri.model.points[v];
    const long x = pt[0].get_si(), y = pt[1].get_si();
    return std::array<long, 3>{5 - x - y, x, y};
  };
  const auto wp = weights(p), wq = weights(q);
  for (int zero = 0; zero < 3; ++zero)
    if (wp[zero] == 0 && wq[zero] == 0) {
      const int s0 = zero == 0 ? 1 : 0;
      const int s1 = zero == 2 ? 1 : 2;
      LegInfo info;
      info.side = {f[s0], f[s1]};
      info.slot = static_cast<std::size_t>(std::min(wp[s1], wq[s1]));
      return info;
    }
  throw Error(ErrorCode::Internal, "leg is not on the boundary of the face");
}

}  // namespace

IntMatrix projection(int l) {
  require_index(l);
  IntMatrix P(3, 5);
  const auto o = others(l);
  for (std::size_t c = 0; c < 3; ++c) P(c, static_cast<std::size_t>(o[c])) = 1;
  for (std::size_t c = 0; c < 3; ++c) P(c, static_cast<std::size_t>(dropped(l))) = -1;
  return P;
}

IntMatrix chart_map(int i, int j) {
  require_index(i);
  require_index(j);
  if (i == j) throw Error(ErrorCode::IndexClash, "chart map needs i != j");
  return dual_coordinates(j) * lift(i, j) * section(i);
}

IntMatrix face_basis(int j, int k, int l, int m) {
  const IntMatrix P = projection(l);
  return IntMatrix::from_columns({P.column(static_cast<std::size_t>(j)), P.column(static_cast<std::size_t>(k)),
                                  P.column(static_cast<std::size_t>(m))});
}

IntMatrix closed_form() { return IntMatrix{{1, 0, 0}, {0, 1, 0}, {5, 0, 1}}; }

EdgeMonodromy edge_monodromy(int i, int j, int k, int base_l) {
  for (int x : {i, j, k}) require_index(x);
  if (i == j || j == k || i == k) throw Error(ErrorCode::IndexClash, "edge monodromy needs distinct indices");
  const auto rest = complement_pair(i, j, k);
  EdgeMonodromy em;
  if (base_l == -1 || base_l == rest[0]) {
    em.l = rest[0];
    em.m = rest[1];
  } else if (base_l == rest[1]) {
    em.l = rest[1];
    em.m = rest[0];
  } else {
    throw Error(ErrorCode::IndexClash, "base index must be complementary to {i,j,k}");
  }
  em.composite = inverse_unimodular(chart_map(em.l, j)) * chart_map(em.m, j) * inverse_unimodular(chart_map(em.m, i)) *
                 chart_map(em.l, i);
  const IntMatrix Q = face_basis(j, k, em.l, em.m);
  em.in_face_basis = inverse_unimodular(Q) * em.composite * Q;
  em.matches_closed_form = em.in_face_basis == closed_form();
  return em;
}

const std::vector<std::array<int, 3>>& faces() {
  static const std::vector<std::array<int, 3>> f = [] {
    std::vector<std::array<int, 3>> out;
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j)
        for (int k = j + 1; k < 5; ++k) out.push_back({i, j, k});
    return out;
  }();
  return f;
}

const std::vector<std::array<int, 2>>& simplex_edges() {
  static const std::vector<std::array<int, 2>> e = [] {
    std::vector<std::array<int, 2>> out;
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) out.push_back({i, j});
    return out;
  }();
  return e;
}

std::size_t face_index(int i, int j, int k) {
  std::array<int, 3> f{i, j, k};
  std::sort(f.begin(), f.end());
  const auto& fs = faces();
  const auto it = std::find(fs.begin(), fs.end(), f);
  if (it == fs.end()) throw Error(ErrorCode::IndexClash, "not a face of the 4-simplex");
  return static_cast<std::size_t>(it - fs.begin());
}

SimplexComplex simplex_complex() {
  SimplexComplex sc;
  sc.edge_barycenters = simplex_edges();
  sc.face_barycenters = faces();
  for (std::size_t e = 0; e < sc.edge_barycenters.size(); ++e)
    for (std::size_t f = 0; f < sc.face_barycenters.size(); ++f) {
      const auto& fa = sc.face_barycenters[f];
      const auto& ed = sc.edge_barycenters[e];
      if (std::count(fa.begin(), fa.end(), ed[0]) && std::count(fa.begin(), fa.end(), ed[1]))
        sc.gamma_edges.push_back({e, f});
    }
  return sc;
}

long face_vertex_id(std::size_t face, std::size_t triangle) {
  return static_cast<long>(face) * kFaceVerticesPerFace + static_cast<long>(triangle);
}

long edge_vertex_id(std::size_t simplex_edge, std::size_t slot) {
  return static_cast<long>(faces().size()) * kFaceVerticesPerFace +
         static_cast<long>(simplex_edge) * kEdgeVerticesPerEdge + static_cast<long>(slot);
}

FibrationGraph build_quintic_fibration() {
  const Triangulation tri = dilated_triangle(5);
  // Faces are glued with the reversed orientation of the standard chart.
  const ChernChain chain = chern_chain_from_triangulation(tri, -1);
  const DualGraph dual = dual_graph(tri);

  FibrationGraph g;
  g.base = Base::Sphere3;
  // legs[(simplex edge, slot, third index)] = global edge id
  std::map<std::array<std::size_t, 3>, long> legs;

  for (std::size_t fi = 0; fi < faces().size(); ++fi) {
    const auto& f = faces()[fi];
    const auto [l, m] = complement_pair(f[0], f[1], f[2]);
    const IntMatrix Q = face_basis(f[1], f[2], l, m);
    const IntMatrix Qinv = inverse_unimodular(Q);
    const long base = static_cast<long>(fi) * kFaceEdgesPerFace;
    for (const auto& ce : chain.edges) {
      GraphEdge ge;
      ge.id = base + ce.id;
      // The face side carries the transposed (2,1) shape of the synthesized monodromy.
      ge.monodromy = Q * monodromy_for_coefficient(ce.coeff).transpose() * Qinv;
      ge.ends[0] = face_vertex_id(fi, static_cast<std::size_t>(ce.ends[0]));
      if (ce.ends[1] != kLeg) {
        ge.ends[1] = face_vertex_id(fi, static_cast<std::size_t>(ce.ends[1]));
      } else {
        const auto& d = dual.edges[static_cast<std::size_t>(ce.id)];
        const LegInfo info = leg_info(tri, d.p, d.q, f);
        const std::size_t se = simplex_edge_index(info.side[0], info.side[1]);
        std::array<int, 3> comp{};
        std::size_t n = 0;
        for (int x = 0; x < 5; ++x)
          if (x != info.side[0] && x != info.side[1]) comp[n++] = x;
        ge.ends[1] = edge_vertex_id(se, info.slot);
        ge.transport = frame_change(l, comp[0], info.side[0]);
        const int third = f[0] + f[1] + f[2] - info.side[0] - info.side[1];
        legs[{se, info.slot, static_cast<std::size_t>(third)}] = ge.id;
      }
      g.edges.push_back(std::move(ge));
    }
    for (std::size_t t = 0; t < chain.vertices.size(); ++t) {
      GraphVertex v;
      v.id = face_vertex_id(fi, t);
      for (long eid : chain.vertices[t].order) {
        const auto& ce = chain.edges[static_cast<std::size_t>(eid)];
        v.loops.push_back({base + eid, ce.ends[0] == static_cast<long>(t) ? 1 : -1});
      }
      g.vertices.push_back(std::move(v));
    }
  }

  std::map<long, const GraphEdge*> by_id;
  for (const auto& e : g.edges) by_id.emplace(e.id, &e);
  for (std::size_t se = 0; se < simplex_edges().size(); ++se) {
    const auto [a, b] = simplex_edges()[se];
    std::array<int, 3> xs{};
    std::size_t n = 0;
    for (int x = 0; x < 5; ++x)
      if (x != a && x != b) xs[n++] = x;
    for (std::size_t slot = 0; slot < static_cast<std::size_t>(kEdgeVerticesPerEdge); ++slot) {
      std::array<long, 3> ids{};
      std::array<IntMatrix, 3> local;
      for (std::size_t t = 0; t < 3; ++t) {
        ids[t] = legs.at({se, slot, static_cast<std::size_t>(xs[t])});
        const GraphEdge& e = *by_id.at(ids[t]);
        local[t] = e.transport * e.monodromy * inverse_unimodular(e.transport);
      }
      // Exponents are the first sign pattern closing the relation.
      std::array<int, 3> exps{};
      bool found = false;
      for (int mask = 0; mask < 8 && !found; ++mask) {
        for (int t = 0; t < 3; ++t) exps[static_cast<std::size_t>(t)] = (mask >> (2 - t)) & 1 ? 1 : -1;
        IntMatrix P = IntMatrix::identity(3);
        for (std::size_t t = 0; t < 3; ++t) P = P * matrix_power(local[t], exps[t]);
        found = P.is_identity();
      }
      if (!found) throw Error(ErrorCode::Internal, "no exponent pattern closes edge vertex relation");
      GraphVertex v;
      v.id = edge_vertex_id(se, slot);
      for (std::size_t t = 0; t < 3; ++t) v.loops.push_back({ids[t], exps[t]});
      g.vertices.push_back(std::move(v));
    }
  }
  return g;
}

std::vector<LegProductCheck> leg_product_checks(const FibrationGraph& g) {
  std::vector<LegProductCheck> out;
  for (std::size_t se = 0; se < simplex_edges().size(); ++se) {
    const auto [a, b] = simplex_edges()[se];
    for (int x = 0; x < 5; ++x) {
      if (x == a || x == b) continue;
      const std::size_t fi = face_index(a, b, x);
      const auto& f = faces()[fi];
      const long lo = static_cast<long>(fi) * kFaceEdgesPerFace;
      IntMatrix P = IntMatrix::identity(3);
      std::size_t count = 0;
      for (const auto& e : g.edges) {
        if (e.id < lo || e.id >= lo + kFaceEdgesPerFace) continue;
        if (e.ends[1] < edge_vertex_id(se, 0) || e.ends[1] >= edge_vertex_id(se, 0) + kEdgeVerticesPerEdge) continue;
        P = P * e.monodromy;
        ++count;
      }
      // Counter-clockwise order of the face corners is f[0] -> f[1] -> f[2].
      const bool ccw = (a == f[0] && b == f[1]) || (a == f[1] && b == f[2]) || (a == f[2] && b == f[0]);
      const auto em = ccw ? edge_monodromy(a, b, x) : edge_monodromy(b, a, x);
      LegProductCheck c;
      c.side = {ccw ? a : b, ccw ? b : a};
      c.third = x;
      c.equals_chart_composite = count == static_cast<std::size_t>(kEdgeVerticesPerEdge) && P == em.composite;
      c.factor_five = content(P - IntMatrix::identity(3)) == 5;
      out.push_back(c);
    }
  }
  return out;
}

QuinticInvariants quintic_invariants(const FibrationGraph& g) {
  QuinticInvariants q;
  const FiberCensus c = census(g);
  q.vertices = g.vertices.size();
  q.edges = g.edges.size();
  q.t12 = c.count(FiberKind::T12);
  q.t21 = c.count(FiberKind::T21);
  q.chi = static_cast<long>(q.t12) - static_cast<long>(q.t21);
  q.simply_connected = is_simply_connected(g);
  // Leray-side constants are imported, not recomputed.
  q.b2 = 1;
  q.b3 = 2 + 2 * q.b2 - q.chi;
  q.h_cubed = 5;
  q.critical_curves = static_cast<long>(simplex_edges().size());
  q.curve_degree = 5;
  q.crit_h = q.critical_curves * q.curve_degree;
  q.p1_h = -2 * q.crit_h;
  q.h_c2 = -q.p1_h / 2;
  q.surfaces = critical_surface_stats(g);
  return q;
}

QuinticInvariants quintic_invariants() { return quintic_invariants(build_quintic_fibration()); }

MirrorFibration build_mirror_fibration(const FibrationGraph& quintic) {
  MirrorFibration mf;
  mf.graph = dualize(quintic);
  const FiberCensus c = census(mf.graph);
  mf.t12 = c.count(FiberKind::T12);
  mf.t21 = c.count(FiberKind::T21);
  mf.chi = static_cast<long>(mf.t12) - static_cast<long>(mf.t21);
  mf.simply_connected = is_simply_connected(mf.graph);
  mf.b2 = 101;
  mf.b3 = 2 + 2 * mf.b2 - mf.chi;
  mf.surfaces = critical_surface_stats(mf.graph);
  return mf;
}

MirrorFibration build_mirror_fibration() { return build_mirror_fibration(build_quintic_fibration()); }

}  // namespace tfib::quintic
