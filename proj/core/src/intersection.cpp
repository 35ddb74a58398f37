#include "tfib/intersection.hpp"

#include <algorithm>
#include <set>

#include "tfib/quintic.hpp"

namespace tfib::intersection {

namespace {

const std::vector<std::array<int, 2>>& edge_list() { return quintic::simplex_edges(); }
const std::vector<std::array<int, 3>>& face_list() { return quintic::faces(); }

void require_vertex(int i) {
  if (i < 0 || i > 4) throw Error(ErrorCode::IndexClash, "vertex index " + std::to_string(i) + " outside 0..4");
}

Triple sorted(std::size_t a, std::size_t b, std::size_t c) {
  Triple t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

std::size_t edge_position(int i, int j) {
  const auto& es = edge_list();
  for (std::size_t e = 0; e < es.size(); ++e)
    if (es[e][0] == i && es[e][1] == j) return e;
  throw Error(ErrorCode::IndexClash, "no simplex edge");
}

// Neighbours of each point and the triangles on each edge.
struct Incidence {
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> edge_triangles;
  std::vector<std::set<std::size_t>> neighbours;
};

Incidence incidence(const Triangulation& t) {
  Incidence inc;
  inc.neighbours.resize(t.model.points.size());
  for (std::size_t ti = 0; ti < t.triangles.size(); ++ti) {
    const auto& tr = t.triangles[ti];
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = a + 1; b < 3; ++b) {
        const auto e = std::minmax(tr[a], tr[b]);
        inc.edge_triangles[{e.first, e.second}].push_back(ti);
        inc.neighbours[tr[a]].insert(tr[b]);
        inc.neighbours[tr[b]].insert(tr[a]);
      }
  }
  return inc;
}

std::size_t third_vertex(const Triangle& tr, std::size_t p, std::size_t q) {
  for (std::size_t v : tr)
    if (v != p && v != q) return v;
  throw Error(ErrorCode::Internal, "degenerate triangle");
}

void require_unimodular(const Triangulation& t) {
  if (!is_unimodular(t)) throw Error(ErrorCode::NotUnimodularTriangulation, "face triangulation is not unimodular");
}

// Column index per unordered pair that occurs in some nonzero triple; B(x, pair) = f(x, pair).
struct PairBasis {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> columns;
  IntMatrix B;
};

PairBasis pair_basis(const CubicForm& f) {
  PairBasis pb;
  auto pairs_of = [](const Triple& t) {
    return std::array<std::pair<std::size_t, std::pair<std::size_t, std::size_t>>, 3>{
        {{t[0], {t[1], t[2]}}, {t[1], {t[0], t[2]}}, {t[2], {t[0], t[1]}}}};
  };
  for (const auto& [t, v] : f.entries())
    for (const auto& [x, pr] : pairs_of(t)) pb.columns.emplace(pr, 0);
  std::size_t n = 0;
  for (auto& [pr, c] : pb.columns) c = n++;
  pb.B = IntMatrix(f.dimension(), n);
  for (const auto& [t, v] : f.entries())
    for (const auto& [x, pr] : pairs_of(t)) pb.B(x, pb.columns.at(pr)) = v;
  return pb;
}

IntMatrix rows_matrix(const std::vector<LatticeVector>& classes, std::size_t dim) {
  IntMatrix X(classes.size(), dim);
  for (std::size_t r = 0; r < classes.size(); ++r) {
    if (classes[r].size() != dim) throw Error(ErrorCode::InvalidArgument, "class vector has wrong dimension");
    for (std::size_t c = 0; c < dim; ++c) X(r, c) = classes[r][c];
  }
  return X;
}

std::vector<LatticeVector> l_basis() {
  std::vector<LatticeVector> out{hyperplane_class()};
  for (std::size_t d = kLCount; d < kClassCount; ++d) out.push_back(unit_class(d));
  return out;
}

// Solves G X = Y over Q for square nonsingular G; returns columns of X.
std::vector<std::vector<mpq_class>> solve_rational(const IntMatrix& G, const std::vector<LatticeVector>& rhs) {
  const std::size_t n = G.rows();
  const std::size_t k = rhs.size();
  std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n + k));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) M[r][c] = G(r, c);
    for (std::size_t j = 0; j < k; ++j) M[r][n + j] = rhs[j][r];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && M[p][c] == 0) ++p;
    if (p == n) throw Error(ErrorCode::Internal, "singular Gram matrix");
    std::swap(M[p], M[c]);
    const mpq_class inv = 1 / M[c][c];
    for (auto& x : M[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || M[r][c] == 0) continue;
      const mpq_class f = M[r][c];
      for (std::size_t j = c; j < n + k; ++j) M[r][j] -= f * M[c][j];
    }
  }
  std::vector<std::vector<mpq_class>> out(k, std::vector<mpq_class>(n));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t r = 0; r < n; ++r) out[j][r] = M[r][n + j];
  return out;
}

Integer lcm_all(const std::vector<std::vector<mpq_class>>& xs) {
  Integer l = 1;
  for (const auto& v : xs)
    for (const auto& q : v) l = lcm(l, Integer(q.get_den()));
  return l;
}

}  // namespace

std::size_t divisor_L(int i) {
  require_vertex(i);
  return static_cast<std::size_t>(i);
}

std::size_t divisor_E(int i, int j, int l) {
  require_vertex(i);
  require_vertex(j);
  if (i == j) throw Error(ErrorCode::IndexClash, "E needs two distinct vertices");
  if (l < 1 || l > 4) throw Error(ErrorCode::IndexClash, "E index l outside 1..4");
  if (i > j) return divisor_E(j, i, 5 - l);
  return kLCount + edge_position(i, j) * 4 + static_cast<std::size_t>(l - 1);
}

std::size_t divisor_F(int i, int j, int k, int l) {
  for (int x : {i, j, k}) require_vertex(x);
  if (l < 1 || l > 6) throw Error(ErrorCode::IndexClash, "face index l outside 1..6");
  return kLCount + kECount + quintic::face_index(i, j, k) * 6 + static_cast<std::size_t>(l - 1);
}

DivisorKind divisor_kind(std::size_t d) {
  if (d >= kClassCount) throw Error(ErrorCode::IndexClash, "divisor index out of range");
  if (d < kLCount) return DivisorKind::L;
  if (d < kLCount + kECount) return DivisorKind::E;
  return DivisorKind::F;
}

std::string divisor_name(std::size_t d) {
  switch (divisor_kind(d)) {
    case DivisorKind::L:
      return "L_" + std::to_string(d);
    case DivisorKind::E: {
      const std::size_t r = d - kLCount;
      const auto& e = edge_list()[r / 4];
      return "E^" + std::to_string(r % 4 + 1) + "_" + std::to_string(e[0]) + std::to_string(e[1]);
    }
    case DivisorKind::F: {
      const std::size_t r = d - kLCount - kECount;
      const auto& f = face_list()[r / 6];
      return "E^" + std::to_string(r % 6 + 1) + "_" + std::to_string(f[0]) + std::to_string(f[1]) + std::to_string(f[2]);
    }
  }
  return {};
}

const std::array<std::array<long, 3>, 6>& face_interior_weights() {
  static const std::array<std::array<long, 3>, 6> w{{{3, 1, 1}, {2, 2, 1}, {2, 1, 2}, {1, 3, 1}, {1, 2, 2}, {1, 1, 3}}};
  return w;
}

std::size_t face_point_divisor(const std::array<int, 3>& face, const std::array<long, 3>& w) {
  if (w[0] < 0 || w[1] < 0 || w[2] < 0 || w[0] + w[1] + w[2] != 5)
    throw Error(ErrorCode::InvalidArgument, "barycentric weights must be nonnegative and sum to 5");
  std::vector<std::size_t> nz;
  for (std::size_t t = 0; t < 3; ++t)
    if (w[t] != 0) nz.push_back(t);
  if (nz.size() == 1) return divisor_L(face[nz[0]]);
  if (nz.size() == 2) return divisor_E(face[nz[0]], face[nz[1]], static_cast<int>(w[nz[1]]));
  std::array<std::pair<int, long>, 3> cw{{{face[0], w[0]}, {face[1], w[1]}, {face[2], w[2]}}};
  std::sort(cw.begin(), cw.end());
  const std::array<long, 3> sw{cw[0].second, cw[1].second, cw[2].second};
  const auto& table = face_interior_weights();
  const auto it = std::find(table.begin(), table.end(), sw);
  return divisor_F(cw[0].first, cw[1].first, cw[2].first, static_cast<int>(it - table.begin()) + 1);
}

std::size_t face_triangulation_divisor(const std::array<int, 3>& face, const LatticeVector& point) {
  if (point.size() != 3 || point[2] != 1) throw Error(ErrorCode::InvalidArgument, "face point must be (x, y, 1)");
  const long x = point[0].get_si(), y = point[1].get_si();
  return face_point_divisor(face, {5 - x - y, x, y});
}

Integer CubicForm::get(std::size_t a, std::size_t b, std::size_t c) const {
  const auto it = entries_.find(sorted(a, b, c));
  return it == entries_.end() ? Integer(0) : it->second;
}

void CubicForm::set(std::size_t a, std::size_t b, std::size_t c, const Integer& v) {
  if (a >= dimension_ || b >= dimension_ || c >= dimension_) throw Error(ErrorCode::IndexClash, "class index out of range");
  const Triple t = sorted(a, b, c);
  const auto it = entries_.find(t);
  if (it != entries_.end()) {
    if (it->second != v)
      throw Error(ErrorCode::Internal, "conflicting triple product " + std::to_string(t[0]) + "," + std::to_string(t[1]) +
                                           "," + std::to_string(t[2]));
    return;
  }
  if (v != 0) entries_.emplace(t, v);
}

Integer CubicForm::eval(const LatticeVector& x, const LatticeVector& y, const LatticeVector& z) const {
  if (x.size() != dimension_ || y.size() != dimension_ || z.size() != dimension_)
    throw Error(ErrorCode::InvalidArgument, "class vector has wrong dimension");
  Integer s = 0;
  for (const auto& [t, v] : entries_) {
    // Sum over the distinct orderings of the stored triple.
    std::array<std::size_t, 3> p = t;
    do {
      s += v * x[p[0]] * y[p[1]] * z[p[2]];
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return s;
}

LatticeVector unit_class(std::size_t d) {
  if (d >= kClassCount) throw Error(ErrorCode::IndexClash, "divisor index out of range");
  LatticeVector v(kClassCount, 0);
  v[d] = 1;
  return v;
}

LatticeVector hyperplane_class() { return LatticeVector(kClassCount, 1); }

CubicForm rim_form() {
  CubicForm f;
  for (int i = 0; i < 5; ++i) f.set(divisor_L(i), divisor_L(i), divisor_L(i), 9);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      if (i == j) continue;
      const std::size_t L = divisor_L(i);
      std::array<std::size_t, 5> E{};
      for (int l = 1; l <= 4; ++l) E[static_cast<std::size_t>(l)] = divisor_E(i, j, l);
      f.set(L, E[1], E[1], 1);
      f.set(L, L, E[1], -3);
      f.set(E[1], E[2], E[2], 0);
      f.set(E[1], E[1], E[2], -2);
      f.set(E[2], E[3], E[3], -1);
      f.set(E[2], E[2], E[3], -1);
      f.set(E[3], E[4], E[4], -2);
      f.set(E[3], E[3], E[4], 0);
      for (int l = 1; l <= 4; ++l) f.set(E[l], E[l], E[l], 5);
    }
  return f;
}

CubicForm cubic_form_table() {
  CubicForm f = rim_form();
  const Triangulation t = dilated_triangle(5);
  const Incidence inc = incidence(t);
  const auto inner = interior_points(t);
  for (const auto& face : face_list()) {
    auto D = [&](std::size_t p) { return face_triangulation_divisor(face, t.model.points[p]); };
    for (const auto& tr : t.triangles) f.set(D(tr[0]), D(tr[1]), D(tr[2]), 1);
    for (const auto& [e, tris] : inc.edge_triangles) {
      if (tris.size() != 2) continue;
      f.set(D(e.first), D(e.first), D(e.second), -1);
      f.set(D(e.second), D(e.second), D(e.first), -1);
    }
    for (std::size_t p : inner) f.set(D(p), D(p), D(p), 6);
  }
  // The H-slice must agree with H expanded as the sum of all classes.
  const LatticeVector H = hyperplane_class();
  bool ok = f.eval(H, H, H) == 5;
  for (int i = 0; i < 5 && ok; ++i) {
    const LatticeVector L = unit_class(divisor_L(i));
    ok = f.eval(H, H, L) == 1 && f.eval(H, L, L) == -3;
    for (int j = 0; j < 5 && ok; ++j) {
      if (i == j) continue;
      ok = f.eval(H, L, unit_class(divisor_E(i, j, 1))) == 1;
      for (int l = 1; l <= 4 && ok; ++l) {
        const LatticeVector E = unit_class(divisor_E(i, j, l));
        ok = f.eval(H, E, E) == -2;
        if (ok && l < 4) ok = f.eval(H, E, unit_class(divisor_E(i, j, l + 1))) == 1;
      }
    }
  }
  if (!ok) throw Error(ErrorCode::Internal, "H-slice disagrees with the expansion of H");
  return f;
}

std::pair<Integer, Integer> interior_edge_products(const Triangulation& t, std::size_t p, std::size_t q) {
  const Incidence inc = incidence(t);
  const auto key = std::minmax(p, q);
  const auto it = inc.edge_triangles.find({key.first, key.second});
  if (it == inc.edge_triangles.end() || it->second.size() != 2)
    throw Error(ErrorCode::InvalidArgument, "not an interior edge of the triangulation");
  const std::size_t r = third_vertex(t.triangles[it->second[0]], p, q);
  const std::size_t s = third_vertex(t.triangles[it->second[1]], p, q);
  const auto& P = t.model.points;
  // n_r + n_s + a n_p + b n_q = 0.
  LatticeVector rhs(3);
  for (std::size_t c = 0; c < 3; ++c) rhs[c] = -(P[r][c] + P[s][c]);
  const auto sol = solve_integer(IntMatrix::from_columns({P[p], P[q]}), rhs);
  if (!sol) throw Error(ErrorCode::NotUnimodularTriangulation, "flanking relation has no integer solution");
  return {(*sol)[0], (*sol)[1]};
}

Integer interior_vertex_cube(const Triangulation& t, std::size_t v) {
  const Incidence inc = incidence(t);
  // K^2 of the star surface: sum of the ray self-intersections plus two per adjacent ray pair.
  Integer k2 = 0;
  for (std::size_t q : inc.neighbours[v]) k2 += interior_edge_products(t, v, q).second;
  k2 += 2 * static_cast<long>(inc.neighbours[v].size());
  return k2;
}

CubicForm cubic_form_local_toric(const Triangulation& t) {
  require_unimodular(t);
  CubicForm f(t.model.points.size());
  const Incidence inc = incidence(t);
  for (const auto& tr : t.triangles) f.set(tr[0], tr[1], tr[2], 1);
  for (const auto& [e, tris] : inc.edge_triangles) {
    if (tris.size() != 2) continue;
    const auto [a, b] = interior_edge_products(t, e.first, e.second);
    f.set(e.first, e.first, e.second, a);
    f.set(e.second, e.second, e.first, b);
  }
  for (std::size_t p : interior_points(t)) f.set(p, p, p, interior_vertex_cube(t, p));
  return f;
}

std::vector<Triangulation> standard_face_triangulations() {
  return std::vector<Triangulation>(face_list().size(), dilated_triangle(5));
}

CubicForm assemble_global_form(const std::vector<Triangulation>& face_triangulations) {
  if (face_triangulations.size() != face_list().size())
    throw Error(ErrorCode::InvalidArgument, "need one triangulation per face");
  CubicForm f = rim_form();
  for (std::size_t fi = 0; fi < face_list().size(); ++fi) {
    const auto& t = face_triangulations[fi];
    const CubicForm local = cubic_form_local_toric(t);
    for (const auto& [tr, v] : local.entries()) {
      const auto D = [&](std::size_t p) { return face_triangulation_divisor(face_list()[fi], t.model.points[p]); };
      f.set(D(tr[0]), D(tr[1]), D(tr[2]), v);
    }
  }
  return f;
}

IntMatrix pairing_matrix(const CubicForm& f, const std::vector<LatticeVector>& classes) {
  return rows_matrix(classes, f.dimension()) * pair_basis(f).B;
}

RankReport rank_and_radical(const CubicForm& f) {
  const PairBasis pb = pair_basis(f);
  RankReport r;
  r.pair_columns = pb.B.cols();
  r.rank = pb.B.empty() ? 0 : rank(pb.B);
  r.radical_rank = f.dimension() - r.rank;
  return r;
}

std::size_t l_basis_rank(const CubicForm& f) { return rank(pairing_matrix(f, l_basis())); }

std::string SaturationReport::group() const {
  if (invariant_factors.empty()) return "0";
  if (std::all_of(invariant_factors.begin(), invariant_factors.end(),
                  [&](const Integer& d) { return d == invariant_factors.front(); }))
    return "(Z/" + invariant_factors.front().get_str() + ")^" + std::to_string(invariant_factors.size());
  std::string s;
  for (const auto& d : invariant_factors) s += (s.empty() ? "" : " + ") + ("Z/" + d.get_str());
  return s;
}

SaturationReport saturation_quotient(const CubicForm& f) {
  const PairBasis pb = pair_basis(f);
  const IntMatrix A = rows_matrix(l_basis(), f.dimension()) * pb.B;
  const std::size_t n = A.rows();
  if (rank(A) != n) throw Error(ErrorCode::InvalidArgument, "L basis is not independent under the pairing");
  // z A is integral iff z C is integral, C a basis of the column lattice of A.
  const IntMatrix C = hermite_normal_form(A.transpose()).transpose();
  SaturationReport rep;
  rep.order = 1;
  for (const auto& d : elementary_divisors(C))
    if (d != 1) {
      rep.invariant_factors.push_back(d);
      rep.order *= d;
    }
  // L_p pairing rows r_p = c_p A, solved through the Gram matrix A A^T.
  const IntMatrix At = A.transpose();
  const IntMatrix G = A * At;
  std::vector<LatticeVector> rhs;
  for (int p = 0; p < 5; ++p) {
    const LatticeVector r = unit_class(divisor_L(p));
    const IntMatrix R = rows_matrix({r}, f.dimension()) * pb.B;
    rhs.push_back((R * At).row(0));
  }
  const auto coords = solve_rational(G, rhs);
  rep.denominator = lcm_all(coords);
  for (std::size_t p = 0; p < coords.size(); ++p) {
    LatticeVector num(n);
    for (std::size_t i = 0; i < n; ++i) {
      const mpq_class scaled = coords[p][i] * rep.denominator;
      num[i] = scaled.get_num();
    }
    // Exactness: c_p A must reproduce the pairing row of L_p.
    const IntMatrix lhs = rows_matrix({num}, n) * A;
    const IntMatrix R = rows_matrix({unit_class(divisor_L(static_cast<int>(p)))}, f.dimension()) * pb.B;
    for (std::size_t c = 0; c < lhs.cols(); ++c)
      if (lhs(0, c) != R(0, c) * rep.denominator) throw Error(ErrorCode::Internal, "L coordinates do not reproduce the pairing");
    rep.l_coordinates.push_back(std::move(num));
  }
  std::vector<LatticeVector> gens;
  for (std::size_t i = 0; i < n; ++i) {
    LatticeVector e(n, 0);
    e[i] = rep.denominator;
    gens.push_back(std::move(e));
  }
  for (const auto& c : rep.l_coordinates) gens.push_back(c);
  Integer index = 1;
  for (const auto& d : elementary_divisors(IntMatrix::from_rows(gens))) index *= d;
  Integer full = 1;
  for (std::size_t i = 0; i < n; ++i) full *= rep.denominator;
  rep.generated_order = full / index;
  rep.generated_by_l = rep.generated_order == rep.order;
  LatticeVector sum(n, 0);
  for (const auto& c : rep.l_coordinates)
    for (std::size_t i = 0; i < n; ++i) sum[i] += c[i];
  rep.sum_of_l_in_lattice = std::all_of(sum.begin(), sum.end(), [&](const Integer& x) { return x % rep.denominator == 0; });
  return rep;
}

CartanReport cartan_check(const CubicForm& f) {
  CartanReport rep;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) {
        if (i == j || j == k || i == k) continue;
        const std::array<int, 3> face{i, j, k};
        IntMatrix a(4, 4);
        std::array<std::array<std::size_t, 2>, 4> nb{};
        for (long m = 1; m <= 4; ++m)
          nb[static_cast<std::size_t>(m - 1)] = {face_point_divisor(face, {5 - m, m - 1, 1}),
                                                 face_point_divisor(face, {4 - m, m, 1})};
        auto pair_with = [&](std::size_t d, long m) -> Integer {
          const std::size_t E = divisor_E(i, j, static_cast<int>(m));
          const auto& n = nb[static_cast<std::size_t>(m - 1)];
          return f.get(d, E, n[0]) + f.get(d, E, n[1]);
        };
        for (long l = 1; l <= 4; ++l)
          for (long m = 1; m <= 4; ++m)
            a(static_cast<std::size_t>(l - 1), static_cast<std::size_t>(m - 1)) = pair_with(divisor_E(i, j, static_cast<int>(l)), m);
        IntMatrix expect(4, 4);
        for (std::size_t l = 0; l < 4; ++l) {
          expect(l, l) = -2;
          if (l + 1 < 4) expect(l, l + 1) = expect(l + 1, l) = 1;
        }
        if (!(a == expect)) rep.all_cartan = false;
        for (long m = 1; m <= 4; ++m) {
          Integer h = 0;
          for (std::size_t d = 0; d < kClassCount; ++d) {
            const Integer v = pair_with(d, m);
            h += v;
            if (divisor_kind(d) == DivisorKind::L) continue;
            bool own = false;
            for (int l = 1; l <= 4; ++l) own = own || d == divisor_E(i, j, l);
            if (!own && v != 0) rep.orthogonal_to_rest = false;
          }
          if (h != 0) rep.orthogonal_to_rest = false;
        }
        if (i == 0 && j == 1 && k == 2) rep.sample = a;
        ++rep.checked;
      }
  return rep;
}

IntMatrix coboundary0() {
  IntMatrix d(edge_list().size(), 5);
  for (std::size_t e = 0; e < edge_list().size(); ++e) {
    d(e, static_cast<std::size_t>(edge_list()[e][1])) += 1;
    d(e, static_cast<std::size_t>(edge_list()[e][0])) -= 1;
  }
  return d;
}

IntMatrix coboundary1() {
  IntMatrix d(face_list().size(), edge_list().size());
  for (std::size_t fi = 0; fi < face_list().size(); ++fi) {
    const auto [i, j, k] = face_list()[fi];
    d(fi, edge_position(i, j)) += 1;
    d(fi, edge_position(j, k)) += 1;
    d(fi, edge_position(i, k)) -= 1;
  }
  return d;
}

std::size_t rank_mod_p(const IntMatrix& A, long p) {
  std::vector<std::vector<long>> M(A.rows(), std::vector<long>(A.cols()));
  for (std::size_t r = 0; r < A.rows(); ++r)
    for (std::size_t c = 0; c < A.cols(); ++c) {
      Integer x = A(r, c) % p;
      if (x < 0) x += p;
      M[r][c] = x.get_si();
    }
  auto inverse = [p](long a) {
    long r = 1, b = a, e = p - 2;
    while (e > 0) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t rk = 0;
  for (std::size_t c = 0; c < A.cols() && rk < A.rows(); ++c) {
    std::size_t piv = rk;
    while (piv < A.rows() && M[piv][c] == 0) ++piv;
    if (piv == A.rows()) continue;
    std::swap(M[piv], M[rk]);
    const long inv = inverse(M[rk][c]);
    for (auto& x : M[rk]) x = x * inv % p;
    for (std::size_t r = 0; r < A.rows(); ++r) {
      if (r == rk || M[r][c] == 0) continue;
      const long f = M[r][c];
      for (std::size_t j = 0; j < A.cols(); ++j) M[r][j] = ((M[r][j] - f * M[rk][j]) % p + p) % p;
    }
    ++rk;
  }
  return rk;
}

CochainReport z5_cochain_check() {
  const IntMatrix d0 = coboundary0();
  const IntMatrix d1 = coboundary1();
  CochainReport rep;
  rep.rank_d0 = rank_mod_p(d0, 5);
  rep.rank_d1 = rank_mod_p(d1, 5);
  rep.ker_d1_dimension = d1.cols() - rep.rank_d1;
  rep.complex = (d1 * d0).is_zero() || rank_mod_p(d1 * d0, 5) == 0;
  rep.exact = rep.complex && rep.rank_d0 == rep.ker_d1_dimension;
  rep.ker_d0_constants = true;
  LatticeVector b(5, 0);
  for (long code = 0; code < 3125; ++code) {
    long c = code;
    for (std::size_t t = 0; t < 5; ++t, c /= 5) b[t] = c % 5;
    const LatticeVector img = d0 * b;
    if (std::all_of(img.begin(), img.end(), [](const Integer& x) { return x % 5 == 0; })) {
      ++rep.ker_d0_size;
      if (!std::all_of(b.begin(), b.end(), [&](const Integer& x) { return x == b[0]; })) rep.ker_d0_constants = false;
    }
  }
  return rep;
}

SurfaceTopology topology_from_string(const std::string& s) {
  if (s == "plane") return SurfaceTopology::Plane;
  if (s == "blown_up_ruled") return SurfaceTopology::BlownUpRuled;
  if (s == "star_toric") return SurfaceTopology::StarToric;
  throw Error(ErrorCode::UnknownTopology, "unknown surface topology '" + s + "'");
}

std::string to_string(SurfaceTopology t) {
  switch (t) {
    case SurfaceTopology::Plane:
      return "plane";
    case SurfaceTopology::BlownUpRuled:
      return "blown_up_ruled";
    case SurfaceTopology::StarToric:
      return "star_toric";
  }
  return {};
}

SurfaceTopology declared_topology(std::size_t d) {
  switch (divisor_kind(d)) {
    case DivisorKind::L:
      return SurfaceTopology::Plane;
    case DivisorKind::E:
      return SurfaceTopology::BlownUpRuled;
    case DivisorKind::F:
      return SurfaceTopology::StarToric;
  }
  return SurfaceTopology::Plane;
}

Integer c2(std::size_t d) {
  switch (divisor_kind(d)) {
    case DivisorKind::L:
      return -6;
    case DivisorKind::E:
      return 2;
    case DivisorKind::F:
      return 0;
  }
  return 0;
}

Integer c2(const LatticeVector& x) {
  if (x.size() != kClassCount) throw Error(ErrorCode::InvalidArgument, "class vector has wrong dimension");
  Integer s = 0;
  for (std::size_t d = 0; d < kClassCount; ++d) s += x[d] * c2(d);
  return s;
}

IndexCheck index_consistency(const CubicForm& f, std::size_t d, SurfaceTopology topology, long rays) {
  IndexCheck c;
  c.divisor = d;
  c.topology = topology;
  switch (topology) {
    case SurfaceTopology::Plane:
      c.index = 1;
      break;
    case SurfaceTopology::BlownUpRuled:
      c.index = -3;
      break;
    case SurfaceTopology::StarToric:
      if (rays < 3) throw Error(ErrorCode::InvalidArgument, "star surface needs at least three rays");
      c.index = 4 - rays;
      break;
  }
  c.cube = f.get(d, d, d);
  c.c2 = c2(d);
  c.ok = 3 * c.index + c.cube + 2 * c.c2 == 0;
  return c;
}

IndexCheck index_consistency(const CubicForm& f, std::size_t d) {
  const SurfaceTopology topo = declared_topology(d);
  long rays = 0;
  if (topo == SurfaceTopology::StarToric) {
    const Triangulation t = dilated_triangle(5);
    const auto& face = face_list()[(d - kLCount - kECount) / 6];
    const Incidence inc = incidence(t);
    for (std::size_t p = 0; p < t.model.points.size(); ++p)
      if (face_triangulation_divisor(face, t.model.points[p]) == d) rays = static_cast<long>(inc.neighbours[p].size());
  }
  return index_consistency(f, d, topo, rays);
}

std::size_t interior_trapezoid() {
  const Triangulation t = dilated_triangle(5);
  const auto edges = flippable_edges(t);
  const auto inner = interior_points(t);
  const Incidence inc = incidence(t);
  auto is_inner = [&](std::size_t p) { return std::find(inner.begin(), inner.end(), p) != inner.end(); };
  for (std::size_t id = 0; id < edges.size(); ++id) {
    const auto [p, q] = edges[id];
    const auto& tris = inc.edge_triangles.at({p, q});
    const std::size_t r = third_vertex(t.triangles[tris[0]], p, q);
    const std::size_t s = third_vertex(t.triangles[tris[1]], p, q);
    if (is_inner(p) && is_inner(q) && is_inner(r) && is_inner(s)) return id;
  }
  throw Error(ErrorCode::Internal, "no interior trapezoid");
}

CubicForm flop_form(const CubicForm& f, std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
  const std::set<std::size_t> distinct{p, q, r, s};
  if (distinct.size() != 4) throw Error(ErrorCode::InvalidArgument, "flop needs four distinct divisors");
  std::map<std::size_t, long> dc{{p, -1}, {q, -1}, {r, 1}, {s, 1}};
  std::map<Triple, Integer> entries = f.entries();
  const std::vector<std::size_t> ds(distinct.begin(), distinct.end());
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a; b < 4; ++b)
      for (std::size_t c = b; c < 4; ++c) {
        const Triple t{ds[a], ds[b], ds[c]};
        entries[t] -= dc[ds[a]] * dc[ds[b]] * dc[ds[c]];
      }
  CubicForm out(f.dimension());
  for (const auto& [t, v] : entries) out.set(t[0], t[1], t[2], v);
  return out;
}

FlopReport flop(std::size_t face, std::size_t trapezoid) {
  if (face >= face_list().size()) throw Error(ErrorCode::InvalidArgument, "face index outside 0..9");
  FlopReport rep;
  rep.face = face;
  rep.trapezoid = trapezoid;
  rep.before = dilated_triangle(5);
  const auto edges = flippable_edges(rep.before);
  if (trapezoid >= edges.size())
    throw Error(ErrorCode::NotFlippable, "trapezoid id " + std::to_string(trapezoid) + " outside the flippable edges");
  rep.old_diagonal = edges[trapezoid];
  rep.after = flip_edge(rep.before, rep.old_diagonal.first, rep.old_diagonal.second);
  rep.after_unimodular = is_unimodular(rep.after);
  {
    const Incidence inc = incidence(rep.before);
    const auto& tris = inc.edge_triangles.at(rep.old_diagonal);
    const std::size_t r = third_vertex(rep.before.triangles[tris[0]], rep.old_diagonal.first, rep.old_diagonal.second);
    const std::size_t s = third_vertex(rep.before.triangles[tris[1]], rep.old_diagonal.first, rep.old_diagonal.second);
    rep.new_diagonal = {std::min(r, s), std::max(r, s)};
  }
  const auto& fc = face_list()[face];
  auto D = [&](std::size_t point) { return face_triangulation_divisor(fc, rep.before.model.points[point]); };
  auto global = [&](const Triple& t) { return sorted(D(t[0]), D(t[1]), D(t[2])); };

  rep.form_before = assemble_global_form(standard_face_triangulations());
  rep.form_after = flop_form(rep.form_before, D(rep.old_diagonal.first), D(rep.old_diagonal.second),
                             D(rep.new_diagonal.first), D(rep.new_diagonal.second));

  // Independent path: recompute the face by the local toric rules.
  const CubicForm lb = cubic_form_local_toric(rep.before);
  const CubicForm la = cubic_form_local_toric(rep.after);
  std::set<Triple> local_keys;
  for (const auto& [t, v] : lb.entries()) local_keys.insert(t);
  for (const auto& [t, v] : la.entries()) local_keys.insert(t);
  for (const auto& t : local_keys) {
    const Triple g = global(t);
    if (rep.form_before.get(g[0], g[1], g[2]) != lb.get(t[0], t[1], t[2]) ||
        rep.form_after.get(g[0], g[1], g[2]) != la.get(t[0], t[1], t[2]))
      throw Error(ErrorCode::Internal, "local toric recomputation disagrees with the flop formula at " +
                                           divisor_name(g[0]) + "." + divisor_name(g[1]) + "." + divisor_name(g[2]));
  }

  std::set<Triple> keys;
  for (const auto& [t, v] : rep.form_before.entries()) keys.insert(t);
  for (const auto& [t, v] : rep.form_after.entries()) keys.insert(t);
  for (const auto& t : keys) {
    const Integer b = rep.form_before.get(t[0], t[1], t[2]);
    const Integer a = rep.form_after.get(t[0], t[1], t[2]);
    if (a != b) rep.deltas.push_back({t, b, a});
  }
  rep.rank_before = rank_and_radical(rep.form_before);
  rep.rank_after = rank_and_radical(rep.form_after);
  const Triangulation back = flip_edge(rep.after, rep.new_diagonal.first, rep.new_diagonal.second);
  const CubicForm restored = flop_form(rep.form_after, D(rep.new_diagonal.first), D(rep.new_diagonal.second),
                                       D(rep.old_diagonal.first), D(rep.old_diagonal.second));
  rep.double_flip_restores =
      back == canonical(rep.before) && cubic_form_local_toric(back) == lb && restored == rep.form_before;
  return rep;
}

}  // namespace tfib::intersection
