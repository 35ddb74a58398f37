#include "support.hpp"

#include <algorithm>
#include <set>

#include "tfib/random.hpp"

namespace tfib::testing {

namespace {

long cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Counter-clockwise hull without collinear points.
std::vector<Point2> hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point2> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

bool inside(const std::vector<Point2>& h, const Point2& p) {
  for (std::size_t i = 0; i < h.size(); ++i)
    if (cross(h[i], h[(i + 1) % h.size()], p) < 0) return false;
  return true;
}

}  // namespace

long random_long(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_long(rng, lo, hi);
  return m;
}

std::vector<Point2> random_polygon(std::mt19937_64& rng, long box, std::size_t seeds) {
  for (;;) {
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < seeds; ++i) pts.push_back({random_long(rng, 0, box), random_long(rng, 0, box)});
    const auto h = hull(pts);
    if (h.size() < 3) continue;
    std::vector<Point2> all;
    for (long x = 0; x <= box; ++x)
      for (long y = 0; y <= box; ++y)
        if (inside(h, {x, y})) all.push_back({x, y});
    return all;
  }
}

Triangulation placing_triangulation(const std::vector<Point2>& points) {
  std::vector<Point2> pts = points;
  std::sort(pts.begin(), pts.end());
  Triangulation t;
  t.model.m0 = {0, 0, 1};
  for (const auto& p : pts) t.model.points.push_back({p[0], p[1], 1});

  // Boundary cycle of the placed points, counter-clockwise, collinear points kept.
  std::vector<std::size_t> boundary;
  std::size_t placed = 0;
  while (placed < pts.size()) {
    const std::size_t i = placed++;
    if (boundary.size() < 2) {
      boundary.push_back(i);
      continue;
    }
    if (t.triangles.empty()) {
      // Collinear prefix: fan the first off-line point over the chain.
      const long c = cross(pts[boundary.front()], pts[boundary.back()], pts[i]);
      if (c == 0) {
        boundary.push_back(i);
        continue;
      }
      for (std::size_t k = 0; k + 1 < boundary.size(); ++k)
        t.triangles.push_back({boundary[k], boundary[k + 1], i});
      if (c < 0) std::reverse(boundary.begin(), boundary.end());
      boundary.push_back(i);
      continue;
    }
    const std::size_t n = boundary.size();
    std::vector<bool> visible(n);
    for (std::size_t k = 0; k < n; ++k)
      visible[k] = cross(pts[boundary[k]], pts[boundary[(k + 1) % n]], pts[i]) < 0;
    std::size_t start = 0;
    while (!(visible[start] && !visible[(start + n - 1) % n])) ++start;
    std::vector<std::size_t> next{boundary[start]};
    std::size_t k = start;
    while (visible[k % n]) {
      t.triangles.push_back({boundary[k % n], boundary[(k + 1) % n], i});
      ++k;
    }
    next.push_back(i);
    for (std::size_t j = k; j < start + n; ++j) next.push_back(boundary[j % n]);
    boundary = std::move(next);
  }
  return canonical(t);
}

Triangulation random_flips(const Triangulation& t, std::mt19937_64& rng, std::size_t count) {
  Triangulation out = t;
  for (std::size_t i = 0; i < count; ++i) {
    const auto edges = flippable_edges(out);
    if (edges.empty()) break;
    const auto& e = edges[static_cast<std::size_t>(random_long(rng, 0, static_cast<long>(edges.size()) - 1))];
    out = flip_edge(out, e.first, e.second);
  }
  return out;
}

Triangulation random_triangulation(std::mt19937_64& rng, long box) {
  const auto base = placing_triangulation(random_polygon(rng, box));
  return random_flips(base, rng, static_cast<std::size_t>(random_long(rng, 0, 6)));
}

std::vector<IntMatrix> random_conjugate(const std::vector<IntMatrix>& tuple, std::mt19937_64& rng, IntMatrix* p) {
  const IntMatrix P = random_unimodular(tuple.front().rows(), rng);
  const IntMatrix Pinv = inverse_unimodular(P);
  std::vector<IntMatrix> out;
  for (const auto& T : tuple) out.push_back(P * T * Pinv);
  if (p) *p = P;
  return out;
}

MonodromyRep random_unipotent_rep(std::mt19937_64& rng) {
  MonodromyRep rep;
  const std::size_t count = static_cast<std::size_t>(random_long(rng, 1, 3));
  std::vector<IntMatrix> gens;
  for (std::size_t i = 0; i < count; ++i) {
    IntMatrix u = IntMatrix::identity(3);
    u(0, 1) = random_long(rng, -3, 3);
    u(0, 2) = random_long(rng, -3, 3);
    u(1, 2) = random_long(rng, -3, 3);
    gens.push_back(u);
  }
  rep.generators = random_conjugate(gens, rng);
  rep.basis_label = "random";
  return rep;
}

FibrationGraph disjoint_union(const std::vector<FibrationGraph>& parts) {
  FibrationGraph out;
  long vshift = 0, eshift = 0;
  for (const auto& g : parts) {
    out.base = g.base;
    long vmax = -1, emax = -1;
    for (auto v : g.vertices) {
      vmax = std::max(vmax, v.id);
      v.id += vshift;
      for (auto& l : v.loops) l.edge += eshift;
      out.vertices.push_back(v);
    }
    for (auto e : g.edges) {
      emax = std::max(emax, e.id);
      e.id += eshift;
      for (auto& end : e.ends)
        if (end != kLeg) end += vshift;
      out.edges.push_back(e);
    }
    vshift += vmax + 1;
    eshift += emax + 1;
  }
  return out;
}

namespace {

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

void regauge(FibrationGraph& g, long v, const IntMatrix& G) {
  const IntMatrix Ginv = inverse_unimodular(G);
  for (auto& e : g.edges) {
    if (e.ends[0] == v) {
      e.monodromy = G * e.monodromy * Ginv;
      e.transport = e.transport * Ginv;
    }
    if (e.ends[1] == v) e.transport = G * e.transport;
  }
}

Integer naive_det(const std::vector<std::vector<Integer>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Integer d = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Integer>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    const Integer term = m[0][c] * naive_det(minor);
    d += (c % 2 == 0) ? Integer(term) : Integer(-term);
  }
  return d;
}

Integer minor_gcd(const IntMatrix& A, std::size_t k) {
  std::vector<std::vector<std::size_t>> rows, cols;
  std::vector<std::size_t> cur;
  subsets(A.rows(), k, 0, cur, rows);
  subsets(A.cols(), k, 0, cur, cols);
  Integer g = 0;
  for (const auto& rs : rows)
    for (const auto& cs : cols) {
      std::vector<std::vector<Integer>> m;
      for (auto r : rs) {
        std::vector<Integer> row;
        for (auto c : cs) row.push_back(A(r, c));
        m.push_back(row);
      }
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), naive_det(m).get_mpz_t());
    }
  return g;
}

}  // namespace tfib::testing

namespace tfib::testing::charts {

Vec5 chart(int i, int j, const Vec5& x) {
  Vec5 phi{};
  for (int k = 0; k < 5; ++k) {
    if (k == i || k == j) continue;
    phi[k] += x[k] - x[j];
    phi[i] -= x[k] - x[j];
  }
  return phi;
}

Vec5 chart_inverse(int i, int j, const Vec5& phi) {
  Vec5 x{};
  for (int k = 0; k < 5; ++k)
    if (k != i && k != j) x[k] = phi[k];
  return x;
}

Vec5 unit(int a) {
  Vec5 v{};
  v[a] = 1;
  return v;
}

Vec5 composite(int i, int j, int l, int m, const Vec5& x) {
  return chart_inverse(l, j, chart(m, j, chart_inverse(m, i, chart(l, i, x))));
}

bool same_class(int l, const Vec5& a, const Vec5& b) {
  long c = 0;
  bool first = true;
  for (int s = 0; s < 5; ++s) {
    if (s == l) continue;
    if (first) c = a[s] - b[s], first = false;
    if (a[s] - b[s] != c) return false;
  }
  return true;
}

LatticeVector to_lattice(const Vec5& v) { return LatticeVector(v.begin(), v.end()); }

std::array<int, 2> complement(int i, int j, int k) {
  std::array<int, 2> c{};
  int n = 0;
  for (int x = 0; x < 5; ++x)
    if (x != i && x != j && x != k) c[n++] = x;
  return c;
}

}  // namespace tfib::testing::charts
