#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "tfib/chern.hpp"
#include "tfib/fibration.hpp"
#include "tfib/lattice.hpp"

namespace tfib {

// Generators of a Gorenstein cone: every point has <m0, n> == 1.
struct GorensteinModel {
  LatticeVector m0;
  std::vector<LatticeVector> points;
  friend bool operator==(const GorensteinModel&, const GorensteinModel&) = default;
};

using Triangle = std::array<std::size_t, 3>;

struct Triangulation {
  GorensteinModel model;
  std::vector<Triangle> triangles;
  friend bool operator==(const Triangulation&, const Triangulation&) = default;
};

// Oriented 2D chart of N_{m0}: point i sits at origin + x*basis[0] + y*basis[1].
struct PolygonChart {
  std::array<LatticeVector, 2> basis;
  LatticeVector origin;
  std::vector<std::array<Integer, 2>> coords;
};

struct DualEdge {
  long id = 0;
  long from = 0;
  long to = kLeg;
  std::size_t p = 0;  // triangulation edge crossed, p < q
  std::size_t q = 0;
};

struct DualGraph {
  std::size_t vertex_count = 0;  // one per triangle, same indices
  std::vector<DualEdge> edges;
  std::vector<std::vector<long>> order;  // incident dual edges per triangle
  std::size_t internal_edge_count() const;
  std::size_t leg_count() const;
};

struct MirrorCurve {
  long genus = 0;
  long punctures = 0;
  friend bool operator==(const MirrorCurve&, const MirrorCurve&) = default;
};

// orientation = +1 keeps det(basis0, basis1, n) > 0; -1 reverses it.
PolygonChart polygon_chart(const GorensteinModel& m, int orientation = 1);

bool is_unimodular(const Triangulation& t);
DualGraph dual_graph(const Triangulation& t);
ChernChain chern_chain_from_triangulation(const Triangulation& t, int orientation = 1);
MirrorCurve mirror_curve_stats(const Triangulation& t);
FibrationGraph local_fibration(const Triangulation& t);

// Triangles sorted internally and as a list.
Triangulation canonical(const Triangulation& t);
// Interior edges whose two triangles form a strictly convex quadrilateral, sorted.
std::vector<std::pair<std::size_t, std::size_t>> flippable_edges(const Triangulation& t);
Triangulation flip_edge(const Triangulation& t, std::size_t p, std::size_t q);
// Points strictly inside the hull that are used by some triangle.
std::vector<std::size_t> interior_points(const Triangulation& t);

Triangulation unit_triangle();
// The triangle of Z^3 + (1/3)(1,1,1)Z rebased to Z^3; subdivided uses the interior point.
Triangulation c3_z3(bool subdivided);
// Standard subdivision of the n-dilated unit triangle into n^2 unit triangles at (x, y, 1).
Triangulation dilated_triangle(long n);

}  // namespace tfib
