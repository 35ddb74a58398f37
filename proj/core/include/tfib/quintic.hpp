#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "tfib/fibration.hpp"
#include "tfib/lattice.hpp"
#include "tfib/toric.hpp"

namespace tfib::quintic {

// Projection Z^5 -> canonical coordinates of N_l = Z^5 / <e_l, sum e>.
IntMatrix projection(int l);
// Chart map T_ij : N_i -> dual(N_j) with T_ij(e_k) = e_k* - e_i*, in canonical coordinates.
IntMatrix chart_map(int i, int j);
// Basis (e_j, e_k, e_m) of N_l as columns in canonical coordinates.
IntMatrix face_basis(int j, int k, int l, int m);

struct EdgeMonodromy {
  int l = 0;
  int m = 0;
  IntMatrix composite;      // T_lj^{-1} T_mj T_mi^{-1} T_li, canonical coordinates of N_l
  IntMatrix in_face_basis;  // same map in basis (e_j, e_k, e_m)
  bool matches_closed_form = false;
};

// Based at l = min of the complement unless base_l names the other complementary index.
EdgeMonodromy edge_monodromy(int i, int j, int k, int base_l = -1);
IntMatrix closed_form();

// Faces <P_i, P_j, P_k> with i < j < k in lexicographic order; simplex edges likewise.
const std::vector<std::array<int, 3>>& faces();
const std::vector<std::array<int, 2>>& simplex_edges();
std::size_t face_index(int i, int j, int k);

struct SimplexComplex {
  std::vector<std::array<int, 2>> edge_barycenters;
  std::vector<std::array<int, 3>> face_barycenters;
  std::vector<std::array<std::size_t, 2>> gamma_edges;  // (edge barycenter, face barycenter)
};
SimplexComplex simplex_complex();

inline constexpr long kFaceVerticesPerFace = 25;
inline constexpr long kFaceEdgesPerFace = 45;
inline constexpr long kEdgeVerticesPerEdge = 5;

long face_vertex_id(std::size_t face, std::size_t triangle);
long edge_vertex_id(std::size_t simplex_edge, std::size_t slot);

FibrationGraph build_quintic_fibration();

// Product of the five unit legs crossing side (a, b) of face x, compared with T_ab,x.
struct LegProductCheck {
  std::array<int, 2> side;
  int third = 0;
  bool equals_chart_composite = false;
  bool factor_five = false;
};
std::vector<LegProductCheck> leg_product_checks(const FibrationGraph& g);

struct QuinticInvariants {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t t12 = 0;
  std::size_t t21 = 0;
  long chi = 0;
  bool simply_connected = false;
  long b2 = 0;
  long b3 = 0;
  long h_cubed = 0;
  long critical_curves = 0;
  long curve_degree = 0;
  long crit_h = 0;
  long p1_h = 0;
  long h_c2 = 0;
  std::vector<CriticalSurface> surfaces;
};

QuinticInvariants quintic_invariants(const FibrationGraph& g);
QuinticInvariants quintic_invariants();

struct MirrorFibration {
  FibrationGraph graph;
  std::size_t t12 = 0;
  std::size_t t21 = 0;
  long chi = 0;
  bool simply_connected = false;
  long b2 = 0;
  long b3 = 0;
  std::vector<CriticalSurface> surfaces;
};

MirrorFibration build_mirror_fibration(const FibrationGraph& quintic);
MirrorFibration build_mirror_fibration();

}  // namespace tfib::quintic
