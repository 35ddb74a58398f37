#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tfib/lattice.hpp"
#include "tfib/toric.hpp"

namespace tfib::intersection {

// Class indices: L_i (5), then E^l_ij for i<j, l=1..4 (40), then E^l_ijk per sorted face, l=1..6 (60).
inline constexpr std::size_t kClassCount = 105;
inline constexpr std::size_t kLCount = 5;
inline constexpr std::size_t kECount = 40;
inline constexpr std::size_t kFCount = 60;

enum class DivisorKind { L, E, F };

std::size_t divisor_L(int i);
// Either order of (i, j); E^l_ji is E^{5-l}_ij.
std::size_t divisor_E(int i, int j, int l);
// Face indices in any order are sorted first.
std::size_t divisor_F(int i, int j, int k, int l);
DivisorKind divisor_kind(std::size_t d);
std::string divisor_name(std::size_t d);

// Interior numbering of E^l_ijk by barycentric weights (w_i, w_j, w_k).
const std::array<std::array<long, 3>, 6>& face_interior_weights();
// Divisor at barycentric weights on the corners of face (weights sum to 5).
std::size_t face_point_divisor(const std::array<int, 3>& face, const std::array<long, 3>& w);
// Divisor of a point (x, y, 1) of the dilated face triangulation with weights (5-x-y, x, y).
std::size_t face_triangulation_divisor(const std::array<int, 3>& face, const LatticeVector& point);

using Triple = std::array<std::size_t, 3>;

// Totally symmetric trilinear integer form; unset triples are zero.
class CubicForm {
 public:
  explicit CubicForm(std::size_t dimension = kClassCount) : dimension_(dimension) {}

  std::size_t dimension() const { return dimension_; }
  Integer get(std::size_t a, std::size_t b, std::size_t c) const;
  // Zero values are not stored; a different value for an existing triple throws Internal.
  void set(std::size_t a, std::size_t b, std::size_t c, const Integer& v);
  Integer eval(const LatticeVector& x, const LatticeVector& y, const LatticeVector& z) const;
  const std::map<Triple, Integer>& entries() const { return entries_; }

  friend bool operator==(const CubicForm&, const CubicForm&) = default;

 private:
  std::size_t dimension_;
  std::map<Triple, Integer> entries_;
};

LatticeVector unit_class(std::size_t d);
// H = sum of all 105 classes.
LatticeVector hyperplane_class();

// Entries of the rim table: L_i and E^l_ij along every simplex edge.
CubicForm rim_form();
// Full table with face entries from the stated rules on the standard face triangulations.
CubicForm cubic_form_table();

// Face-local products over triangulation point indices: triangles, interior edges, interior-vertex cubes.
CubicForm cubic_form_local_toric(const Triangulation& t);
// D^3 of an interior vertex as K^2 of its star surface.
Integer interior_vertex_cube(const Triangulation& t, std::size_t v);
// (D_p^2 D_q, D_q^2 D_p) for an interior edge.
std::pair<Integer, Integer> interior_edge_products(const Triangulation& t, std::size_t p, std::size_t q);

std::vector<Triangulation> standard_face_triangulations();
// Rim table plus local toric entries of each face (faces in lexicographic order).
CubicForm assemble_global_form(const std::vector<Triangulation>& face_triangulations);

struct RankReport {
  std::size_t rank = 0;
  std::size_t radical_rank = 0;
  std::size_t pair_columns = 0;
};
// Pairing of classes against all pairwise products.
RankReport rank_and_radical(const CubicForm& f);
// Rank of the pairing restricted to {H, E^l_ij, E^l_ijk}.
std::size_t l_basis_rank(const CubicForm& f);
IntMatrix pairing_matrix(const CubicForm& f, const std::vector<LatticeVector>& classes);

struct SaturationReport {
  std::vector<Integer> invariant_factors;  // nontrivial factors of L_sat / L
  Integer order = 0;
  // L_p as rational combinations of the L basis: numerators over a common denominator.
  std::vector<LatticeVector> l_coordinates;
  Integer denominator = 1;
  Integer generated_order = 0;  // order of the subgroup spanned by the images of L_0..L_4
  bool generated_by_l = false;
  bool sum_of_l_in_lattice = false;
  std::string group() const;  // e.g. "(Z/5)^4"
};
SaturationReport saturation_quotient(const CubicForm& f);

struct CartanReport {
  bool all_cartan = true;        // a_lm = E^l_ij . f_m is minus the A4 Cartan matrix
  bool orthogonal_to_rest = true;  // f_m . D = 0 for D outside the E^*_ij and L classes
  std::size_t checked = 0;
  IntMatrix sample;  // (a_lm) for i=0, j=1, k=2
};
// f_m uses the neighbours of E^m_ij towards the third corner k.
CartanReport cartan_check(const CubicForm& f);

struct CochainReport {
  std::size_t rank_d0 = 0;
  std::size_t rank_d1 = 0;
  std::size_t ker_d0_size = 0;
  bool ker_d0_constants = false;
  std::size_t ker_d1_dimension = 0;
  bool complex = false;  // d1 * d0 == 0 mod 5
  bool exact = false;    // im d0 == ker d1
};
IntMatrix coboundary0();
IntMatrix coboundary1();
std::size_t rank_mod_p(const IntMatrix& A, long p);
CochainReport z5_cochain_check();

enum class SurfaceTopology { Plane, BlownUpRuled, StarToric };
SurfaceTopology topology_from_string(const std::string& s);
std::string to_string(SurfaceTopology t);
SurfaceTopology declared_topology(std::size_t d);

Integer c2(std::size_t d);
Integer c2(const LatticeVector& x);

struct IndexCheck {
  std::size_t divisor = 0;
  SurfaceTopology topology = SurfaceTopology::Plane;
  Integer index = 0;
  Integer cube = 0;
  Integer c2 = 0;
  bool ok = false;
};
// 3 I(D) + D^3 + 2 c2.D == 0; star surfaces need their ray count.
IndexCheck index_consistency(const CubicForm& f, std::size_t d, SurfaceTopology topology, long rays = 0);
// Uses the declared topology and the standard-face ray count.
IndexCheck index_consistency(const CubicForm& f, std::size_t d);

struct FlopDelta {
  Triple classes;
  Integer before = 0;
  Integer after = 0;
};

// Flop of the curve D_p . D_q flanked by D_r, D_s: every triple changes by -(D_a.C)(D_b.C)(D_c.C),
// with D.C = -1 on p, q and +1 on r, s.
CubicForm flop_form(const CubicForm& f, std::size_t p, std::size_t q, std::size_t r, std::size_t s);

struct FlopReport {
  std::size_t face = 0;
  std::size_t trapezoid = 0;
  std::pair<std::size_t, std::size_t> old_diagonal;  // point indices of the face triangulation
  std::pair<std::size_t, std::size_t> new_diagonal;
  Triangulation before;
  Triangulation after;
  bool after_unimodular = false;
  std::vector<FlopDelta> deltas;  // global classes
  CubicForm form_before;
  CubicForm form_after;
  RankReport rank_before;
  RankReport rank_after;
  bool double_flip_restores = false;
};
// Trapezoid ids index flippable_edges of the standard face triangulation. The face-local toric
// recomputation must agree with the flop formula on every triple it produces.
FlopReport flop(std::size_t face, std::size_t trapezoid);
// First trapezoid whose four corners are interior points of the face.
std::size_t interior_trapezoid();

}  // namespace tfib::intersection
