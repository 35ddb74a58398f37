#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tfib/lattice.hpp"

namespace tfib {

enum class FiberKind {
  Nonsingular,
  T22,
  T21,
  T12,
  T11,
  I1_2D,
  SphereTr1,
  SphereTr3,
  NotWellBehaved,
};

std::string_view to_string(FiberKind kind);
std::optional<FiberKind> fiber_kind_from_string(std::string_view name);

// b1, b2 are -1 where undefined (2D kinds and sphere-type edges).
struct FiberType {
  FiberKind kind = FiberKind::NotWellBehaved;
  int b1 = -1;
  int b2 = -1;
  friend bool operator==(const FiberType&, const FiberType&) = default;
};

struct MonodromyRep {
  int dimension = 3;
  std::vector<IntMatrix> generators;
  std::string basis_label;
  friend bool operator==(const MonodromyRep&, const MonodromyRep&) = default;
};

struct VertexProfile {
  FiberType type;
  std::size_t valency = 0;
  // P with P^{-1} * presented[i] * P == normal_form[i] and det P == 1.
  IntMatrix basis_change;
  std::optional<Integer> parameter_a;
  // Tuple actually normalized: the input up to a cyclic rotation and, for T11, one braid move.
  std::vector<IntMatrix> presented;
  std::vector<IntMatrix> normal_form;
  std::size_t rotation = 0;
  bool braid_move = false;
};

// Normal forms keyed by kind; T11 takes the free parameter a.
std::vector<IntMatrix> normal_form_tuple(FiberKind kind, const Integer& a = 0);

FiberType classify_edge_2d(const IntMatrix& T);
FiberType classify_edge_3d(const IntMatrix& T);
FiberType fiber_type(const MonodromyRep& rep);
VertexProfile vertex_profile(const std::vector<IntMatrix>& ordered);
MonodromyRep dual_rep(const MonodromyRep& rep);

// Basis F (columns) in which every generator of a (1,1) group is upper unitriangular.
IntMatrix flag_basis(const std::vector<IntMatrix>& generators);

}  // namespace tfib
