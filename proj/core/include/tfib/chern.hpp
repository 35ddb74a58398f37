#pragma once

#include <array>
#include <vector>

#include "tfib/fibration.hpp"
#include "tfib/lattice.hpp"

namespace tfib {

// Coefficient of the edge oriented ends[0] -> ends[1], in coordinates of the lattice basis.
struct ChainEdge {
  long id = 0;
  std::array<long, 2> ends{kLeg, kLeg};
  LatticeVector coeff;
  friend bool operator==(const ChainEdge&, const ChainEdge&) = default;
};

struct ChainVertex {
  long id = 0;
  std::vector<long> order;  // cyclic order of incident edge ids
  friend bool operator==(const ChainVertex&, const ChainVertex&) = default;
};

struct ChernChain {
  // Ambient vectors naming (e1, e2); empty means the standard rank-2 lattice.
  std::vector<LatticeVector> lattice_basis;
  std::vector<ChainVertex> vertices;
  std::vector<ChainEdge> edges;
  friend bool operator==(const ChernChain&, const ChernChain&) = default;
};

struct ChainReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ChainReport validate_chain(const ChernChain& c);
IntMatrix monodromy_for_coefficient(const LatticeVector& coeff);
IntMatrix monodromy_from_chain(const ChernChain& c, long edge_id, bool forward = true);
FibrationGraph fibration_from_chain(const ChernChain& c);
ChernChain negate(const ChernChain& c);

}  // namespace tfib
