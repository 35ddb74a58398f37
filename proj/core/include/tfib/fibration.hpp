#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "tfib/lattice.hpp"
#include "tfib/monodromy.hpp"

namespace tfib {

// Endpoint marker for Borel-Moore legs.
inline constexpr long kLeg = -1;

enum class Base { Sphere3, Ball3 };

std::string_view to_string(Base base);

struct LoopLetter {
  long edge = 0;
  int exponent = 1;
  friend bool operator==(const LoopLetter&, const LoopLetter&) = default;
};

struct GraphVertex {
  long id = 0;
  std::vector<LoopLetter> loops;
  friend bool operator==(const GraphVertex&, const GraphVertex&) = default;
};

// monodromy is expressed in the frame of ends[0]; transport carries that frame to
// the frame of ends[1], where the same loop reads transport * monodromy * transport^{-1}.
struct GraphEdge {
  long id = 0;
  std::array<long, 2> ends{kLeg, kLeg};
  IntMatrix monodromy = IntMatrix::identity(3);
  IntMatrix transport = IntMatrix::identity(3);
  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

struct FibrationGraph {
  Base base = Base::Sphere3;
  std::vector<GraphVertex> vertices;
  std::vector<GraphEdge> edges;
  friend bool operator==(const FibrationGraph&, const FibrationGraph&) = default;
};

struct Violation {
  std::string code;
  std::string subject;  // "vertex" or "edge"
  long id = 0;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::map<long, VertexProfile> profiles;
  bool ok() const { return violations.empty(); }
};

struct FiberCensus {
  std::map<FiberKind, std::size_t> counts;
  std::map<long, VertexProfile> profiles;
  std::size_t count(FiberKind kind) const;
};

struct CriticalSurface {
  FiberKind kind = FiberKind::T21;
  std::vector<long> vertices;
  long internal_edges = 0;
  long genus = 0;
  long punctures = 0;
};

// Ordered local monodromies (exponents applied) around a vertex, in that vertex's frame.
std::vector<IntMatrix> vertex_loop_matrices(const FibrationGraph& g, long vertex_id);

ValidationReport validate(const FibrationGraph& g);
FibrationGraph dualize(const FibrationGraph& g);
FiberCensus census(const FibrationGraph& g);
long euler_characteristic(const FibrationGraph& g);
// Edge monodromies moved into one frame per component, plus frame holonomies around cycles.
std::vector<IntMatrix> global_monodromy_generators(const FibrationGraph& g);
bool is_simply_connected(const FibrationGraph& g);
std::vector<CriticalSurface> critical_surface_stats(const FibrationGraph& g);

std::string to_dot(const FibrationGraph& g);

}  // namespace tfib
