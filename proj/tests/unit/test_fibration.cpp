#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "support.hpp"
#include "tfib/fibration.hpp"
#include "tfib/random.hpp"
#include "tfib/toric.hpp"

using namespace tfib;
using tfib::testing::kSeed;
using tfib::testing::regauge;

namespace {

const IntMatrix kE13{{1, 0, 1}, {0, 1, 0}, {0, 0, 1}};
const IntMatrix kE23{{1, 0, 0}, {0, 1, 1}, {0, 0, 1}};
const IntMatrix kInv{{1, 0, -1}, {0, 1, -1}, {0, 0, 1}};

// One vertex at id 0 whose legs carry the tuple in order.
FibrationGraph ball_vertex(const std::vector<IntMatrix>& tuple) {
  FibrationGraph g;
  g.base = Base::Ball3;
  GraphVertex v{0, {}};
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    v.loops.push_back({static_cast<long>(i), 1});
    g.edges.push_back({static_cast<long>(i), {0, kLeg}, tuple[i], IntMatrix::identity(3)});
  }
  g.vertices.push_back(v);
  return g;
}

// Two vertices joined by three parallel edges.
FibrationGraph theta_graph() {
  FibrationGraph g;
  g.vertices.push_back({0, {{0, 1}, {1, 1}, {2, 1}}});
  g.vertices.push_back({1, {{0, -1}, {1, -1}, {2, -1}}});
  const std::vector<IntMatrix> m{kE13, kE23, kInv};
  for (long i = 0; i < 3; ++i) g.edges.push_back({i, {0, 1}, m[static_cast<std::size_t>(i)], IntMatrix::identity(3)});
  return g;
}

bool has_code(const ValidationReport& rep, const std::string& code) {
  return std::any_of(rep.violations.begin(), rep.violations.end(), [&](const Violation& v) { return v.code == code; });
}

struct Surface {
  long vertices, genus, punctures;
  auto operator<=>(const Surface&) const = default;
};

// Spanning forest by depth-first search over same-kind trivalent vertices; non-tree edges count genus.
std::vector<Surface> spanning_tree_oracle(const FibrationGraph& g, const FiberCensus& c) {
  std::map<long, FiberKind> kind;
  for (const auto& [id, p] : c.profiles)
    if (p.type.kind == FiberKind::T12 || p.type.kind == FiberKind::T21) kind[id] = p.type.kind;
  std::map<long, std::vector<std::size_t>> adj;
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    for (long end : g.edges[i].ends)
      if (kind.count(end)) adj[end].push_back(i);
  std::map<long, int> comp;
  std::vector<Surface> out;
  std::set<std::size_t> tree;
  for (const auto& [root, k] : kind) {
    if (comp.count(root)) continue;
    const int id = static_cast<int>(out.size());
    Surface s{0, 0, 0};
    std::vector<long> stack{root};
    comp[root] = id;
    std::set<std::size_t> internal;
    while (!stack.empty()) {
      const long u = stack.back();
      stack.pop_back();
      ++s.vertices;
      for (std::size_t i : adj[u]) {
        const auto& e = g.edges[i];
        const long w = e.ends[0] == u ? e.ends[1] : e.ends[0];
        if (w == kLeg || !kind.count(w) || kind[w] != k) {
          ++s.punctures;
          continue;
        }
        internal.insert(i);
        if (!comp.count(w)) {
          comp[w] = id;
          tree.insert(i);
          stack.push_back(w);
        }
      }
    }
    for (std::size_t i : internal)
      if (!tree.count(i)) ++s.genus;
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("single trivalent vertex validates and counts") {
  const auto g = ball_vertex({kE13, kE23, kInv});
  const auto rep = validate(g);
  CHECK(rep.ok());
  const auto c = census(g);
  CHECK(c.count(FiberKind::T12) == 1);
  CHECK(euler_characteristic(g) == 1);
  const auto stats = critical_surface_stats(g);
  REQUIRE(stats.size() == 1);
  CHECK(stats[0].genus == 0);
  CHECK(stats[0].punctures == 3);
  CHECK(census(dualize(g)).count(FiberKind::T21) == 1);
}

TEST_CASE("relation violation is reported with its vertex") {
  const auto g = ball_vertex({kE13, kE23, kInv * kInv});
  const auto rep = validate(g);
  REQUIRE_FALSE(rep.ok());
  const auto it = std::find_if(rep.violations.begin(), rep.violations.end(),
                               [](const Violation& v) { return v.code == "RELATION_VIOLATED"; });
  REQUIRE(it != rep.violations.end());
  CHECK(it->subject == "vertex");
  CHECK(it->id == 0);
  CHECK_THROWS_AS(dualize(g), Error);
  CHECK_THROWS_AS(euler_characteristic(g), Error);
}

TEST_CASE("structural violations") {
  auto g = ball_vertex({kE13, kE23, kInv});
  g.edges[0].ends[1] = 7;
  CHECK(has_code(validate(g), "UNKNOWN_VERTEX"));

  g = ball_vertex({kE13, kE23, kInv});
  g.vertices[0].loops[1].exponent = 2;
  CHECK(has_code(validate(g), "BAD_EXPONENT"));

  g = ball_vertex({kE13, kE23, kInv});
  g.vertices[0].loops.pop_back();
  CHECK(has_code(validate(g), "LOOP_WORD_MISMATCH"));

  g = ball_vertex({kE13, kE23, kInv});
  g.edges[0].monodromy = IntMatrix{{1, 2, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(has_code(validate(g), "EDGE_NOT_T22"));

  g = ball_vertex({kE13, kE23, kInv});
  g.edges[1].transport = IntMatrix{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(has_code(validate(g), "NOT_UNIMODULAR"));

  g = ball_vertex({kE13, kE23, kInv});
  g.edges.push_back(g.edges.front());
  CHECK(has_code(validate(g), "DUPLICATE_ID"));

  g = ball_vertex({kE13, kE23, kInv});
  g.edges.push_back({9, {kLeg, kLeg}, kE13, IntMatrix::identity(3)});
  CHECK(has_code(validate(g), "DETACHED_EDGE"));
}

TEST_CASE("single-vertex ball models report their tuple type") {
  std::mt19937_64 rng(kSeed);
  for (FiberKind kind : {FiberKind::T12, FiberKind::T21, FiberKind::T11}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto g = ball_vertex(tfib::testing::random_conjugate(normal_form_tuple(kind, trial - 5), rng));
      const auto c = census(g);
      CHECK(c.count(kind) == 1);
      std::size_t total = 0;
      for (const auto& [k, n] : c.counts) total += n;
      CHECK(total == 1);
    }
  }
}

TEST_CASE("a two-valent vertex is rejected by the valency rule") {
  CHECK(has_code(validate(ball_vertex(normal_form_tuple(FiberKind::T22))), "VALENCY_MISMATCH"));
}

TEST_CASE("empty graph") {
  const FibrationGraph g;
  CHECK(validate(g).ok());
  CHECK(euler_characteristic(g) == 0);
  const auto c = census(g);
  for (const auto& [k, n] : c.counts) CHECK(n == 0);
  CHECK(critical_surface_stats(g).empty());
}

TEST_CASE("theta graph") {
  const auto g = theta_graph();
  REQUIRE(validate(g).ok());
  const auto stats = critical_surface_stats(g);
  REQUIRE(stats.size() == 1);
  CHECK(stats[0].genus == 2);
  CHECK(stats[0].punctures == 0);
  CHECK(euler_characteristic(g) == 2);
  // Every edge fixes e1.
  CHECK_FALSE(is_simply_connected(g));
}

TEST_CASE("simple connectivity needs a closed base") {
  CHECK_THROWS_AS(is_simply_connected(ball_vertex({kE13, kE23, kInv})), Error);
}

TEST_CASE("transport reads the monodromy in the far frame") {
  std::mt19937_64 rng(kSeed + 1);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = theta_graph();
    const IntMatrix G = random_unimodular(3, rng);
    // Re-gauge vertex 1: every edge transport picks up G.
    for (auto& e : g.edges) e.transport = G * e.transport;
    CHECK(validate(g).ok());
    const auto at1 = vertex_loop_matrices(g, 1);
    CHECK(at1[0] == G * inverse_unimodular(kE13) * inverse_unimodular(G));
    CHECK(census(g).count(FiberKind::T12) == 2);
  }
}

TEST_CASE("dualize is an involution that negates the Euler characteristic") {
  std::mt19937_64 rng(kSeed + 2);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<FibrationGraph> parts, plain;
    for (int i = 0; i < 2; ++i) {
      auto part = local_fibration(tfib::testing::random_triangulation(rng, 3));
      if (tfib::testing::random_long(rng, 0, 1)) part = dualize(part);
      plain.push_back(part);
      for (const auto& v : part.vertices) regauge(part, v.id, random_unimodular(3, rng));
      parts.push_back(part);
    }
    const auto g = tfib::testing::disjoint_union(parts);
    REQUIRE(validate(g).ok());
    const auto ungauged = tfib::testing::disjoint_union(plain);
    CHECK(census(ungauged).counts == census(g).counts);
    CHECK(critical_surface_stats(ungauged).size() == critical_surface_stats(g).size());
    const auto d = dualize(g);
    CHECK(validate(d).ok());
    CHECK(dualize(d) == g);
    CHECK(euler_characteristic(d) == -euler_characteristic(g));
    const auto c = census(g), cd = census(d);
    CHECK(c.count(FiberKind::T12) == cd.count(FiberKind::T21));
    CHECK(c.count(FiberKind::T21) == cd.count(FiberKind::T12));
  }
}

TEST_CASE("critical surface genus equals the spanning-tree cycle rank") {
  std::mt19937_64 rng(kSeed + 3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<FibrationGraph> parts;
    const long count = tfib::testing::random_long(rng, 1, 3);
    for (long i = 0; i < count; ++i) {
      auto part = local_fibration(tfib::testing::random_triangulation(rng, 4));
      if (tfib::testing::random_long(rng, 0, 1)) part = dualize(part);
      parts.push_back(part);
    }
    const auto g = tfib::testing::disjoint_union(parts);
    const auto c = census(g);
    std::vector<Surface> got;
    for (const auto& s : critical_surface_stats(g))
      got.push_back({static_cast<long>(s.vertices.size()), s.genus, s.punctures});
    std::sort(got.begin(), got.end());
    CHECK(got == spanning_tree_oracle(g, c));
  }
}

TEST_CASE("dot export labels vertices by fiber type") {
  const auto dot = to_dot(ball_vertex({kE13, kE23, kInv}));
  CHECK(dot.find("graph fibration {") == 0);
  CHECK(dot.find("0:T12") != std::string::npos);
  CHECK(dot.find("[shape=point]") != std::string::npos);
}
