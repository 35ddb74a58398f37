#include <algorithm>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "tfib/chern.hpp"
#include "tfib/toric.hpp"

using namespace tfib;
using tfib::testing::kSeed;

namespace {

ChernChain single_vertex(const std::vector<LatticeVector>& outward) {
  ChernChain c;
  c.vertices.push_back({0, {}});
  for (std::size_t i = 0; i < outward.size(); ++i) {
    c.edges.push_back({static_cast<long>(i), {0, kLeg}, outward[i]});
    c.vertices[0].order.push_back(static_cast<long>(i));
  }
  return c;
}

bool has_code(const ChainReport& rep, const std::string& code) {
  return std::any_of(rep.violations.begin(), rep.violations.end(), [&](const Violation& v) { return v.code == code; });
}

}  // namespace

TEST_CASE("the pants chain in the sum-zero lattice validates") {
  // Basis (e1 - e2, e2 - e3) of N_{m0} for m0 = (1, 1, 1).
  auto c = single_vertex({{0, 1}, {-1, -1}, {1, 0}});
  c.lattice_basis = {{1, -1, 0}, {0, 1, -1}};
  CHECK(validate_chain(c).ok());
  const auto g = fibration_from_chain(c);
  REQUIRE(validate(g).ok());
  CHECK(census(g).count(FiberKind::T12) == 1);
}

TEST_CASE("chain violations") {
  CHECK(has_code(validate_chain(single_vertex({{2, 0}, {-1, 0}, {-1, 0}})), "PRIMITIVITY"));
  const auto collinear_zero = validate_chain(single_vertex({{1, 0}, {-1, 0}, {0, 0}}));
  CHECK(has_code(collinear_zero, "SPAN"));
  CHECK_FALSE(has_code(collinear_zero, "BOUNDARY"));
  const auto collinear = validate_chain(single_vertex({{1, 0}, {-1, 0}, {3, 0}}));
  CHECK(has_code(collinear, "SPAN"));
  CHECK(has_code(collinear, "BOUNDARY"));
  CHECK(has_code(validate_chain(single_vertex({{1, 0}, {0, 1}})), "NOT_TRIVALENT"));
  auto bad_basis = single_vertex({{1, 0}, {0, 1}, {-1, -1}});
  bad_basis.lattice_basis = {{2, 0, 0}, {0, 1, 0}};
  CHECK(has_code(validate_chain(bad_basis), "BASIS"));
  auto bad_order = single_vertex({{1, 0}, {0, 1}, {-1, -1}});
  bad_order.vertices[0].order = {0, 1, 1};
  CHECK(has_code(validate_chain(bad_order), "ORDER_MISMATCH"));
  CHECK_THROWS_AS(fibration_from_chain(bad_order), Error);
}

TEST_CASE("monodromy of a coefficient") {
  CHECK(monodromy_for_coefficient({1, 0}) == (IntMatrix{{1, 0, 1}, {0, 1, 0}, {0, 0, 1}}));
  CHECK(monodromy_for_coefficient({2, 3}) == (IntMatrix{{1, 0, 2}, {0, 1, 3}, {0, 0, 1}}));
  const auto c = single_vertex({{2, 3}, {-1, -1}, {-1, -2}});
  REQUIRE(validate_chain(c).ok());
  CHECK(monodromy_from_chain(c, 0) == (IntMatrix{{1, 0, 2}, {0, 1, 3}, {0, 0, 1}}));
  CHECK(monodromy_from_chain(c, 0, false) == (IntMatrix{{1, 0, -2}, {0, 1, -3}, {0, 0, 1}}));
  CHECK_THROWS_AS(monodromy_from_chain(c, 9), Error);
  CHECK_THROWS_AS(monodromy_from_chain(single_vertex({{0, 0}, {0, 0}, {0, 0}}), 0), Error);
}

TEST_CASE("Harvey-Lawson chain gives the standard (1,2) triple") {
  const auto g = fibration_from_chain(single_vertex({{1, 0}, {0, 1}, {-1, -1}}));
  REQUIRE(validate(g).ok());
  const auto m = vertex_loop_matrices(g, 0);
  CHECK(m == normal_form_tuple(FiberKind::T12));
  CHECK(census(g).count(FiberKind::T12) == 1);
}

TEST_CASE("two vertices sharing an edge") {
  ChernChain c;
  c.vertices = {{0, {0, 1, 2}}, {1, {2, 3, 4}}};
  c.edges = {{0, {0, kLeg}, {1, 0}},
             {1, {0, kLeg}, {0, 1}},
             {2, {0, 1}, {-1, -1}},
             {3, {1, kLeg}, {-1, 0}},
             {4, {1, kLeg}, {0, -1}}};
  REQUIRE(validate_chain(c).ok());
  const auto g = fibration_from_chain(c);
  REQUIRE(validate(g).ok());
  CHECK(census(g).count(FiberKind::T12) == 2);
  const auto at0 = vertex_loop_matrices(g, 0), at1 = vertex_loop_matrices(g, 1);
  CHECK(at0[2] == inverse_unimodular(at1[0]));
}

TEST_CASE("negation inverts every monodromy and keeps validity") {
  std::mt19937_64 rng(kSeed);
  for (int trial = 0; trial < 30; ++trial) {
    const auto c = chern_chain_from_triangulation(tfib::testing::random_triangulation(rng, 4));
    const auto n = negate(c);
    REQUIRE(validate_chain(n).ok());
    for (const auto& e : c.edges)
      CHECK(monodromy_from_chain(n, e.id) == inverse_unimodular(monodromy_from_chain(c, e.id)));
    CHECK(negate(n) == c);
  }
}

TEST_CASE("random valid chains synthesize valid all-(1,2) fibrations") {
  std::mt19937_64 rng(kSeed + 1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = chern_chain_from_triangulation(tfib::testing::random_triangulation(rng, 4));
    REQUIRE(validate_chain(c).ok());
    const auto g = fibration_from_chain(c);
    const auto rep = validate(g);
    REQUIRE(rep.ok());
    for (const auto& [id, p] : rep.profiles) CHECK(p.type.kind == FiberKind::T12);
    // The relation holds because outward coefficients sum to zero: the product is the monodromy of the sum.
    for (const auto& v : c.vertices) {
      LatticeVector sum{0, 0};
      for (long id : v.order)
        for (const auto& e : c.edges)
          if (e.id == id) {
            const int sign = e.ends[0] == v.id ? 1 : -1;
            sum[0] += sign * e.coeff[0];
            sum[1] += sign * e.coeff[1];
          }
      CHECK(sum == LatticeVector{0, 0});
      IntMatrix p = IntMatrix::identity(3);
      for (const auto& T : vertex_loop_matrices(g, v.id)) p = p * T;
      CHECK(p == monodromy_for_coefficient(sum));
    }
  }
}
