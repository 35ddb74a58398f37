#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <random>
#include <vector>

#include "tfib/fibration.hpp"
#include "tfib/lattice.hpp"
#include "tfib/monodromy.hpp"
#include "tfib/toric.hpp"

namespace tfib::testing {

inline constexpr std::uint64_t kSeed = 20240101;

using Point2 = std::array<long, 2>;

long random_long(std::mt19937_64& rng, long lo, long hi);
IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long lo, long hi);

// All lattice points of the hull of random points in [0, box]^2, sorted lexicographically.
std::vector<Point2> random_polygon(std::mt19937_64& rng, long box, std::size_t seeds = 5);
// Placing triangulation of every point in lexicographic order at height 1 with m0 = (0, 0, 1).
Triangulation placing_triangulation(const std::vector<Point2>& points);
Triangulation random_flips(const Triangulation& t, std::mt19937_64& rng, std::size_t count);
// Placing triangulation of a random polygon followed by random flips.
Triangulation random_triangulation(std::mt19937_64& rng, long box = 4);

// Random conjugate of a normal-form tuple; the conjugator is returned through p when given.
std::vector<IntMatrix> random_conjugate(const std::vector<IntMatrix>& tuple, std::mt19937_64& rng,
                                        IntMatrix* p = nullptr);
MonodromyRep random_unipotent_rep(std::mt19937_64& rng);

// Cofactor expansion; the oracle never shares code with the Bareiss/SNF paths.
Integer naive_det(const std::vector<std::vector<Integer>>& m);
// Determinantal divisor: gcd of all k x k minors.
Integer minor_gcd(const IntMatrix& A, std::size_t k);

// Changes the frame at one vertex by G; every reading at other vertices is unchanged.
void regauge(FibrationGraph& g, long v, const IntMatrix& G);

// Vertex and edge ids of later graphs are shifted so the union is disjoint.
FibrationGraph disjoint_union(const std::vector<FibrationGraph>& parts);

}  // namespace tfib::testing

// Chart maps of the quintic evaluated on representatives in Z^5, independent of the library matrices.
namespace tfib::testing::charts {

using Vec5 = std::array<long, 5>;

// T_ij: x -> sum over k outside {i, j} of (x_k - x_j)(e_k* - e_i*), as a functional.
Vec5 chart(int i, int j, const Vec5& x);
// Preimage under T_ij of a functional vanishing on e_j and the all-ones vector, with x_i = x_j = 0.
Vec5 chart_inverse(int i, int j, const Vec5& phi);
Vec5 unit(int a);
// T_ij,k = T_lj^{-1} T_mj T_mi^{-1} T_li evaluated on a representative.
Vec5 composite(int i, int j, int l, int m, const Vec5& x);
// Equal in N_l = Z^5 / <e_l, sum e>: the difference is constant off l.
bool same_class(int l, const Vec5& a, const Vec5& b);
LatticeVector to_lattice(const Vec5& v);
// The two indices outside {i, j, k}, ascending.
std::array<int, 2> complement(int i, int j, int k);

}  // namespace tfib::testing::charts
