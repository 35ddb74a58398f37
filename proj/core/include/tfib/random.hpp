#pragma once

#include <cstddef>
#include <random>

#include "tfib/lattice.hpp"

namespace tfib {

// Product of random elementary row operations and signed permutations; determinant is +1.
IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng, int steps = 12, long max_multiplier = 2);

}  // namespace tfib
