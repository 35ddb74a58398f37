#include "tfib/random.hpp"

namespace tfib {

IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng, int steps, long max_multiplier) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "random_unimodular needs n >= 1");
  IntMatrix M = IntMatrix::identity(n);
  if (n == 1) return M;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<long> mult(-max_multiplier, max_multiplier);
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    while (j == i) j = pick(rng);
    if (rng() % 4 == 0) {
      // Rotation by a quarter turn in the (i, j) plane keeps determinant +1.
      for (std::size_t c = 0; c < n; ++c) {
        const Integer a = M(i, c);
        M(i, c) = -M(j, c);
        M(j, c) = a;
      }
    } else {
      const long k = mult(rng);
      for (std::size_t c = 0; c < n; ++c) M(i, c) += k * M(j, c);
    }
  }
  return M;
}

}  // namespace tfib
