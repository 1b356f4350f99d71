#pragma once

#include "prsvd/matrix.hpp"

#include <cstdint>
#include <random>

namespace prsvd {

/// Seeded source of standard normal draws.
///
/// Uses std::mt19937_64 feeding std::normal_distribution (libstdc++ implements
/// the Marsaglia polar method). Sequences are reproducible for a fixed seed
/// within one build; bit-exactness across standard libraries is not promised.
/// Single-owner: do not share one stream between concurrent tasks.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  /// Number of normal variates drawn so far.
  std::uint64_t draws() const noexcept { return draws_; }

  double normal() {
    ++draws_;
    return normal_(engine_);
  }

private:
  std::uint64_t seed_;
  std::uint64_t draws_ = 0;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// rows x cols matrix of i.i.d. N(0,1) entries, filled in row-major order.
Matrix gaussian_matrix(std::size_t rows, std::size_t cols, RngStream &rng);

} // namespace prsvd
