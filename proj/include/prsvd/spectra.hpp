#pragma once

#include "prsvd/matrix.hpp"
#include "prsvd/rng.hpp"

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace prsvd {

/// Strictly positive singular values, non-increasing. size() is the rank m.
class SpectralProfile {
public:
  /// Validates ordering and positivity; throws DomainError otherwise.
  explicit SpectralProfile(std::vector<double> sigmas);
  /// Sorts into non-increasing order before validating.
  static SpectralProfile from_unsorted(std::vector<double> sigmas);

  std::size_t size() const noexcept { return sigmas_.size(); }
  double operator[](std::size_t i) const noexcept { return sigmas_[i]; }
  std::span<const double> values() const noexcept { return sigmas_; }

  /// sum_j sigma_j^2
  double energy() const;
  /// sum_{j >= from} sigma_j^2 with 0-based `from`; summed smallest first.
  double tail_energy(std::size_t from) const;

  /// c * sigma
  SpectralProfile scaled(double c) const;

  friend bool operator==(const SpectralProfile &, const SpectralProfile &) = default;

private:
  std::vector<double> sigmas_;
};

/// r copies of a followed by m - r copies of b.
SpectralProfile bilevel_profile(std::size_t r, std::size_t m, double a, double b);
/// sigma_i = i^{-alpha}, i = 1..m.
SpectralProfile powerlaw_profile(double alpha, std::size_t m);
/// m copies of s. Not one of the studied ensembles; the uniform spectrum has
/// the closed-form prediction (m - k) s^2 and serves as a test oracle.
SpectralProfile uniform_profile(double s, std::size_t m);

/// One positive decimal per line; blank lines and '#' comments ignored.
/// Values are sorted non-increasing. ParseError names the offending line.
SpectralProfile load_profile(const std::filesystem::path &path);

/// A = U diag(sigma) V with stored orthonormal factors.
struct SyntheticMatrix {
  Matrix a;                ///< n x d
  Matrix u;                ///< n x m, orthonormal columns
  Matrix v;                ///< m x d, orthonormal rows
  SpectralProfile profile;
};

/// U is the Q factor of an n x m Gaussian, V the transposed Q factor of a
/// d x m Gaussian (drawn in that order from rng).
SyntheticMatrix synthesize_matrix(const SpectralProfile &profile, std::size_t n, std::size_t d,
                                  RngStream &rng);

} // namespace prsvd
