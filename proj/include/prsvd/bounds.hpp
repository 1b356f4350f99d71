#pragma once

#include "prsvd/filters.hpp"
#include "prsvd/spectra.hpp"

#include <cstddef>
#include <optional>

namespace prsvd {

/// Bounds for one (profile, k, r) combination, as printed by the CLI.
struct BoundReport {
  std::size_t k = 0;
  std::size_t r = 0;
  std::size_t m = 0;
  double lower = 0.0;
  std::optional<double> halko_tropp;
  std::optional<double> prop1;
  std::optional<double> prop1_best;
  std::optional<std::size_t> prop1_best_r;
  std::optional<double> prop2;
};

/// sum_{j>k} sigma_j^2, the optimal rank-k error. Requires k <= m.
double eckart_young_lower(const SpectralProfile &profile, std::size_t k);

/// (1 + r / (k - r - 1)) sum_{j>r} sigma_j^2. Requires r < k - 1.
double halko_tropp_upper(const SpectralProfile &profile, std::size_t k, std::size_t r);

/// C(k, r, m) = (m - k) k / ((m - r)(k - r)).
double prop1_constant(std::size_t k, std::size_t r, std::size_t m);

/// C(k, r, m) sum_{j>r} sigma_j^2. Requires r < k <= m.
double prop1_upper(const SpectralProfile &profile, std::size_t k, std::size_t r);

struct BestBound {
  double value = 0.0;
  std::size_t r = 0;
};

/// Minimum of prop1_upper over r = 0..k-1 (exhaustive; the first minimizer
/// wins ties).
BestBound prop1_best(const SpectralProfile &profile, std::size_t k);

/// sum_{j>r} sigma_j^2
///   + (C/k) sum_{j<=r} sigma_j^2 / chi(sigma_j)^2 * sum_{j>r} chi(sigma_j)^2.
/// chi^2 ratios are formed in log space. Requires r < k and chi != 0 on the
/// first r values.
double prop2_upper(const SpectralProfile &profile, std::size_t k, std::size_t r,
                   const FilterSpec &spec);

/// Everything that applies for the given (k, r, spec): halko_tropp only when
/// r < k - 1, prop2 only when spec is given.
BoundReport bound_report(const SpectralProfile &profile, std::size_t k, std::size_t r,
                         const std::optional<FilterSpec> &spec = std::nullopt);

} // namespace prsvd
