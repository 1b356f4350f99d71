#pragma once

#include "prsvd/filters.hpp"
#include "prsvd/spectra.hpp"

#include <cstddef>
#include <optional>

namespace prsvd {

/// Solution of the asymptotic error equations.
struct Prediction {
  /// Predicted E||A - A_hat||_F^2.
  double theta_tilde = 0.0;
  /// Dual variable of the filtered equations; absent for the unfiltered solver.
  /// May be +inf when it exceeds the double range (see log_theta0).
  std::optional<double> theta0;
  std::optional<double> log_theta0;
  /// Defining-equation residual at the root, relative to the equation scale
  /// (1 for the unfiltered equation, m - k for the filtered one), recomputed
  /// with pairwise summation independent of the solver's running sums.
  double residual = 0.0;
  /// Filtered path only: relative mismatch of theta_tilde against an
  /// independent re-summation.
  double theta_residual = 0.0;
  int iterations = 0;
};

/// Solver limits shared by both root finders.
inline constexpr double kBracketRelWidth = 1e-14;
inline constexpr int kMaxIterations = 200;
inline constexpr double kResidualTolerance = 1e-10;

/// Unique Theta > 0 with sum_j sigma_j^2 / (Theta + k sigma_j^2) = 1.
/// Bracket [0, sum sigma^2], bisection then Newton polish. k = m returns 0.
Prediction solve_theta_tilde(const SpectralProfile &profile, std::size_t k);

/// Filtered equations:
///   sum_j 1 / (1 + theta0 chi(sigma_j)^2) = m - k
///   theta_tilde = sum_j sigma_j^2 / (1 + theta0 chi(sigma_j)^2)
/// Solved in log(theta0) so large filter degrees never overflow.
/// DomainError when fewer than k singular values survive the filter.
Prediction solve_filtered(const SpectralProfile &profile, std::size_t k, const FilterSpec &spec);

/// Closed form of the unfiltered equation for a two-level spectrum:
///   (1/2) (B + sqrt(B^2 + 4 a^2 b^2 k (m - k))),
///   B = (r - k) a^2 + (m - r - k) b^2.
/// Accepts a == b (uniform spectrum) as a degenerate case.
double bilevel_closed_form(std::size_t r, std::size_t m, double a, double b, std::size_t k);

/// Closed-form theta0 of the filtered equations for a two-level spectrum.
/// Requires k < m and chi(a), chi(b) nonzero.
double bilevel_filtered_theta0(std::size_t r, std::size_t m, double a, double b, std::size_t k,
                               const FilterSpec &spec);

/// r a^2 / (1 + theta0 chi(a)^2) + (m - r) b^2 / (1 + theta0 chi(b)^2) with
/// theta0 from bilevel_filtered_theta0; k = m gives 0.
double bilevel_filtered_closed_form(std::size_t r, std::size_t m, double a, double b,
                                    std::size_t k, const FilterSpec &spec);

/// Large-m asymptotic of the unfiltered prediction for sigma_i = i^{-alpha}:
///   k * (k sinc(pi / (2 alpha)))^{-2 alpha},  sinc(x) = sin(x) / x.
double powerlaw_asymptotic(double alpha, std::size_t k);

/// sum_{i=k+1}^{m} i^{-2 alpha}, the error of the infinite-degree power filter
/// on a power-law spectrum; summed from i = m downward.
double powerlaw_filtered_limit(double alpha, std::size_t k, std::size_t m);

} // namespace prsvd
