#pragma once

#include "prsvd/filters.hpp"
#include "prsvd/matrix.hpp"
#include "prsvd/rng.hpp"

#include <cstddef>

namespace prsvd {

struct ApproxResult {
  Matrix a_hat; ///< Q (Q^T A), rank <= k
  Matrix q;     ///< n x k orthonormal basis of range(Y)
  std::size_t k = 0;
  double err_sq = 0.0; ///< ||A - a_hat||_F^2
};

/// Randomized SVD: Omega ~ N(0,1)^{d x k}, Y = A Omega, Q = qr(Y).Q,
/// A_hat = Q (Q^T A). Requires 1 <= k <= min(n, d); a numerically
/// rank-deficient Y surfaces as RankDeficientError.
ApproxResult rsvd(const Matrix &a, std::size_t k, RngStream &rng);

/// As rsvd with Y = chi(A) Omega. A_hat still projects the unfiltered A.
ApproxResult rsvd_filtered(const Matrix &a, std::size_t k, const FilterSpec &spec,
                           RngStream &rng,
                           PowerStabilization stabilization = PowerStabilization::Orthonormalize);

/// Same algorithm with a caller-supplied sketch matrix Omega (d x k).
ApproxResult rsvd_with_sketch(const Matrix &a, const Matrix &omega, const FilterSpec &spec,
                              PowerStabilization stabilization = PowerStabilization::Orthonormalize);

/// Only the error: ||A||_F^2 - ||Q^T A||_F^2, clamped at 0. Avoids forming
/// A_hat. `energy` is ||A||_F^2 if already known (pass a negative value to
/// have it computed).
double sketch_error(const Matrix &a, const Matrix &omega, const FilterSpec &spec,
                    double energy = -1.0,
                    PowerStabilization stabilization = PowerStabilization::Orthonormalize);

/// Variational form of the filtered algorithm: with Y = chi(A) Omega formed
/// densely (explicit powers of A A^T), returns Y B* where
/// B* = argmin_B ||A - Y B||_F = R^{-1} Q^T A from a Householder QR of Y.
Matrix least_squares_oracle(const Matrix &a, const Matrix &omega, const FilterSpec &spec);

struct NormCheckReport {
  double b_norm = 0.0; ///< ||B*||_2 for Y = A Omega
  double kappa = 0.0;  ///< sigma_max(A) / sigma_min(A)
  double bound = 0.0;  ///< 2 kappa / (sqrt(d) - sqrt(k))
  bool held = false;
};

/// Diagnostic comparison of the least-squares coefficient norm against
/// 2 kappa(A) / (sqrt(d) - sqrt(k)). The bound fails with small probability;
/// a failure is reported, not thrown. Requires k < d.
NormCheckReport solution_norm_check(const Matrix &a, const Matrix &omega, std::size_t k);

} // namespace prsvd
