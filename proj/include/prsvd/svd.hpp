#pragma once

#include "prsvd/matrix.hpp"

#include <vector>

namespace prsvd {

/// Thin SVD A = U * diag(sigma) * V with p = min(n, d).
///
/// Follows the A = U Sigma V convention: `v` holds the right singular vectors
/// as rows (p x d), not as columns.
struct SvdResult {
  Matrix u;                 ///< n x p
  std::vector<double> sigma; ///< length p, non-increasing, nonnegative
  Matrix v;                 ///< p x d
};

/// Backed by Eigen's BDCSVD (divide and conquer over a bidiagonal reduction).
/// A non-successful solver state raises ConvergenceError.
SvdResult svd(const Matrix &a);

/// Singular values only.
std::vector<double> singular_values(const Matrix &a);

} // namespace prsvd
