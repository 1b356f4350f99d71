#pragma once

#include "prsvd/matrix.hpp"

namespace prsvd {

/// Relative threshold on |R_jj| / ||Y||_F below which thin_qr reports rank
/// deficiency.
inline constexpr double kRankTolerance = 1e-12;

struct QrResult {
  Matrix q; ///< n x k, orthonormal columns
  Matrix r; ///< k x k, upper triangular with nonnegative diagonal
};

/// Householder thin QR of an n x k matrix with n >= k.
///
/// Signs are normalized so that diag(R) >= 0, which makes the factorization
/// unique for full-rank input. Throws RankDeficientError when some |R_jj|
/// falls below rank_tol * ||Y||_F; pass rank_tol = 0 to disable the check.
QrResult thin_qr(const Matrix &y, double rank_tol = kRankTolerance);

/// Solves R x = b for upper-triangular R, column by column of b.
Matrix solve_upper(const Matrix &r, const Matrix &b);

} // namespace prsvd
