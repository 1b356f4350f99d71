#pragma once

#include "prsvd/matrix.hpp"

#include <span>

namespace prsvd {

// OpenMP-parallel dense kernels. Every output entry is produced by exactly one
// thread with a fixed accumulation order, so results do not depend on the
// thread count. Serial references with the same contracts live in
// prsvd::reference and are kept for testing and benchmarking.

/// C = A * B.
Matrix matmul(const Matrix &a, const Matrix &b);
/// C = A^T * B.
Matrix matmul_tn(const Matrix &a, const Matrix &b);
/// C = A * B^T.
Matrix matmul_nt(const Matrix &a, const Matrix &b);

/// Sum of squared entries. Row partials are combined by pairwise summation.
double frobenius_sq(const Matrix &a);
double frobenius_norm(const Matrix &a);

/// A * diag(d): scales column j by d[j].
Matrix scale_columns(const Matrix &a, std::span<const double> d);

/// y += alpha * x, elementwise over matching shapes.
void axpy(double alpha, const Matrix &x, Matrix &y);

namespace reference {

Matrix matmul(const Matrix &a, const Matrix &b);
Matrix matmul_tn(const Matrix &a, const Matrix &b);
Matrix matmul_nt(const Matrix &a, const Matrix &b);
double frobenius_sq(const Matrix &a);

} // namespace reference

} // namespace prsvd
