#include "prsvd/kernels.hpp"

#include "prsvd/errors.hpp"
#include "prsvd/summation.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace prsvd {
namespace {

constexpr std::size_t kRowBlock = 32;
constexpr std::size_t kDepthBlock = 128;
constexpr std::size_t kColBlock = 512;

void require(bool ok, const char *op, const Matrix &a, const Matrix &b) {
  if (!ok) {
    throw DomainError(std::string(op) + ": nonconformable shapes " + std::to_string(a.rows()) +
                      "x" + std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                      std::to_string(b.cols()));
  }
}

} // namespace

Matrix matmul(const Matrix &a, const Matrix &b) {
  require(a.cols() == b.rows(), "matmul", a, b);
  const std::size_t n = a.rows();
  const std::size_t depth = a.cols();
  const std::size_t p = b.cols();
  Matrix c(n, p);
  const double *A = a.data();
  const double *B = b.data();
  double *C = c.data();
  const auto row_blocks = static_cast<std::ptrdiff_t>((n + kRowBlock - 1) / kRowBlock);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t rb = 0; rb < row_blocks; ++rb) {
    const std::size_t i0 = static_cast<std::size_t>(rb) * kRowBlock;
    const std::size_t i1 = std::min(n, i0 + kRowBlock);
    for (std::size_t k0 = 0; k0 < depth; k0 += kDepthBlock) {
      const std::size_t k1 = std::min(depth, k0 + kDepthBlock);
      for (std::size_t j0 = 0; j0 < p; j0 += kColBlock) {
        const std::size_t j1 = std::min(p, j0 + kColBlock);
        for (std::size_t i = i0; i < i1; ++i) {
          double *crow = C + i * p;
          const double *arow = A + i * depth;
          for (std::size_t kk = k0; kk < k1; ++kk) {
            const double aik = arow[kk];
            const double *brow = B + kk * p;
            for (std::size_t j = j0; j < j1; ++j) {
              crow[j] += aik * brow[j];
            }
          }
        }
      }
    }
  }
  return c;
}

Matrix matmul_tn(const Matrix &a, const Matrix &b) {
  require(a.rows() == b.rows(), "matmul_tn", a, b);
  const std::size_t depth = a.rows();
  const std::size_t n = a.cols();
  const std::size_t p = b.cols();
  Matrix c(n, p);
  const double *A = a.data();
  const double *B = b.data();
  double *C = c.data();
  const auto row_blocks = static_cast<std::ptrdiff_t>((n + kRowBlock - 1) / kRowBlock);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t rb = 0; rb < row_blocks; ++rb) {
    const std::size_t i0 = static_cast<std::size_t>(rb) * kRowBlock;
    const std::size_t i1 = std::min(n, i0 + kRowBlock);
    for (std::size_t k0 = 0; k0 < depth; k0 += kDepthBlock) {
      const std::size_t k1 = std::min(depth, k0 + kDepthBlock);
      for (std::size_t j0 = 0; j0 < p; j0 += kColBlock) {
        const std::size_t j1 = std::min(p, j0 + kColBlock);
        for (std::size_t i = i0; i < i1; ++i) {
          double *crow = C + i * p;
          for (std::size_t kk = k0; kk < k1; ++kk) {
            const double aki = A[kk * n + i];
            const double *brow = B + kk * p;
            for (std::size_t j = j0; j < j1; ++j) {
              crow[j] += aki * brow[j];
            }
          }
        }
      }
    }
  }
  return c;
}

Matrix matmul_nt(const Matrix &a, const Matrix &b) {
  require(a.cols() == b.cols(), "matmul_nt", a, b);
  return matmul(a, b.transpose());
}

double frobenius_sq(const Matrix &a) {
  const auto n = static_cast<std::ptrdiff_t>(a.rows());
  const std::size_t cols = a.cols();
  std::vector<double> partial(a.rows(), 0.0);
  const double *A = a.data();

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double *row = A + static_cast<std::size_t>(i) * cols;
    double s = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      s += row[j] * row[j];
    }
    partial[static_cast<std::size_t>(i)] = s;
  }
  return pairwise_sum(partial);
}

double frobenius_norm(const Matrix &a) { return std::sqrt(frobenius_sq(a)); }

Matrix scale_columns(const Matrix &a, std::span<const double> d) {
  if (d.size() != a.cols()) {
    throw DomainError("scale_columns: length mismatch");
  }
  Matrix out = a;
  const auto n = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    auto row = out.row(static_cast<std::size_t>(i));
    for (std::size_t j = 0; j < row.size(); ++j) {
      row[j] *= d[j];
    }
  }
  return out;
}

void axpy(double alpha, const Matrix &x, Matrix &y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw DomainError("axpy: shape mismatch");
  }
  const double *X = x.data();
  double *Y = y.data();
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    Y[i] += alpha * X[i];
  }
}

} // namespace prsvd
