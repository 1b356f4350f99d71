// Serial triple-loop kernels. Deliberately unblocked: they are the yardstick
// for the parallel versions in kernels.cpp.
#include "prsvd/errors.hpp"
#include "prsvd/kernels.hpp"

namespace prsvd::reference {

Matrix matmul(const Matrix &a, const Matrix &b) {
  if (a.cols() != b.rows()) {
    throw DomainError("reference::matmul: nonconformable shapes");
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        s += a(i, k) * b(k, j);
      }
      c(i, j) = s;
    }
  }
  return c;
}

Matrix matmul_tn(const Matrix &a, const Matrix &b) {
  if (a.rows() != b.rows()) {
    throw DomainError("reference::matmul_tn: nonconformable shapes");
  }
  Matrix c(a.cols(), b.cols());
  for (std::size_t i = 0; i < a.cols(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.rows(); ++k) {
        s += a(k, i) * b(k, j);
      }
      c(i, j) = s;
    }
  }
  return c;
}

Matrix matmul_nt(const Matrix &a, const Matrix &b) {
  if (a.cols() != b.cols()) {
    throw DomainError("reference::matmul_nt: nonconformable shapes");
  }
  Matrix c(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.rows(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        s += a(i, k) * b(j, k);
      }
      c(i, j) = s;
    }
  }
  return c;
}

double frobenius_sq(const Matrix &a) {
  double s = 0.0;
  for (double v : a.values()) {
    s += v * v;
  }
  return s;
}

} // namespace prsvd::reference
