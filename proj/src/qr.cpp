#include "prsvd/qr.hpp"

#include "prsvd/errors.hpp"
#include "prsvd/kernels.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace prsvd {
namespace {

// Applies (I - tau v v^T) to rows [j, n) and columns [c0, c1) of w, where v
// has an implicit unit leading entry and its tail stored in column j of
// `reflectors` below the diagonal.
void apply_reflector(const Matrix &reflectors, std::size_t j, double tau, Matrix &w,
                     std::size_t c0, std::size_t c1) {
  if (tau == 0.0 || c0 >= c1) {
    return;
  }
  const std::size_t n = w.rows();
  const std::size_t width = c1 - c0;
  std::vector<double> dot(width, 0.0);

  {
    auto head = w.row(j);
    for (std::size_t c = 0; c < width; ++c) {
      dot[c] = head[c0 + c];
    }
  }
  for (std::size_t i = j + 1; i < n; ++i) {
    const double vi = reflectors(i, j);
    if (vi == 0.0) {
      continue;
    }
    const double *row = w.row(i).data() + c0;
    for (std::size_t c = 0; c < width; ++c) {
      dot[c] += vi * row[c];
    }
  }
  for (double &d : dot) {
    d *= tau;
  }

  const auto first = static_cast<std::ptrdiff_t>(j);
  const auto last = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = first; i < last; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const double vi = ui == j ? 1.0 : reflectors(ui, j);
    if (vi == 0.0) {
      continue;
    }
    double *row = w.row(ui).data() + c0;
    for (std::size_t c = 0; c < width; ++c) {
      row[c] -= vi * dot[c];
    }
  }
}

} // namespace

QrResult thin_qr(const Matrix &y, double rank_tol) {
  const std::size_t n = y.rows();
  const std::size_t k = y.cols();
  if (k == 0 || n < k) {
    throw DomainError("thin_qr: need n >= k >= 1, got " + std::to_string(n) + "x" +
                      std::to_string(k));
  }
  if (!y.all_finite()) {
    throw DomainError("thin_qr: input has non-finite entries");
  }
  const double ynorm = frobenius_norm(y);

  Matrix w = y;
  std::vector<double> tau(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    const double alpha = w(j, j);
    double scale = 0.0;
    for (std::size_t i = j + 1; i < n; ++i) {
      scale = std::max(scale, std::abs(w(i, j)));
    }
    double tail = 0.0;
    if (scale > 0.0) {
      for (std::size_t i = j + 1; i < n; ++i) {
        const double t = w(i, j) / scale;
        tail += t * t;
      }
      tail = scale * std::sqrt(tail);
    }
    if (tail == 0.0) {
      tau[j] = 0.0;
      continue;
    }
    const double beta = -std::copysign(std::hypot(alpha, tail), alpha);
    tau[j] = (beta - alpha) / beta;
    const double inv = 1.0 / (alpha - beta);
    for (std::size_t i = j + 1; i < n; ++i) {
      w(i, j) *= inv;
    }
    w(j, j) = beta;
    apply_reflector(w, j, tau[j], w, j + 1, k);
  }

  QrResult out{Matrix::identity(n, k), Matrix(k, k)};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      out.r(i, j) = w(i, j);
    }
  }
  for (std::size_t jj = k; jj-- > 0;) {
    apply_reflector(w, jj, tau[jj], out.q, jj, k);
  }

  for (std::size_t j = 0; j < k; ++j) {
    if (out.r(j, j) < 0.0) {
      for (std::size_t c = j; c < k; ++c) {
        out.r(j, c) = -out.r(j, c);
      }
      for (std::size_t i = 0; i < n; ++i) {
        out.q(i, j) = -out.q(i, j);
      }
    }
    if (rank_tol > 0.0 && !(out.r(j, j) > rank_tol * ynorm)) {
      throw RankDeficientError("thin_qr: rank deficient at column " + std::to_string(j) +
                                   " (|R_jj| = " + std::to_string(out.r(j, j)) +
                                   ", ||Y||_F = " + std::to_string(ynorm) + ")",
                               j);
    }
  }
  return out;
}

Matrix solve_upper(const Matrix &r, const Matrix &b) {
  const std::size_t k = r.rows();
  if (r.cols() != k || b.rows() != k) {
    throw DomainError("solve_upper: shape mismatch");
  }
  Matrix x = b;
  const std::size_t p = b.cols();
  for (std::size_t i = k; i-- > 0;) {
    const double diag = r(i, i);
    if (diag == 0.0) {
      throw RankDeficientError("solve_upper: zero pivot at row " + std::to_string(i), i);
    }
    auto xi = x.row(i);
    for (std::size_t l = i + 1; l < k; ++l) {
      const double ril = r(i, l);
      const auto xl = x.row(l);
      for (std::size_t c = 0; c < p; ++c) {
        xi[c] -= ril * xl[c];
      }
    }
    for (std::size_t c = 0; c < p; ++c) {
      xi[c] /= diag;
    }
  }
  return x;
}

} // namespace prsvd
