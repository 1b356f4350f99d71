#include "prsvd/rsvd.hpp"

#include "prsvd/errors.hpp"
#include "prsvd/kernels.hpp"
#include "prsvd/qr.hpp"
#include "prsvd/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace prsvd {
namespace {

void check_sketch_size(const Matrix &a, std::size_t k) {
  if (k < 1 || k > std::min(a.rows(), a.cols())) {
    throw DomainError("rsvd: sketch size k = " + std::to_string(k) + " outside [1, min(n, d)] = [1, " +
                      std::to_string(std::min(a.rows(), a.cols())) + "]");
  }
}

Matrix range_basis(const Matrix &a, const Matrix &omega, const FilterSpec &spec,
                   PowerStabilization stabilization) {
  check_sketch_size(a, omega.cols());
  return thin_qr(apply_filter_sketch(a, omega, spec, stabilization)).q;
}

} // namespace

ApproxResult rsvd_with_sketch(const Matrix &a, const Matrix &omega, const FilterSpec &spec,
                              PowerStabilization stabilization) {
  ApproxResult out;
  out.k = omega.cols();
  out.q = range_basis(a, omega, spec, stabilization);
  const Matrix qta = matmul_tn(out.q, a);
  out.err_sq = std::max(0.0, frobenius_sq(a) - frobenius_sq(qta));
  out.a_hat = matmul(out.q, qta);
  return out;
}

ApproxResult rsvd_filtered(const Matrix &a, std::size_t k, const FilterSpec &spec, RngStream &rng,
                           PowerStabilization stabilization) {
  check_sketch_size(a, k);
  const Matrix omega = gaussian_matrix(a.cols(), k, rng);
  return rsvd_with_sketch(a, omega, spec, stabilization);
}

ApproxResult rsvd(const Matrix &a, std::size_t k, RngStream &rng) {
  return rsvd_filtered(a, k, FilterSpec::identity(), rng);
}

double sketch_error(const Matrix &a, const Matrix &omega, const FilterSpec &spec, double energy,
                    PowerStabilization stabilization) {
  const Matrix q = range_basis(a, omega, spec, stabilization);
  if (energy < 0.0) {
    energy = frobenius_sq(a);
  }
  return std::max(0.0, energy - frobenius_sq(matmul_tn(q, a)));
}

Matrix least_squares_oracle(const Matrix &a, const Matrix &omega, const FilterSpec &spec) {
  if (a.cols() != omega.rows()) {
    throw DomainError("least_squares_oracle: Omega must have d rows");
  }
  const auto c = spec.coefficients();
  const Matrix gram = matmul_nt(a, a);
  Matrix term = matmul(a, omega);
  Matrix y = c[0] * term;
  for (std::size_t j = 1; j < c.size(); ++j) {
    term = matmul(gram, term);
    if (c[j] != 0.0) {
      axpy(c[j], term, y);
    }
  }
  if (!y.all_finite()) {
    throw OverflowError("least_squares_oracle: chi(A) Omega overflowed");
  }
  const QrResult qr = thin_qr(y);
  const Matrix b_star = solve_upper(qr.r, matmul_tn(qr.q, a));
  return matmul(y, b_star);
}

NormCheckReport solution_norm_check(const Matrix &a, const Matrix &omega, std::size_t k) {
  const std::size_t d = a.cols();
  if (omega.rows() != d || omega.cols() != k) {
    throw DomainError("solution_norm_check: Omega must be d x k");
  }
  if (k >= d) {
    throw DomainError("solution_norm_check: bound undefined for k >= d");
  }
  const QrResult qr = thin_qr(matmul(a, omega));
  const Matrix b_star = solve_upper(qr.r, matmul_tn(qr.q, a));

  NormCheckReport rep;
  rep.b_norm = singular_values(b_star).front();
  const auto sv = singular_values(a);
  rep.kappa = sv.back() > 0.0 ? sv.front() / sv.back() : std::numeric_limits<double>::infinity();
  rep.bound = 2.0 * rep.kappa / (std::sqrt(static_cast<double>(d)) - std::sqrt(static_cast<double>(k)));
  rep.held = rep.b_norm <= rep.bound;
  return rep;
}

} // namespace prsvd
