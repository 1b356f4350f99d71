#include "prsvd/svd.hpp"

#include "prsvd/errors.hpp"

#include <Eigen/SVD>

namespace prsvd {
namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_input(const Matrix &a) {
  if (a.empty()) {
    throw DomainError("svd: empty matrix");
  }
  if (!a.all_finite()) {
    throw DomainError("svd: input has non-finite entries");
  }
}

Eigen::Map<const RowMajor> view(const Matrix &a) {
  return {a.data(), static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols())};
}

template <typename Solver> void check_solver(const Solver &s) {
  if (s.info() != Eigen::Success) {
    throw ConvergenceError("svd: BDCSVD did not converge", 0);
  }
}

} // namespace

SvdResult svd(const Matrix &a) {
  check_input(a);
  const Eigen::BDCSVD<Eigen::MatrixXd> s(view(a), Eigen::ComputeThinU | Eigen::ComputeThinV);
  check_solver(s);
  const auto p = static_cast<std::size_t>(s.singularValues().size());
  SvdResult out;
  out.sigma.assign(s.singularValues().data(), s.singularValues().data() + p);
  out.u = Matrix(a.rows(), p);
  out.v = Matrix(p, a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      out.u(i, j) = s.matrixU()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      out.v(j, c) = s.matrixV()(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

std::vector<double> singular_values(const Matrix &a) {
  check_input(a);
  const Eigen::BDCSVD<Eigen::MatrixXd> s(view(a));
  check_solver(s);
  const auto &sv = s.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

} // namespace prsvd
