#include "prsvd/rng.hpp"

#include "prsvd/errors.hpp"

namespace prsvd {

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, RngStream &rng) {
  if (rows == 0 || cols == 0) {
    throw DomainError("gaussian_matrix: dimensions must be positive");
  }
  Matrix g(rows, cols);
  double *p = g.data();
  for (std::size_t i = 0; i < g.size(); ++i) {
    p[i] = rng.normal();
  }
  return g;
}

} // namespace prsvd
