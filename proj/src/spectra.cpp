#include "prsvd/spectra.hpp"

#include "prsvd/errors.hpp"
#include "prsvd/kernels.hpp"
#include "prsvd/qr.hpp"
#include "prsvd/summation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <string>

namespace prsvd {

SpectralProfile::SpectralProfile(std::vector<double> sigmas) : sigmas_(std::move(sigmas)) {
  if (sigmas_.empty()) {
    throw DomainError("SpectralProfile: at least one singular value required");
  }
  for (std::size_t i = 0; i < sigmas_.size(); ++i) {
    const double s = sigmas_[i];
    if (!std::isfinite(s) || !(s > 0.0)) {
      throw DomainError("SpectralProfile: sigma[" + std::to_string(i) +
                        "] must be finite and positive");
    }
    if (i > 0 && s > sigmas_[i - 1]) {
      throw DomainError("SpectralProfile: values must be non-increasing (index " +
                        std::to_string(i) + ")");
    }
  }
}

SpectralProfile SpectralProfile::from_unsorted(std::vector<double> sigmas) {
  std::sort(sigmas.begin(), sigmas.end(), std::greater<>());
  return SpectralProfile(std::move(sigmas));
}

double SpectralProfile::energy() const { return tail_energy(0); }

double SpectralProfile::tail_energy(std::size_t from) const {
  CompensatedSum s;
  for (std::size_t j = sigmas_.size(); j-- > from;) {
    s.add(sigmas_[j] * sigmas_[j]);
  }
  return s.value();
}

SpectralProfile SpectralProfile::scaled(double c) const {
  if (!(c > 0.0)) {
    throw DomainError("SpectralProfile::scaled: factor must be positive");
  }
  std::vector<double> out(sigmas_);
  for (double &s : out) {
    s *= c;
  }
  return SpectralProfile(std::move(out));
}

SpectralProfile bilevel_profile(std::size_t r, std::size_t m, double a, double b) {
  if (r < 1 || r >= m) {
    throw DomainError("bilevel_profile: need 1 <= r < m");
  }
  if (!(b > 0.0) || !(a > b)) {
    throw DomainError("bilevel_profile: need a > b > 0");
  }
  std::vector<double> s(m, b);
  std::fill_n(s.begin(), r, a);
  return SpectralProfile(std::move(s));
}

SpectralProfile powerlaw_profile(double alpha, std::size_t m) {
  if (!(alpha > 0.5)) {
    throw DomainError("powerlaw_profile: alpha must exceed 1/2");
  }
  if (m < 1) {
    throw DomainError("powerlaw_profile: m must be positive");
  }
  std::vector<double> s(m);
  for (std::size_t i = 0; i < m; ++i) {
    s[i] = std::pow(static_cast<double>(i + 1), -alpha);
  }
  return SpectralProfile(std::move(s));
}

SpectralProfile uniform_profile(double s, std::size_t m) {
  if (m < 1) {
    throw DomainError("uniform_profile: m must be positive");
  }
  return SpectralProfile(std::vector<double>(m, s));
}

SpectralProfile load_profile(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open profile file '" + path.string() + "'");
  }
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') {
      continue;
    }
    const auto last = line.find_last_not_of(" \t\r");
    const char *begin = line.data() + first;
    const char *end = line.data() + last + 1;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": not a number", lineno);
    }
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) +
                           ": singular values must be strictly positive",
                       lineno);
    }
    values.push_back(v);
  }
  if (values.empty()) {
    throw ParseError(path.string() + ": empty profile");
  }
  return SpectralProfile::from_unsorted(std::move(values));
}

SyntheticMatrix synthesize_matrix(const SpectralProfile &profile, std::size_t n, std::size_t d,
                                  RngStream &rng) {
  const std::size_t m = profile.size();
  if (m > std::min(n, d)) {
    throw DomainError("synthesize_matrix: rank " + std::to_string(m) + " exceeds min(n, d) = " +
                      std::to_string(std::min(n, d)));
  }
  Matrix u = thin_qr(gaussian_matrix(n, m, rng)).q;
  Matrix v = thin_qr(gaussian_matrix(d, m, rng)).q.transpose();
  Matrix a = matmul(scale_columns(u, profile.values()), v);
  return SyntheticMatrix{std::move(a), std::move(u), std::move(v), profile};
}

} // namespace prsvd
