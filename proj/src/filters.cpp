#include "prsvd/filters.hpp"

#include "prsvd/errors.hpp"
#include "prsvd/kernels.hpp"
#include "prsvd/qr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace prsvd {

FilterSpec FilterSpec::power(int q) {
  if (q < 0) {
    throw DomainError("FilterSpec::power: q must be nonnegative");
  }
  return FilterSpec(PowerIteration{q});
}

FilterSpec FilterSpec::polynomial(std::vector<double> c) {
  if (c.empty()) {
    throw DomainError("FilterSpec::polynomial: at least one coefficient required");
  }
  for (double v : c) {
    if (!std::isfinite(v)) {
      throw DomainError("FilterSpec::polynomial: coefficients must be finite");
    }
  }
  if (c.back() == 0.0) {
    throw DomainError("FilterSpec::polynomial: leading coefficient must be nonzero");
  }
  return FilterSpec(OddPolynomial{std::move(c)});
}

bool FilterSpec::is_identity() const noexcept {
  const auto c = coefficients();
  return c.size() == 1 && c[0] == 1.0;
}

std::vector<double> FilterSpec::coefficients() const {
  if (std::holds_alternative<Identity>(v_)) {
    return {1.0};
  }
  if (const auto *p = std::get_if<PowerIteration>(&v_)) {
    std::vector<double> c(static_cast<std::size_t>(p->q) + 1, 0.0);
    c.back() = 1.0;
    return c;
  }
  return std::get<OddPolynomial>(v_).c;
}

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_number(std::string_view s, std::string_view context) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("filter '" + std::string(context) + "': bad number '" + std::string(s) +
                     "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(',', start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) {
      break;
    }
    start = pos + 1;
  }
  return out;
}

} // namespace

std::string FilterSpec::to_string() const {
  if (std::holds_alternative<Identity>(v_)) {
    return "identity";
  }
  if (const auto *p = std::get_if<PowerIteration>(&v_)) {
    return "power:" + std::to_string(p->q);
  }
  std::string s = "poly:";
  const auto &c = std::get<OddPolynomial>(v_).c;
  for (std::size_t i = 0; i < c.size(); ++i) {
    s += (i ? "," : "") + format_number(c[i]);
  }
  return s;
}

FilterSpec parse_filter(std::string_view text) {
  const std::string_view t = trim(text);
  if (t == "identity") {
    return FilterSpec::identity();
  }
  if (t.starts_with("power:")) {
    const auto body = t.substr(6);
    int q = 0;
    const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), q);
    if (body.empty() || ec != std::errc() || ptr != body.data() + body.size() || q < 0) {
      throw ParseError("filter '" + std::string(t) + "': power needs a nonnegative integer");
    }
    return FilterSpec::power(q);
  }
  if (t.starts_with("poly:")) {
    std::vector<double> c;
    for (auto tok : split_commas(t.substr(5))) {
      c.push_back(parse_number(tok, t));
    }
    try {
      return FilterSpec::polynomial(std::move(c));
    } catch (const DomainError &e) {
      throw ParseError("filter '" + std::string(t) + "': " + e.what());
    }
  }
  throw ParseError("unknown filter '" + std::string(t) +
                   "' (expected identity, power:q or poly:c1,...,cp)");
}

std::vector<FilterSpec> parse_filter_list(std::string_view text) {
  std::vector<std::string> entries;
  for (auto tok : split_commas(text)) {
    if (tok.empty()) {
      throw ParseError("empty entry in filter list '" + std::string(text) + "'");
    }
    const bool starts_new = std::isalpha(static_cast<unsigned char>(tok.front())) != 0;
    if (starts_new) {
      entries.emplace_back(tok);
    } else if (!entries.empty() && entries.back().starts_with("poly:")) {
      entries.back() += ",";
      entries.back() += tok;
    } else {
      throw ParseError("stray number '" + std::string(tok) + "' in filter list");
    }
  }
  std::vector<FilterSpec> out;
  out.reserve(entries.size());
  for (const auto &e : entries) {
    out.push_back(parse_filter(e));
  }
  return out;
}

double eval_filter(const FilterSpec &spec, double x) {
  if (!(x >= 0.0)) {
    throw DomainError("eval_filter: x must be nonnegative");
  }
  double value = 0.0;
  if (std::holds_alternative<FilterSpec::Identity>(spec.variant())) {
    value = x;
  } else if (const auto *p = std::get_if<FilterSpec::PowerIteration>(&spec.variant())) {
    value = std::pow(x, 2 * p->q + 1);
  } else {
    // Horner in x^2: chi(x) = x * sum_j c_j (x^2)^{j-1}
    const auto &c = std::get<FilterSpec::OddPolynomial>(spec.variant()).c;
    const double x2 = x * x;
    double acc = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) {
      acc = acc * x2 + c[j];
    }
    value = acc * x;
  }
  if (!std::isfinite(value)) {
    throw OverflowError("eval_filter: " + spec.to_string() + " overflows at x = " +
                        format_number(x));
  }
  return value;
}

double eval_filter_log_sq(const FilterSpec &spec, double x) {
  if (!(x > 0.0)) {
    throw DomainError("eval_filter_log_sq: x must be positive");
  }
  const double lx = std::log(x);
  if (std::holds_alternative<FilterSpec::Identity>(spec.variant())) {
    return 2.0 * lx;
  }
  if (const auto *p = std::get_if<FilterSpec::PowerIteration>(&spec.variant())) {
    return (4.0 * p->q + 2.0) * lx;
  }
  // Factor out the dominant monomial: chi(x) = e^{L} * sum_j s_j e^{L_j - L}.
  const auto &c = std::get<FilterSpec::OddPolynomial>(spec.variant()).c;
  double lmax = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] != 0.0) {
      lmax = std::max(lmax, std::log(std::abs(c[j])) + (2.0 * j + 1.0) * lx);
    }
  }
  double s = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] != 0.0) {
      const double lj = std::log(std::abs(c[j])) + (2.0 * j + 1.0) * lx;
      s += std::copysign(std::exp(lj - lmax), c[j]);
    }
  }
  if (s == 0.0) {
    throw DomainError("eval_filter_log_sq: " + spec.to_string() + " vanishes at x = " +
                      format_number(x));
  }
  return 2.0 * lmax + std::log(s * s);
}

namespace {

Matrix power_step(const Matrix &a, const Matrix &z) { return matmul(a, matmul_tn(a, z)); }

void require_finite(const Matrix &z, const FilterSpec &spec, std::size_t step) {
  if (!z.all_finite()) {
    throw OverflowError("apply_filter_sketch: " + spec.to_string() +
                        " overflowed at power step " + std::to_string(step));
  }
}

} // namespace

Matrix apply_filter_sketch(const Matrix &a, const Matrix &omega, const FilterSpec &spec,
                           PowerStabilization stabilization) {
  if (a.cols() != omega.rows()) {
    throw DomainError("apply_filter_sketch: A is " + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()) + " but Omega has " +
                      std::to_string(omega.rows()) + " rows");
  }
  Matrix z = matmul(a, omega);

  if (const auto *p = std::get_if<FilterSpec::PowerIteration>(&spec.variant())) {
    for (int step = 1; step <= p->q; ++step) {
      switch (stabilization) {
      case PowerStabilization::Orthonormalize:
        z = thin_qr(z, 0.0).q;
        break;
      case PowerStabilization::Frobenius: {
        const double norm = frobenius_norm(z);
        if (norm > 0.0) {
          z *= 1.0 / norm;
        }
        break;
      }
      case PowerStabilization::None:
        break;
      }
      z = power_step(a, z);
      require_finite(z, spec, static_cast<std::size_t>(step));
    }
    return z;
  }

  if (std::holds_alternative<FilterSpec::Identity>(spec.variant())) {
    return z;
  }

  const auto &c = std::get<FilterSpec::OddPolynomial>(spec.variant()).c;
  Matrix y(z.rows(), z.cols());
  axpy(c[0], z, y);
  for (std::size_t j = 1; j < c.size(); ++j) {
    z = power_step(a, z);
    require_finite(z, spec, j);
    if (c[j] != 0.0) {
      axpy(c[j], z, y);
    }
  }
  require_finite(y, spec, c.size() - 1);
  return y;
}

} // namespace prsvd
