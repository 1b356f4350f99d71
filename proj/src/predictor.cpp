#include "prsvd/predictor.hpp"

#include "prsvd/errors.hpp"
#include "prsvd/summation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace prsvd {
namespace {

void check_k(std::size_t k, std::size_t m, const char *who) {
  if (k < 1 || k > m) {
    throw DomainError(std::string(who) + ": need 1 <= k <= m, got k = " + std::to_string(k) +
                      ", m = " + std::to_string(m));
  }
}

std::vector<double> squares(const SpectralProfile &p) {
  std::vector<double> s2(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    s2[j] = p[j] * p[j];
  }
  return s2;
}

// sum_j s2 / (theta + k s2) - 1 and its derivative.
struct Unfiltered {
  const std::vector<double> &s2;
  double k;

  double value(double theta) const {
    CompensatedSum s;
    for (std::size_t j = s2.size(); j-- > 0;) {
      s.add(s2[j] / (theta + k * s2[j]));
    }
    return s.value() - 1.0;
  }
  double slope(double theta) const {
    CompensatedSum s;
    for (std::size_t j = s2.size(); j-- > 0;) {
      const double den = theta + k * s2[j];
      s.add(-s2[j] / (den * den));
    }
    return s.value();
  }
  double residual(double theta) const {
    std::vector<double> terms(s2.size());
    for (std::size_t j = 0; j < s2.size(); ++j) {
      terms[j] = s2[j] / (theta + k * s2[j]);
    }
    return pairwise_sum(terms) - 1.0;
  }
};

// 1 / (1 + e^x) without overflow; x = -inf gives 1.
double logistic_tail(double x) {
  if (x > 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

// g(t) - (m - k) with theta0 = e^t, in terms of log chi^2.
struct Filtered {
  const std::vector<double> &log_chi_sq;
  double target;

  double value(double t) const {
    CompensatedSum s;
    for (double l : log_chi_sq) {
      s.add(logistic_tail(t + l));
    }
    return s.value() - target;
  }
  double slope(double t) const {
    CompensatedSum s;
    for (double l : log_chi_sq) {
      const double p = logistic_tail(t + l);
      s.add(-p * (1.0 - p));
    }
    return s.value();
  }
};

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

} // namespace

Prediction solve_theta_tilde(const SpectralProfile &profile, std::size_t k) {
  const std::size_t m = profile.size();
  check_k(k, m, "solve_theta_tilde");
  Prediction out;
  if (k == m) {
    return out;
  }
  const auto s2 = squares(profile);
  const Unfiltered f{s2, static_cast<double>(k)};

  double lo = 0.0;
  double hi = profile.energy();
  int it = 0;
  for (; it < kMaxIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= kBracketRelWidth * hi || mid <= lo || mid >= hi) {
      break;
    }
    const double v = f.value(mid);
    if (v > 0.0) {
      lo = mid;
    } else if (v < 0.0) {
      hi = mid;
    } else {
      lo = hi = mid;
      break;
    }
  }

  double theta = 0.5 * (lo + hi);
  double fv = f.value(theta);
  for (int polish = 0; polish < 3 && fv != 0.0; ++polish) {
    const double next = theta - fv / f.slope(theta);
    if (!(next >= lo && next <= hi)) {
      break;
    }
    const double fn = f.value(next);
    if (std::abs(fn) >= std::abs(fv)) {
      break;
    }
    theta = next;
    fv = fn;
    ++it;
  }

  out.theta_tilde = theta;
  out.residual = f.residual(theta);
  out.iterations = it;
  if (!(std::abs(out.residual) <= kResidualTolerance)) {
    throw ConvergenceError("solve_theta_tilde: residual " + std::to_string(out.residual) +
                               " exceeds tolerance",
                           it);
  }
  return out;
}

Prediction solve_filtered(const SpectralProfile &profile, std::size_t k, const FilterSpec &spec) {
  const std::size_t m = profile.size();
  check_k(k, m, "solve_filtered");

  std::vector<double> lchi(m);
  std::size_t zeros = 0;
  for (std::size_t j = 0; j < m; ++j) {
    try {
      lchi[j] = eval_filter_log_sq(spec, profile[j]);
    } catch (const DomainError &) {
      lchi[j] = -std::numeric_limits<double>::infinity();
      ++zeros;
    }
  }
  const std::size_t survivors = m - zeros;
  if (survivors < k) {
    throw DomainError("solve_filtered: only " + std::to_string(survivors) +
                      " singular values have chi(sigma) != 0, need at least k = " +
                      std::to_string(k));
  }

  Prediction out;
  const double inf = std::numeric_limits<double>::infinity();
  if (survivors == k) {
    // The root sits at theta0 = infinity: only the annihilated directions remain.
    CompensatedSum s;
    for (std::size_t j = m; j-- > 0;) {
      if (std::isinf(lchi[j])) {
        s.add(profile[j] * profile[j]);
      }
    }
    out.theta_tilde = s.value();
    out.theta0 = inf;
    out.log_theta0 = inf;
    return out;
  }

  const Filtered g{lchi, static_cast<double>(m - k)};
  // Grow the bracket geometrically in t = log(theta0): theta0 = e^{+-1, +-2, +-4, ...}.
  double lo = 0.0;
  double hi = 0.0;
  int it = 0;
  if (g.value(0.0) > 0.0) {
    double step = 1.0;
    hi = step;
    while (g.value(hi) > 0.0) {
      lo = hi;
      step *= 2.0;
      hi = step;
      if (++it > 64) {
        throw ConvergenceError("solve_filtered: could not bracket theta0 from above", it);
      }
    }
  } else {
    double step = 1.0;
    lo = -step;
    while (g.value(lo) < 0.0) {
      hi = lo;
      step *= 2.0;
      lo = -step;
      if (++it > 64) {
        throw ConvergenceError("solve_filtered: could not bracket theta0 from below", it);
      }
    }
  }

  // Relative width in theta0 equals absolute width in t.
  for (int bis = 0; bis < kMaxIterations; ++bis, ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= kBracketRelWidth || mid <= lo || mid >= hi) {
      break;
    }
    const double v = g.value(mid);
    if (v > 0.0) {
      lo = mid;
    } else if (v < 0.0) {
      hi = mid;
    } else {
      lo = hi = mid;
      break;
    }
  }

  double t = 0.5 * (lo + hi);
  double gv = g.value(t);
  for (int polish = 0; polish < 3 && gv != 0.0; ++polish) {
    const double slope = g.slope(t);
    if (slope == 0.0) {
      break;
    }
    const double next = t - gv / slope;
    if (!(next >= lo && next <= hi)) {
      break;
    }
    const double gn = g.value(next);
    if (std::abs(gn) >= std::abs(gv)) {
      break;
    }
    t = next;
    gv = gn;
    ++it;
  }

  CompensatedSum theta_sum;
  std::vector<double> g_terms(m);
  std::vector<double> theta_terms(m);
  for (std::size_t j = m; j-- > 0;) {
    const double p = logistic_tail(t + lchi[j]);
    g_terms[j] = p;
    theta_terms[j] = profile[j] * profile[j] * p;
    theta_sum.add(theta_terms[j]);
  }
  out.theta_tilde = theta_sum.value();
  out.log_theta0 = t;
  out.theta0 = std::exp(t);
  const double scale = static_cast<double>(m - k);
  out.residual = (pairwise_sum(g_terms) - scale) / scale;
  const double resummed = pairwise_sum(theta_terms);
  out.theta_residual =
      out.theta_tilde > 0.0 ? (resummed - out.theta_tilde) / out.theta_tilde : resummed;
  out.iterations = it;
  if (!(std::abs(out.residual) <= kResidualTolerance)) {
    throw ConvergenceError("solve_filtered: residual " + std::to_string(out.residual) +
                               " exceeds tolerance",
                           it);
  }
  return out;
}

double bilevel_closed_form(std::size_t r, std::size_t m, double a, double b, std::size_t k) {
  if (r >= m || !(b > 0.0) || !(a >= b)) {
    throw DomainError("bilevel_closed_form: need a >= b > 0 and r < m");
  }
  check_k(k, m, "bilevel_closed_form");
  const double a2 = a * a;
  const double b2 = b * b;
  const double rr = static_cast<double>(r);
  const double mm = static_cast<double>(m);
  const double kk = static_cast<double>(k);
  const double lin = (rr - kk) * a2 + (mm - rr - kk) * b2;
  const double c = a2 * b2 * kk * (mm - kk);
  const double disc = std::sqrt(lin * lin + 4.0 * c);
  // Positive root of Theta^2 - lin Theta - c = 0, cancellation-free for lin < 0.
  return lin >= 0.0 ? 0.5 * (lin + disc) : 2.0 * c / (disc - lin);
}

double bilevel_filtered_theta0(std::size_t r, std::size_t m, double a, double b, std::size_t k,
                               const FilterSpec &spec) {
  if (r >= m || !(b > 0.0) || !(a >= b)) {
    throw DomainError("bilevel_filtered_theta0: need a >= b > 0 and r < m");
  }
  check_k(k, m, "bilevel_filtered_theta0");
  if (k == m) {
    throw DomainError("bilevel_filtered_theta0: theta0 is unbounded for k = m");
  }
  // Rejects chi(a) = 0 or chi(b) = 0 via DomainError.
  const double inv_x = std::exp(-eval_filter_log_sq(spec, a)); // 1 / chi(a)^2
  const double inv_y = std::exp(-eval_filter_log_sq(spec, b)); // 1 / chi(b)^2
  const double rr = static_cast<double>(r);
  const double mm = static_cast<double>(m);
  const double kk = static_cast<double>(k);
  // Quadratic (m-k) x y theta^2 + ((r-k) x + (m-k-r) y) theta - k = 0, divided by x y.
  const double lin = (kk - rr) * inv_y + (kk + rr - mm) * inv_x;
  const double c = kk * (mm - kk) * inv_x * inv_y;
  const double disc = std::sqrt(lin * lin + 4.0 * c);
  const double numer = lin >= 0.0 ? lin + disc : 4.0 * c / (disc - lin);
  return numer / (2.0 * (mm - kk));
}

double bilevel_filtered_closed_form(std::size_t r, std::size_t m, double a, double b,
                                    std::size_t k, const FilterSpec &spec) {
  if (k == m) {
    check_k(k, m, "bilevel_filtered_closed_form");
    return 0.0;
  }
  const double theta0 = bilevel_filtered_theta0(r, m, a, b, k, spec);
  const double lt = std::log(theta0);
  const double rr = static_cast<double>(r);
  const double mm = static_cast<double>(m);
  return rr * a * a * logistic_tail(lt + eval_filter_log_sq(spec, a)) +
         (mm - rr) * b * b * logistic_tail(lt + eval_filter_log_sq(spec, b));
}

double powerlaw_asymptotic(double alpha, std::size_t k) {
  if (!(alpha > 0.5)) {
    throw DomainError("powerlaw_asymptotic: alpha must exceed 1/2");
  }
  if (k < 1) {
    throw DomainError("powerlaw_asymptotic: k must be positive");
  }
  const double kk = static_cast<double>(k);
  const double s = sinc(std::numbers::pi / (2.0 * alpha));
  return kk * std::pow(kk * s, -2.0 * alpha);
}

double powerlaw_filtered_limit(double alpha, std::size_t k, std::size_t m) {
  if (!(alpha > 0.5)) {
    throw DomainError("powerlaw_filtered_limit: alpha must exceed 1/2");
  }
  if (k > m) {
    throw DomainError("powerlaw_filtered_limit: need k <= m");
  }
  CompensatedSum s;
  for (std::size_t i = m; i > k; --i) {
    s.add(std::pow(static_cast<double>(i), -2.0 * alpha));
  }
  return s.value();
}

} // namespace prsvd
