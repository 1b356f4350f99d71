#include "prsvd/bounds.hpp"

#include "prsvd/errors.hpp"
#include "prsvd/summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace prsvd {

double eckart_young_lower(const SpectralProfile &profile, std::size_t k) {
  if (k > profile.size()) {
    throw DomainError("eckart_young_lower: need k <= m");
  }
  return profile.tail_energy(k);
}

double halko_tropp_upper(const SpectralProfile &profile, std::size_t k, std::size_t r) {
  if (r + 1 >= k) {
    throw DomainError("halko_tropp_upper: need r < k - 1 (got r = " + std::to_string(r) +
                      ", k = " + std::to_string(k) + ")");
  }
  if (r > profile.size()) {
    throw DomainError("halko_tropp_upper: need r <= m");
  }
  const double rr = static_cast<double>(r);
  return (1.0 + rr / (static_cast<double>(k) - rr - 1.0)) * profile.tail_energy(r);
}

double prop1_constant(std::size_t k, std::size_t r, std::size_t m) {
  if (r >= k || k > m) {
    throw DomainError("prop1_constant: need r < k <= m (got r = " + std::to_string(r) +
                      ", k = " + std::to_string(k) + ", m = " + std::to_string(m) + ")");
  }
  const double kk = static_cast<double>(k);
  const double rr = static_cast<double>(r);
  const double mm = static_cast<double>(m);
  return (mm - kk) * kk / ((mm - rr) * (kk - rr));
}

double prop1_upper(const SpectralProfile &profile, std::size_t k, std::size_t r) {
  return prop1_constant(k, r, profile.size()) * profile.tail_energy(r);
}

BestBound prop1_best(const SpectralProfile &profile, std::size_t k) {
  const std::size_t m = profile.size();
  if (k < 1 || k > m) {
    throw DomainError("prop1_best: need 1 <= k <= m");
  }
  // Tail sums for every r in one backward pass.
  std::vector<double> tails(k);
  CompensatedSum acc;
  for (std::size_t j = m; j-- > 0;) {
    acc.add(profile[j] * profile[j]);
    if (j < k) {
      tails[j] = acc.value();
    }
  }
  BestBound best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t r = 0; r < k; ++r) {
    const double v = prop1_constant(k, r, m) * tails[r];
    if (v < best.value) {
      best = {v, r};
    }
  }
  return best;
}

double prop2_upper(const SpectralProfile &profile, std::size_t k, std::size_t r,
                   const FilterSpec &spec) {
  const std::size_t m = profile.size();
  const double c = prop1_constant(k, r, m);
  const double tail = profile.tail_energy(r);
  if (r == 0) {
    return tail;
  }

  std::vector<double> head_log(r);
  for (std::size_t j = 0; j < r; ++j) {
    try {
      head_log[j] = eval_filter_log_sq(spec, profile[j]);
    } catch (const DomainError &) {
      throw DomainError("prop2_upper: chi vanishes at head singular value " + std::to_string(j + 1));
    }
  }
  // chi may vanish on the tail; such terms contribute zero.
  std::vector<double> tail_log;
  tail_log.reserve(m - r);
  for (std::size_t j = r; j < m; ++j) {
    try {
      tail_log.push_back(eval_filter_log_sq(spec, profile[j]));
    } catch (const DomainError &) {
    }
  }
  if (tail_log.empty()) {
    return tail;
  }
  const double pivot = *std::max_element(tail_log.begin(), tail_log.end());

  CompensatedSum tail_chi; // sum_{j>r} chi^2 / e^pivot
  for (double l : tail_log) {
    tail_chi.add(std::exp(l - pivot));
  }
  CompensatedSum head_ratio; // sum_{j<=r} sigma^2 e^pivot / chi^2
  for (std::size_t j = 0; j < r; ++j) {
    head_ratio.add(profile[j] * profile[j] * std::exp(pivot - head_log[j]));
  }
  return tail + c / static_cast<double>(k) * head_ratio.value() * tail_chi.value();
}

BoundReport bound_report(const SpectralProfile &profile, std::size_t k, std::size_t r,
                         const std::optional<FilterSpec> &spec) {
  BoundReport rep;
  rep.k = k;
  rep.r = r;
  rep.m = profile.size();
  rep.lower = eckart_young_lower(profile, k);
  rep.prop1 = prop1_upper(profile, k, r);
  const auto best = prop1_best(profile, k);
  rep.prop1_best = best.value;
  rep.prop1_best_r = best.r;
  if (r + 1 < k) {
    rep.halko_tropp = halko_tropp_upper(profile, k, r);
  }
  if (spec) {
    rep.prop2 = prop2_upper(profile, k, r, *spec);
  }
  return rep;
}

} // namespace prsvd
