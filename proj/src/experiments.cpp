#include "prsvd/experiments.hpp"

#include "prsvd/bounds.hpp"
#include "prsvd/errors.hpp"
#include "prsvd/kernels.hpp"
#include "prsvd/predictor.hpp"
#include "prsvd/rng.hpp"
#include "prsvd/rsvd.hpp"
#include "prsvd/spectra.hpp"
#include "prsvd/summation.hpp"

#include <cmath>
#include <exception>
#include <optional>

namespace prsvd {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Matrix trial_matrix(const ExperimentConfig &cfg, const SpectralProfile &profile,
                    std::size_t trial) {
  RngStream rng(matrix_seed(cfg, trial));
  return synthesize_matrix(profile, cfg.n, cfg.d, rng).a;
}

Matrix trial_sketch(const ExperimentConfig &cfg, std::size_t k, std::size_t trial) {
  RngStream rng(sketch_seed(cfg, k, trial));
  return gaussian_matrix(cfg.d, k, rng);
}

} // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k, std::uint64_t filter_index,
                          std::uint64_t trial_index) {
  std::uint64_t h = mix64(base + kGolden);
  h = mix64(h + kGolden * (k + 1));
  h = mix64(h + kGolden * (filter_index + 1));
  return mix64(h + kGolden * (trial_index + 1));
}

std::uint64_t matrix_seed(const ExperimentConfig &cfg, std::size_t trial) {
  return derive_seed(cfg.base_seed, 0, kMatrixStream, cfg.resample_matrix ? trial : 0);
}

std::uint64_t sketch_seed(const ExperimentConfig &cfg, std::size_t k, std::size_t trial) {
  return derive_seed(cfg.base_seed, k, kSketchStream, trial);
}

double run_trial(const ExperimentConfig &cfg, std::size_t k, const FilterSpec &spec,
                 std::size_t trial) {
  try {
    const SpectralProfile profile = make_profile(cfg.ensemble);
    validate(cfg, profile);
    const Matrix a = trial_matrix(cfg, profile, trial);
    return sketch_error(a, trial_sketch(cfg, k, trial), spec);
  } catch (const TrialError &) {
    throw;
  } catch (const std::exception &e) {
    throw TrialError("trial failed (k = " + std::to_string(k) + ", filter = " + spec.to_string() +
                         ", trial = " + std::to_string(trial) + "): " + e.what(),
                     k, spec.to_string(), trial);
  }
}

SweepTable run_sweep(const ExperimentConfig &cfg) {
  const SpectralProfile profile = make_profile(cfg.ensemble);
  validate(cfg, profile);

  const std::size_t nk = cfg.k_grid.size();
  const std::size_t nf = cfg.filters.size();
  const std::size_t nt = cfg.trials;

  SweepTable table;
  table.k_grid = cfg.k_grid;
  for (const auto &f : cfg.filters) {
    table.filter_labels.push_back(f.to_string());
  }
  table.cells.assign(nk, std::vector<SweepCell>(nf));
  for (auto &row : table.cells) {
    for (auto &cell : row) {
      cell.samples.assign(nt, 0.0);
    }
  }

  std::optional<Matrix> shared;
  if (!cfg.resample_matrix) {
    shared = trial_matrix(cfg, profile, 0);
  }

  std::vector<std::exception_ptr> failures(nt);
  std::vector<std::string> where(nt);

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t ti = 0; ti < static_cast<std::ptrdiff_t>(nt); ++ti) {
    const auto t = static_cast<std::size_t>(ti);
    std::size_t ki = 0;
    std::size_t fi = 0;
    try {
      const Matrix a = shared ? *shared : trial_matrix(cfg, profile, t);
      const double energy = frobenius_sq(a);
      for (ki = 0; ki < nk; ++ki) {
        const Matrix omega = trial_sketch(cfg, cfg.k_grid[ki], t);
        for (fi = 0; fi < nf; ++fi) {
          table.cells[ki][fi].samples[t] = sketch_error(a, omega, cfg.filters[fi], energy);
        }
      }
    } catch (...) {
      failures[t] = std::current_exception();
      where[t] = "k = " + std::to_string(cfg.k_grid[std::min(ki, nk - 1)]) +
                 ", filter = " + table.filter_labels[std::min(fi, nf - 1)] +
                 ", trial = " + std::to_string(t);
    }
  }

  for (std::size_t t = 0; t < nt; ++t) {
    if (failures[t]) {
      try {
        std::rethrow_exception(failures[t]);
      } catch (const std::exception &e) {
        throw TrialError("sweep aborted (" + where[t] + "): " + e.what(), 0, where[t], t);
      }
    }
  }

  table.lower.resize(nk);
  table.upper.resize(nk);
  for (std::size_t ki = 0; ki < nk; ++ki) {
    const std::size_t k = cfg.k_grid[ki];
    table.lower[ki] = eckart_young_lower(profile, k);
    table.upper[ki] = prop1_best(profile, k).value;
    for (std::size_t fi = 0; fi < nf; ++fi) {
      SweepCell &cell = table.cells[ki][fi];
      const double rr = static_cast<double>(nt);
      cell.mean = pairwise_sum(cell.samples) / rr;
      if (nt > 1) {
        std::vector<double> dev(nt);
        for (std::size_t t = 0; t < nt; ++t) {
          dev[t] = (cell.samples[t] - cell.mean) * (cell.samples[t] - cell.mean);
        }
        cell.std_error = std::sqrt(pairwise_sum(dev) / (rr - 1.0)) / std::sqrt(rr);
      }
      cell.prediction = solve_filtered(profile, k, cfg.filters[fi]).theta_tilde;
    }
  }
  return table;
}

} // namespace prsvd
