#pragma once

#include "prsvd/filters.hpp"
#include "prsvd/spectra.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <variant>
#include <vector>

namespace prsvd {

struct BilevelEnsemble {
  std::size_t r = 0;
  std::size_t m = 0;
  double a = 0.0;
  double b = 0.0;
};

struct PowerLawEnsemble {
  double alpha = 0.0;
  std::size_t m = 0;
};

struct UniformEnsemble {
  double s = 0.0;
  std::size_t m = 0;
};

struct FileEnsemble {
  std::filesystem::path path;
};

using Ensemble = std::variant<BilevelEnsemble, PowerLawEnsemble, UniformEnsemble, FileEnsemble>;

SpectralProfile make_profile(const Ensemble &ensemble);

struct ExperimentConfig {
  Ensemble ensemble;
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<std::size_t> k_grid;
  std::vector<FilterSpec> filters;
  std::size_t trials = 0;
  std::uint64_t base_seed = 0;
  /// Fresh A per trial when true; one A for the whole sweep otherwise.
  bool resample_matrix = true;
  std::filesystem::path out_path;
};

/// Checks max(k_grid) <= m <= min(n, d), trials >= 1, k_grid strictly
/// increasing and non-empty, at least one filter. Throws DomainError.
void validate(const ExperimentConfig &cfg, const SpectralProfile &profile);

/// Flat `key = value` text, '#' comments. Keys: ensemble, r, m, a, b, alpha,
/// profile_path, n, d, k_grid, filters, trials, seed, resample_matrix, out.
/// `ensemble` is bilevel | powerlaw | file | uniform (uniform reads its level
/// from `a`). Unknown, duplicate or missing keys raise ParseError naming the key.
/// A relative profile_path resolves against `base_dir`; `out` is taken as
/// given (relative to the working directory).
ExperimentConfig parse_config(std::istream &in, const std::filesystem::path &base_dir = {});
ExperimentConfig load_config(const std::filesystem::path &path);

} // namespace prsvd
