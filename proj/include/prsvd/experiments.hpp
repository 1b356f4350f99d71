#pragma once

#include "prsvd/config.hpp"
#include "prsvd/filters.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace prsvd {

/// splitmix64-style avalanche over (base, k, filter_index, trial_index). For a
/// fixed prefix the map from trial_index to seed is a bijection on 64-bit
/// integers, so trials never collide.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k, std::uint64_t filter_index,
                          std::uint64_t trial_index);

/// Reserved filter indices naming the matrix and sketch streams.
inline constexpr std::uint64_t kMatrixStream = std::numeric_limits<std::uint64_t>::max();
inline constexpr std::uint64_t kSketchStream = std::numeric_limits<std::uint64_t>::max() - 1;

/// Seed of the synthetic matrix used by `trial`. Depends on (base, trial) when
/// matrices are resampled and on base alone otherwise; never on k or filter.
std::uint64_t matrix_seed(const ExperimentConfig &cfg, std::size_t trial);
/// Seed of Omega for (k, trial); shared by every filter of that pair.
std::uint64_t sketch_seed(const ExperimentConfig &cfg, std::size_t k, std::size_t trial);

/// A trial failure annotated with where it happened.
class TrialError : public std::runtime_error {
public:
  TrialError(const std::string &what, std::size_t k, std::string filter, std::size_t trial)
      : std::runtime_error(what), k_(k), filter_(std::move(filter)), trial_(trial) {}
  std::size_t k() const noexcept { return k_; }
  const std::string &filter() const noexcept { return filter_; }
  std::size_t trial() const noexcept { return trial_; }

private:
  std::size_t k_;
  std::string filter_;
  std::size_t trial_;
};

/// ||A - A_hat||_F^2 for one (k, filter, trial); deterministic in its inputs.
double run_trial(const ExperimentConfig &cfg, std::size_t k, const FilterSpec &spec,
                 std::size_t trial);

struct SweepCell {
  double mean = 0.0;
  double std_error = 0.0; ///< sample stddev / sqrt(R); 0 when R = 1
  double prediction = 0.0;
  std::vector<double> samples; ///< per-trial errors in trial order
};

struct SweepTable {
  std::vector<std::size_t> k_grid;
  std::vector<std::string> filter_labels;
  std::vector<std::vector<SweepCell>> cells; ///< [k index][filter index]
  std::vector<double> lower;                 ///< Eckart-Young, per k
  std::vector<double> upper;                 ///< prop1_best upper bound, per k
};

/// All (k, filter, trial) cells. Trials run concurrently (OpenMP); every
/// random stream is derived from indices, so the table is independent of the
/// schedule and the thread count.
SweepTable run_sweep(const ExperimentConfig &cfg);

/// Writes the plot table:
///   k q0 .. q{F-1} qpred0 .. qpred{F-1} lwbnd upbnd
/// one row per k, space separated, %.12g.
void emit_dat(const SweepTable &table, const std::filesystem::path &path);
std::string format_dat(const SweepTable &table);

/// Inverse of format_dat for means, predictions and bounds (samples and
/// standard errors are not stored).
SweepTable parse_dat(const std::string &text);

} // namespace prsvd
