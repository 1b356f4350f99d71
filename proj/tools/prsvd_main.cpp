// prsvd: predict, simulate, sweep and bound randomized SVD errors.
//
// Exit status: 0 success, 1 domain or solver failure, 2 usage or parse error.

#include "prsvd/bounds.hpp"
#include "prsvd/config.hpp"
#include "prsvd/errors.hpp"
#include "prsvd/experiments.hpp"
#include "prsvd/filters.hpp"
#include "prsvd/predictor.hpp"
#include "prsvd/spectra.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace prsvd;

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct EnsembleOpts {
  std::string bilevel;
  std::string powerlaw;
  std::string uniform;
  std::string profile;
};

void add_ensemble_opts(CLI::App *cmd, EnsembleOpts &e) {
  auto *g = cmd->add_option_group("ensemble", "singular value profile");
  g->add_option("--bilevel", e.bilevel, "r,m,a,b: r values at a, m-r values at b");
  g->add_option("--powerlaw", e.powerlaw, "alpha,m: sigma_i = i^-alpha");
  g->add_option("--uniform", e.uniform, "s,m: m values equal to s");
  g->add_option("--profile", e.profile, "file of singular values, one per line");
  g->require_option(1);
}

std::vector<double> split_numbers(const std::string &flag, const std::string &text,
                                  std::size_t expected) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string tok = text.substr(pos, comma - pos);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw UsageError(flag + ": '" + tok + "' is not a number");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  if (out.size() != expected) {
    throw UsageError(flag + ": expected " + std::to_string(expected) +
                     " comma-separated values, got " + std::to_string(out.size()));
  }
  return out;
}

std::size_t as_count(const std::string &flag, double v) {
  if (!(v >= 1.0) || v != std::floor(v) || v > 1e12) {
    throw UsageError(flag + ": expected a positive integer, got " + std::to_string(v));
  }
  return static_cast<std::size_t>(v);
}

Ensemble to_ensemble(const EnsembleOpts &e) {
  if (!e.bilevel.empty()) {
    const auto v = split_numbers("--bilevel", e.bilevel, 4);
    return BilevelEnsemble{as_count("--bilevel r", v[0]), as_count("--bilevel m", v[1]), v[2],
                           v[3]};
  }
  if (!e.powerlaw.empty()) {
    const auto v = split_numbers("--powerlaw", e.powerlaw, 2);
    return PowerLawEnsemble{v[0], as_count("--powerlaw m", v[1])};
  }
  if (!e.uniform.empty()) {
    const auto v = split_numbers("--uniform", e.uniform, 2);
    return UniformEnsemble{v[0], as_count("--uniform m", v[1])};
  }
  return FileEnsemble{e.profile};
}

std::vector<std::size_t> parse_k_grid(const std::string &text) {
  std::vector<std::size_t> out;
  for (double v : split_numbers("--k-grid", text, std::count(text.begin(), text.end(), ',') + 1)) {
    out.push_back(as_count("--k-grid", v));
  }
  return out;
}

void print(const char *key, double v) { std::printf("%s = %.15g\n", key, v); }
void print(const char *key, std::size_t v) { std::printf("%s = %zu\n", key, v); }
void print(const char *key, const std::string &v) { std::printf("%s = %s\n", key, v.c_str()); }

struct PredictOpts {
  EnsembleOpts ens;
  std::size_t k = 0;
  std::string filter;
};

void cmd_predict(const PredictOpts &o) {
  const SpectralProfile profile = make_profile(to_ensemble(o.ens));
  if (o.k == 0 || o.k > profile.size()) {
    throw DomainError("predict: need 1 <= k <= m = " + std::to_string(profile.size()));
  }
  if (o.filter.empty()) {
    const Prediction p = solve_theta_tilde(profile, o.k);
    print("theta_tilde", p.theta_tilde);
    print("residual", p.residual);
    print("iterations", static_cast<std::size_t>(p.iterations));
    return;
  }
  const FilterSpec spec = parse_filter(o.filter);
  const Prediction p = solve_filtered(profile, o.k, spec);
  print("filter", spec.to_string());
  print("theta_tilde", p.theta_tilde);
  if (p.theta0) {
    print("theta0", *p.theta0);
  }
  if (p.log_theta0) {
    print("log_theta0", *p.log_theta0);
  }
  print("residual", p.residual);
  print("iterations", static_cast<std::size_t>(p.iterations));
}

struct SimulateOpts {
  EnsembleOpts ens;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t k = 0;
  std::string filter = "identity";
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  bool fixed_matrix = false;
};

ExperimentConfig base_config(const EnsembleOpts &ens, std::size_t n, std::size_t d,
                             std::size_t trials, std::uint64_t seed, bool fixed_matrix,
                             const SpectralProfile &profile) {
  ExperimentConfig cfg;
  cfg.ensemble = to_ensemble(ens);
  cfg.n = n == 0 ? profile.size() : n;
  cfg.d = d == 0 ? profile.size() : d;
  cfg.trials = trials;
  cfg.base_seed = seed;
  cfg.resample_matrix = !fixed_matrix;
  return cfg;
}

void cmd_simulate(const SimulateOpts &o) {
  const SpectralProfile profile = make_profile(to_ensemble(o.ens));
  ExperimentConfig cfg =
      base_config(o.ens, o.n, o.d, o.trials, o.seed, o.fixed_matrix, profile);
  cfg.k_grid = {o.k};
  cfg.filters = {parse_filter(o.filter)};
  const SweepTable t = run_sweep(cfg);
  const SweepCell &c = t.cells[0][0];
  print("filter", cfg.filters[0].to_string());
  print("trials", cfg.trials);
  print("mean", c.mean);
  print("stderr", c.std_error);
  print("prediction", c.prediction);
  print("lower", t.lower[0]);
}

struct SweepOpts {
  std::string config;
  EnsembleOpts ens;
  std::size_t n = 0;
  std::size_t d = 0;
  std::string k_grid;
  std::string filters = "identity";
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  bool fixed_matrix = false;
  std::string out;
};

void cmd_sweep(const SweepOpts &o, bool inline_ensemble) {
  ExperimentConfig cfg;
  if (!o.config.empty()) {
    if (inline_ensemble) {
      throw UsageError("sweep: --config cannot be combined with ensemble flags");
    }
    cfg = load_config(o.config);
  } else {
    if (!inline_ensemble) {
      throw UsageError("sweep: give --config or one ensemble flag");
    }
    if (o.k_grid.empty()) {
      throw UsageError("sweep: --k-grid is required without --config");
    }
    if (o.out.empty()) {
      throw UsageError("sweep: --out is required without --config");
    }
    const SpectralProfile profile = make_profile(to_ensemble(o.ens));
    cfg = base_config(o.ens, o.n, o.d, o.trials, o.seed, o.fixed_matrix, profile);
    cfg.k_grid = parse_k_grid(o.k_grid);
    cfg.filters = parse_filter_list(o.filters);
    cfg.out_path = o.out;
  }
  const SweepTable t = run_sweep(cfg);
  emit_dat(t, cfg.out_path);
  print("out", cfg.out_path.string());
  print("rows", t.k_grid.size());
  print("columns", 2 * t.filter_labels.size() + 3);
  print("trials", cfg.trials);
  for (std::size_t ki = 0; ki < t.k_grid.size(); ++ki) {
    std::printf("k = %zu", t.k_grid[ki]);
    for (std::size_t f = 0; f < t.filter_labels.size(); ++f) {
      std::printf("  %s: %.10g (pred %.10g)", t.filter_labels[f].c_str(), t.cells[ki][f].mean,
                  t.cells[ki][f].prediction);
    }
    std::printf("\n");
  }
}

struct BoundsOpts {
  EnsembleOpts ens;
  std::size_t k = 0;
  std::optional<std::size_t> r;
  std::string filter;
};

void cmd_bounds(const BoundsOpts &o) {
  const SpectralProfile profile = make_profile(to_ensemble(o.ens));
  if (o.k == 0 || o.k > profile.size()) {
    throw DomainError("bounds: need 1 <= k <= m = " + std::to_string(profile.size()));
  }
  if (o.r && *o.r >= o.k) {
    throw DomainError("bounds: need r < k (got r = " + std::to_string(*o.r) +
                      ", k = " + std::to_string(o.k) + ")");
  }
  const std::size_t r = o.r ? *o.r : prop1_best(profile, o.k).r;
  std::optional<FilterSpec> spec;
  if (!o.filter.empty()) {
    spec = parse_filter(o.filter);
  }
  const BoundReport rep = bound_report(profile, o.k, r, spec);
  print("k", rep.k);
  print("r", rep.r);
  print("m", rep.m);
  print("lower", rep.lower);
  print("prop1", *rep.prop1);
  print("prop1_best", *rep.prop1_best);
  print("prop1_best_r", *rep.prop1_best_r);
  if (rep.halko_tropp) {
    print("halko_tropp", *rep.halko_tropp);
  }
  if (rep.prop2) {
    print("filter", spec->to_string());
    print("prop2", *rep.prop2);
  }
}

bool has_ensemble(const EnsembleOpts &e) {
  return !(e.bilevel.empty() && e.powerlaw.empty() && e.uniform.empty() && e.profile.empty());
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Randomized SVD error predictor and Monte-Carlo harness"};
  app.require_subcommand(1);

  PredictOpts po;
  auto *predict = app.add_subcommand("predict", "solve for the predicted error");
  add_ensemble_opts(predict, po.ens);
  predict->add_option("--k", po.k, "sketch size")->required();
  predict->add_option("--filter", po.filter, "identity | power:q | poly:c1,c2,...");

  SimulateOpts so;
  auto *simulate = app.add_subcommand("simulate", "Monte-Carlo error at one k");
  add_ensemble_opts(simulate, so.ens);
  simulate->add_option("--n", so.n, "rows (default m)");
  simulate->add_option("--d", so.d, "columns (default m)");
  simulate->add_option("--k", so.k, "sketch size")->required();
  simulate->add_option("--filter", so.filter, "filter")->capture_default_str();
  simulate->add_option("--trials", so.trials, "trial count")->capture_default_str();
  simulate->add_option("--seed", so.seed, "base seed")->capture_default_str();
  simulate->add_flag("--fixed-matrix", so.fixed_matrix, "reuse one matrix for all trials");

  SweepOpts wo;
  auto *sweep = app.add_subcommand("sweep", "sweep k and filters, write a .dat table");
  sweep->add_option("--config", wo.config, "config file");
  auto *g = sweep->add_option_group("ensemble", "singular value profile (inline mode)");
  g->add_option("--bilevel", wo.ens.bilevel, "r,m,a,b");
  g->add_option("--powerlaw", wo.ens.powerlaw, "alpha,m");
  g->add_option("--uniform", wo.ens.uniform, "s,m");
  g->add_option("--profile", wo.ens.profile, "file of singular values");
  g->require_option(0, 1);
  sweep->add_option("--n", wo.n, "rows (default m)");
  sweep->add_option("--d", wo.d, "columns (default m)");
  sweep->add_option("--k-grid", wo.k_grid, "comma-separated k values");
  sweep->add_option("--filters", wo.filters, "comma-separated filters")->capture_default_str();
  sweep->add_option("--trials", wo.trials, "trial count")->capture_default_str();
  sweep->add_option("--seed", wo.seed, "base seed")->capture_default_str();
  sweep->add_flag("--fixed-matrix", wo.fixed_matrix, "reuse one matrix for all trials");
  sweep->add_option("--out", wo.out, ".dat output path");

  BoundsOpts bo;
  auto *bounds = app.add_subcommand("bounds", "lower and upper error bounds");
  add_ensemble_opts(bounds, bo.ens);
  bounds->add_option("--k", bo.k, "sketch size")->required();
  bounds->add_option("--r", bo.r, "target rank (default: best for prop1)");
  bounds->add_option("--filter", bo.filter, "filter for the filtered bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (predict->parsed()) {
      cmd_predict(po);
    } else if (simulate->parsed()) {
      cmd_simulate(so);
    } else if (sweep->parsed()) {
      cmd_sweep(wo, has_ensemble(wo.ens));
    } else if (bounds->parsed()) {
      cmd_bounds(bo);
    }
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return 0;
}
