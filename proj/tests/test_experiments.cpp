#include "prsvd/config.hpp"
#include "prsvd/errors.hpp"
#include "prsvd/experiments.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace prsvd;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.ensemble = BilevelEnsemble{3, 20, 1.0, 0.5};
  cfg.n = 25;
  cfg.d = 22;
  cfg.k_grid = {4, 8};
  cfg.filters = {FilterSpec::identity(), FilterSpec::power(2)};
  cfg.trials = 6;
  cfg.base_seed = 99;
  return cfg;
}

std::string read_file(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

ExperimentConfig parse_text(const std::string &text) {
  std::istringstream in(text);
  return parse_config(in);
}

const char *kValidConfig = R"(# bilevel sweep
ensemble = bilevel
r = 3
m = 20
a = 1
b = 0.5
n = 25
d = 22
k_grid = 4, 8
filters = identity,power:2
trials = 6
seed = 99
out = small.dat
)";

} // namespace

TEST(DeriveSeed, DeterministicAndInjectiveInTrial) {
  EXPECT_EQ(derive_seed(1, 2, 3, 4), derive_seed(1, 2, 3, 4));
  std::set<std::uint64_t> seen;
  for (std::uint64_t t = 0; t < 10000; ++t) {
    seen.insert(derive_seed(12345, 40, 2, t));
  }
  EXPECT_EQ(seen.size(), 10000u);
  EXPECT_NE(derive_seed(1, 2, 3, 4), derive_seed(1, 2, 4, 4));
  EXPECT_NE(derive_seed(1, 2, 3, 4), derive_seed(1, 3, 3, 4));
  EXPECT_NE(derive_seed(1, 2, 3, 4), derive_seed(2, 2, 3, 4));
}

TEST(DeriveSeed, SharedStreams) {
  auto cfg = small_config();
  EXPECT_NE(matrix_seed(cfg, 0), matrix_seed(cfg, 1));
  EXPECT_EQ(sketch_seed(cfg, 4, 2), sketch_seed(cfg, 4, 2));
  EXPECT_NE(sketch_seed(cfg, 4, 2), sketch_seed(cfg, 8, 2));
  cfg.resample_matrix = false;
  EXPECT_EQ(matrix_seed(cfg, 0), matrix_seed(cfg, 5));
}

TEST(RunTrial, Deterministic) {
  const auto cfg = small_config();
  EXPECT_EQ(run_trial(cfg, 4, FilterSpec::power(2), 3), run_trial(cfg, 4, FilterSpec::power(2), 3));
}

TEST(RunTrial, IdentityMatrixResidual) {
  ExperimentConfig cfg;
  cfg.ensemble = UniformEnsemble{1.0, 30};
  cfg.n = cfg.d = 30;
  cfg.k_grid = {7};
  cfg.filters = {FilterSpec::identity()};
  cfg.trials = 1;
  for (std::size_t k : {1u, 7u, 29u}) {
    EXPECT_NEAR(run_trial(cfg, k, FilterSpec::identity(), 0), 30.0 - k, 1e-8);
  }
}

TEST(RunTrial, ErrorsCarryContext) {
  auto cfg = small_config();
  try {
    run_trial(cfg, 21, FilterSpec::identity(), 2);
    FAIL() << "expected TrialError";
  } catch (const TrialError &e) {
    EXPECT_EQ(e.k(), 21u);
    EXPECT_EQ(e.trial(), 2u);
    EXPECT_NE(std::string(e.what()).find("trial = 2"), std::string::npos);
  }
}

TEST(RunSweep, MatchesRunTrialAndIsScheduleIndependent) {
  const auto cfg = small_config();
  const auto t = run_sweep(cfg);
  ASSERT_EQ(t.cells.size(), 2u);
  for (std::size_t ki = 0; ki < 2; ++ki) {
    for (std::size_t f = 0; f < 2; ++f) {
      for (std::size_t tr = 0; tr < cfg.trials; ++tr) {
        EXPECT_EQ(t.cells[ki][f].samples[tr], run_trial(cfg, cfg.k_grid[ki], cfg.filters[f], tr));
      }
      EXPECT_GE(t.cells[ki][f].mean + 3 * t.cells[ki][f].std_error, t.lower[ki]);
    }
  }
  EXPECT_EQ(format_dat(t), format_dat(run_sweep(cfg)));
}

TEST(RunSweep, FullRankRow) {
  ExperimentConfig cfg;
  cfg.ensemble = PowerLawEnsemble{1.0, 12};
  cfg.n = 15;
  cfg.d = 12;
  cfg.k_grid = {12};
  cfg.filters = {FilterSpec::identity()};
  cfg.trials = 1;
  const auto t = run_sweep(cfg);
  EXPECT_NEAR(t.cells[0][0].mean, 0.0, 1e-12);
  EXPECT_EQ(t.cells[0][0].prediction, 0.0);
  EXPECT_EQ(t.lower[0], 0.0);
  EXPECT_EQ(t.cells[0][0].std_error, 0.0);
}

TEST(RunSweep, FixedMatrixSharesA) {
  auto cfg = small_config();
  cfg.resample_matrix = false;
  cfg.ensemble = UniformEnsemble{1.0, 20};
  const auto t = run_sweep(cfg);
  for (std::size_t tr = 0; tr < cfg.trials; ++tr) {
    EXPECT_NEAR(t.cells[0][0].samples[tr], 16.0, 1e-8);
  }
}

TEST(RunSweep, StdErrorShrinksWithMoreTrials) {
  auto cfg = small_config();
  cfg.k_grid = {6};
  cfg.filters = {FilterSpec::identity()};
  cfg.trials = 200;
  const double s1 = run_sweep(cfg).cells[0][0].std_error;
  cfg.trials = 400;
  cfg.base_seed = 7;
  const double s2 = run_sweep(cfg).cells[0][0].std_error;
  EXPECT_NEAR(s1 / s2, std::sqrt(2.0), 0.25 * std::sqrt(2.0));
}

TEST(RunSweep, RejectsInvalidConfig) {
  auto cfg = small_config();
  cfg.k_grid = {8, 4};
  EXPECT_THROW(run_sweep(cfg), DomainError);
  cfg = small_config();
  cfg.k_grid = {21};
  EXPECT_THROW(run_sweep(cfg), DomainError);
  cfg = small_config();
  cfg.n = 10;
  EXPECT_THROW(run_sweep(cfg), DomainError);
  cfg = small_config();
  cfg.trials = 0;
  EXPECT_THROW(run_sweep(cfg), DomainError);
}

TEST(Dat, ShapeAndRoundTrip) {
  auto cfg = small_config();
  cfg.filters = {FilterSpec::power(1)};
  cfg.k_grid = {10, 20};
  const auto t = run_sweep(cfg);
  const std::string text = format_dat(t);
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    lines.push_back(line);
  }
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "k q0 qpred0 lwbnd upbnd");
  std::istringstream row(lines[1]);
  std::size_t cols = 0;
  for (std::string tok; row >> tok;) {
    ++cols;
  }
  EXPECT_EQ(cols, 5u);

  const auto back = parse_dat(text);
  ASSERT_EQ(back.k_grid, t.k_grid);
  for (std::size_t ki = 0; ki < t.k_grid.size(); ++ki) {
    EXPECT_LE(prsvd::testing::rel_diff(back.cells[ki][0].mean, t.cells[ki][0].mean), 1e-6);
    EXPECT_LE(prsvd::testing::rel_diff(back.cells[ki][0].prediction, t.cells[ki][0].prediction),
              1e-6);
    EXPECT_LE(prsvd::testing::rel_diff(back.lower[ki], t.lower[ki]), 1e-6);
    EXPECT_LE(prsvd::testing::rel_diff(back.upper[ki], t.upper[ki]), 1e-6);
  }
}

TEST(Dat, ColumnCountIsTwoFPlusThree) {
  SweepTable t;
  t.k_grid = {5};
  t.lower = {1};
  t.upper = {2};
  for (std::size_t f = 1; f <= 6; ++f) {
    t.filter_labels.assign(f, "identity");
    t.cells.assign(1, std::vector<SweepCell>(f));
    const auto back = parse_dat(format_dat(t));
    std::istringstream header(format_dat(t).substr(0, format_dat(t).find('\n')));
    std::size_t cols = 0;
    for (std::string tok; header >> tok;) {
      ++cols;
    }
    EXPECT_EQ(cols, 2 * f + 3);
    EXPECT_EQ(back.filter_labels.size(), f);
  }
  EXPECT_THROW(parse_dat("k q0 lwbnd upbnd\n"), ParseError);
  EXPECT_THROW(parse_dat("k q0 qpred0 lwbnd upbnd\n1 2 3\n"), ParseError);
}

TEST(Dat, EmitWritesFile) {
  const auto t = run_sweep(small_config());
  const auto path = std::filesystem::temp_directory_path() / "prsvd_emit_test.dat";
  emit_dat(t, path);
  EXPECT_EQ(read_file(path), format_dat(t));
  EXPECT_THROW(emit_dat(t, "/nonexistent_dir/x.dat"), std::runtime_error);
}

TEST(Config, ParsesAllKeys) {
  const auto cfg = parse_text(kValidConfig);
  const auto &b = std::get<BilevelEnsemble>(cfg.ensemble);
  EXPECT_EQ(b.r, 3u);
  EXPECT_EQ(b.m, 20u);
  EXPECT_EQ(cfg.n, 25u);
  EXPECT_EQ(cfg.k_grid, (std::vector<std::size_t>{4, 8}));
  ASSERT_EQ(cfg.filters.size(), 2u);
  EXPECT_EQ(cfg.filters[1], FilterSpec::power(2));
  EXPECT_EQ(cfg.trials, 6u);
  EXPECT_EQ(cfg.base_seed, 99u);
  EXPECT_TRUE(cfg.resample_matrix);
  EXPECT_EQ(cfg.out_path, "small.dat");
  EXPECT_EQ(format_dat(run_sweep(cfg)), format_dat(run_sweep(small_config())));
}

TEST(Config, Errors) {
  auto expect_message = [](const std::string &text, const std::string &needle) {
    try {
      parse_text(text);
      FAIL() << "expected ParseError containing " << needle;
    } catch (const ParseError &e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  };
  std::string no_out = kValidConfig;
  no_out.erase(no_out.find("out = "));
  expect_message(no_out, "'out'");
  expect_message(std::string(kValidConfig) + "colour = red\n", "'colour'");
  expect_message(std::string(kValidConfig) + "trials = 7\n", "'trials'");
  expect_message(std::string(kValidConfig) + "garbage line\n", "key = value");
  std::string bad_k = kValidConfig;
  bad_k.replace(bad_k.find("4, 8"), 4, "4, x");
  expect_message(bad_k, "k_grid");
  std::string bad_filter = kValidConfig;
  bad_filter.replace(bad_filter.find("power:2"), 7, "cubic");
  expect_message(bad_filter, "filters");
}

TEST(Config, PowerLawAndFileEnsembles) {
  const auto pl = parse_text("ensemble = powerlaw\nalpha = 1\nm = 50\nn = 60\nd = 50\n"
                             "k_grid = 5,10\nfilters = power:0,power:4\ntrials = 2\nseed = 1\n"
                             "resample_matrix = false\nout = pl.dat\n");
  EXPECT_EQ(std::get<PowerLawEnsemble>(pl.ensemble).alpha, 1.0);
  EXPECT_FALSE(pl.resample_matrix);

  const auto dir = std::filesystem::temp_directory_path() / "prsvd_cfg_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "prof.txt") << "3\n2\n1\n";
  std::ofstream(dir / "sweep.cfg") << "ensemble = file\nprofile_path = prof.txt\nn = 4\nd = 4\n"
                                      "k_grid = 1,2\nfilters = identity\ntrials = 1\nseed = 0\n"
                                      "out = f.dat\n";
  const auto fc = load_config(dir / "sweep.cfg");
  EXPECT_EQ(make_profile(fc.ensemble).size(), 3u);
  EXPECT_THROW(load_config(dir / "missing.cfg"), ParseError);
}
