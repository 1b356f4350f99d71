#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string &args) {
  const std::string cmd = std::string(PRSVD_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE *pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    return r;
  }
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.out.append(buf.data(), got);
  }
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::map<std::string, double> values(const std::string &out) {
  std::map<std::string, double> kv;
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);) {
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) {
      continue;
    }
    try {
      kv[line.substr(0, eq)] = std::stod(line.substr(eq + 3));
    } catch (const std::exception &) {
    }
  }
  return kv;
}

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / "prsvd_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::size_t header_columns(const std::filesystem::path &p) {
  std::ifstream in(p);
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::size_t n = 0;
  for (std::string tok; hs >> tok;) {
    ++n;
  }
  return n;
}

} // namespace

TEST(Cli, PredictBilevel) {
  const auto r = run("predict --bilevel 50,1000,1,0.7 --k 100");
  ASSERT_EQ(r.status, 0);
  EXPECT_NEAR(values(r.out).at("theta_tilde"), 461.9623292931264, 1e-8);
  EXPECT_NE(r.out.find("residual = "), std::string::npos);
}

TEST(Cli, PredictUniform) {
  const auto r = run("predict --uniform 1,100 --k 40");
  ASSERT_EQ(r.status, 0);
  EXPECT_NEAR(values(r.out).at("theta_tilde"), 60.0, 1e-9);
}

TEST(Cli, PredictFilteredOrdering) {
  const auto f = run("predict --powerlaw 1,1000 --k 100 --filter power:4");
  const auto u = run("predict --powerlaw 1,1000 --k 100");
  const auto b = run("bounds --powerlaw 1,1000 --k 100 --r 50");
  ASSERT_EQ(f.status, 0);
  const auto fv = values(f.out);
  EXPECT_TRUE(fv.count("theta0"));
  EXPECT_GE(fv.at("theta_tilde"), values(b.out).at("lower"));
  EXPECT_LE(fv.at("theta_tilde"), values(u.out).at("theta_tilde"));
}

TEST(Cli, SimulateUniform) {
  const auto r = run("simulate --uniform 1,50 --n 50 --d 50 --k 10 --trials 5 --seed 1");
  ASSERT_EQ(r.status, 0);
  EXPECT_NEAR(values(r.out).at("mean"), 40.0, 1e-6);
  EXPECT_EQ(r.out, run("simulate --uniform 1,50 --n 50 --d 50 --k 10 --trials 5 --seed 1").out);
}

TEST(Cli, SimulateBilevelTracksPrediction) {
  const auto r = run("simulate --bilevel 15,300,1,0.7 --n 300 --d 300 --k 40 --trials 50 --seed 3");
  ASSERT_EQ(r.status, 0);
  const auto v = values(r.out);
  EXPECT_LE(std::abs(v.at("mean") - v.at("prediction")), 0.03 * v.at("prediction"));
}

TEST(Cli, Bounds) {
  auto r = run("bounds --uniform 1,100 --k 21 --r 10");
  ASSERT_EQ(r.status, 0);
  auto v = values(r.out);
  EXPECT_NEAR(v.at("lower"), 79.0, 1e-9);
  EXPECT_NEAR(v.at("prop1"), 150.82, 0.005);
  EXPECT_NEAR(v.at("halko_tropp"), 180.0, 1e-9);
  r = run("bounds --bilevel 50,1000,1,0.7 --k 100 --r 50 --filter power:1");
  ASSERT_EQ(r.status, 0);
  v = values(r.out);
  EXPECT_NEAR(v.at("lower"), 441.0, 1e-9);
  EXPECT_NEAR(v.at("prop1"), 882.0, 0.05);
  EXPECT_TRUE(v.count("prop2"));
  EXPECT_EQ(run("bounds --uniform 1,100 --k 21 --r 21").status, 1);
}

TEST(Cli, SweepFromConfig) {
  const auto dir = scratch();
  const auto cfg = dir / "tiny.cfg";
  const auto out = dir / "tiny.dat";
  std::ofstream(cfg) << "ensemble = bilevel\nr = 3\nm = 20\na = 1\nb = 0.5\nn = 20\nd = 20\n"
                        "k_grid = 4,8,12\nfilters = power:0,power:1,power:2,power:6,power:10,"
                        "power:20\ntrials = 3\nseed = 5\nout = "
                     << out.string() << "\n";
  const auto r1 = run("sweep --config " + cfg.string());
  ASSERT_EQ(r1.status, 0) << r1.out;
  EXPECT_EQ(header_columns(out), 15u);
  std::ifstream in1(out, std::ios::binary);
  const std::string first{std::istreambuf_iterator<char>(in1), {}};
  ASSERT_EQ(run("sweep --config " + cfg.string()).status, 0);
  std::ifstream in2(out, std::ios::binary);
  const std::string second{std::istreambuf_iterator<char>(in2), {}};
  EXPECT_EQ(first, second);
}

TEST(Cli, SweepInline) {
  const auto out = scratch() / "inline.dat";
  const auto r = run("sweep --powerlaw 1,30 --k-grid 5,10 --filters power:0,power:1,power:2,"
                     "power:3,power:4 --trials 2 --out " + out.string());
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(header_columns(out), 13u);
}

TEST(Cli, SweepMissingOutKey) {
  const auto cfg = scratch() / "noout.cfg";
  std::ofstream(cfg) << "ensemble = uniform\na = 1\nm = 10\nn = 10\nd = 10\nk_grid = 2\n"
                        "filters = identity\ntrials = 1\nseed = 0\n";
  const std::string cmd =
      std::string(PRSVD_CLI_PATH) + " sweep --config " + cfg.string() + " 2>&1";
  FILE *pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string text;
  std::array<char, 512> buf{};
  for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) {
    text.append(buf.data(), n);
  }
  const int raw = pclose(pipe);
  EXPECT_EQ(WEXITSTATUS(raw), 2);
  EXPECT_NE(text.find("'out'"), std::string::npos) << text;
}

TEST(Cli, ExitStatusDiscipline) {
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("predict --k 3").status, 2);
  EXPECT_EQ(run("predict --uniform 1,10 --bilevel 1,2,1,0.5 --k 1").status, 2);
  EXPECT_EQ(run("predict --uniform 1,10").status, 2);
  EXPECT_EQ(run("predict --uniform x,10 --k 1").status, 2);
  EXPECT_EQ(run("predict --uniform 1,10 --k 2 --filter cubic").status, 2);
  EXPECT_EQ(run("predict --uniform 1,10 --k 11").status, 1);
  EXPECT_EQ(run("predict --bilevel 5,10,0.5,1 --k 2").status, 1);
  EXPECT_EQ(run("predict --powerlaw 0.4,10 --k 2").status, 1);
  EXPECT_EQ(run("predict --profile /nonexistent --k 2").status, 2);
  EXPECT_EQ(run("simulate --uniform 1,10 --n 5 --k 2").status, 1);
  EXPECT_EQ(run("sweep --uniform 1,10 --k-grid 2").status, 2);
  EXPECT_EQ(run("predict --help").status, 0);
}
