#include "prsvd/config.hpp"

#include "prsvd/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace prsvd {

SpectralProfile make_profile(const Ensemble &ensemble) {
  return std::visit(
      [](const auto &e) -> SpectralProfile {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, BilevelEnsemble>) {
          return bilevel_profile(e.r, e.m, e.a, e.b);
        } else if constexpr (std::is_same_v<T, PowerLawEnsemble>) {
          return powerlaw_profile(e.alpha, e.m);
        } else if constexpr (std::is_same_v<T, UniformEnsemble>) {
          return uniform_profile(e.s, e.m);
        } else {
          return load_profile(e.path);
        }
      },
      ensemble);
}

void validate(const ExperimentConfig &cfg, const SpectralProfile &profile) {
  const std::size_t m = profile.size();
  if (cfg.k_grid.empty()) {
    throw DomainError("config: k_grid is empty");
  }
  for (std::size_t i = 0; i < cfg.k_grid.size(); ++i) {
    if (cfg.k_grid[i] < 1) {
      throw DomainError("config: k_grid entries must be positive");
    }
    if (i > 0 && cfg.k_grid[i] <= cfg.k_grid[i - 1]) {
      throw DomainError("config: k_grid must be strictly increasing");
    }
  }
  if (cfg.k_grid.back() > m) {
    throw DomainError("config: max k = " + std::to_string(cfg.k_grid.back()) +
                      " exceeds rank m = " + std::to_string(m));
  }
  if (m > std::min(cfg.n, cfg.d)) {
    throw DomainError("config: rank m = " + std::to_string(m) + " exceeds min(n, d) = " +
                      std::to_string(std::min(cfg.n, cfg.d)));
  }
  if (cfg.trials < 1) {
    throw DomainError("config: trials must be at least 1");
  }
  if (cfg.filters.empty()) {
    throw DomainError("config: at least one filter required");
  }
}

namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "ensemble", "r", "m", "a", "b", "alpha", "profile_path", "n", "d",
    "k_grid", "filters", "trials", "seed", "resample_matrix", "out"};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

class KeyValues {
public:
  std::map<std::string, std::pair<std::string, std::size_t>> entries;

  const std::string &require(const std::string &key) const {
    const auto it = entries.find(key);
    if (it == entries.end()) {
      throw ParseError("config: missing required key '" + key + "'");
    }
    return it->second.first;
  }
  std::size_t line_of(const std::string &key) const {
    const auto it = entries.find(key);
    return it == entries.end() ? 0 : it->second.second;
  }
  bool has(const std::string &key) const { return entries.count(key) != 0; }

  template <typename T> T number(const std::string &key) const {
    const std::string &text = require(key);
    T v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
      throw ParseError("config: key '" + key + "' has invalid value '" + text + "'",
                       line_of(key));
    }
    return v;
  }
};

std::vector<std::size_t> parse_k_grid(const std::string &text, std::size_t line) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto pos = text.find(',', start);
    const std::string tok =
        trim(std::string_view(text).substr(start, pos == std::string::npos ? pos : pos - start));
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError("config: k_grid entry '" + tok + "' is not a nonnegative integer", line);
    }
    out.push_back(v);
    if (pos == std::string::npos) {
      break;
    }
    start = pos + 1;
  }
  return out;
}

} // namespace

ExperimentConfig parse_config(std::istream &in, const std::filesystem::path &base_dir) {
  KeyValues kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') {
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(lineno) + ": expected 'key = value'",
                       lineno);
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (!kKnownKeys.contains(key)) {
      throw ParseError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'",
                       lineno);
    }
    if (!kv.entries.emplace(key, std::make_pair(value, lineno)).second) {
      throw ParseError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'",
                       lineno);
    }
  }

  ExperimentConfig cfg;
  const std::string &kind = kv.require("ensemble");
  if (kind == "bilevel") {
    cfg.ensemble = BilevelEnsemble{kv.number<std::size_t>("r"), kv.number<std::size_t>("m"),
                                   kv.number<double>("a"), kv.number<double>("b")};
  } else if (kind == "powerlaw") {
    cfg.ensemble = PowerLawEnsemble{kv.number<double>("alpha"), kv.number<std::size_t>("m")};
  } else if (kind == "uniform") {
    cfg.ensemble = UniformEnsemble{kv.number<double>("a"), kv.number<std::size_t>("m")};
  } else if (kind == "file") {
    std::filesystem::path p = kv.require("profile_path");
    if (p.is_relative() && !base_dir.empty()) {
      p = base_dir / p;
    }
    cfg.ensemble = FileEnsemble{p};
  } else {
    throw ParseError("config: ensemble must be bilevel, powerlaw, uniform or file (got '" + kind +
                         "')",
                     kv.line_of("ensemble"));
  }
  cfg.n = kv.number<std::size_t>("n");
  cfg.d = kv.number<std::size_t>("d");
  cfg.k_grid = parse_k_grid(kv.require("k_grid"), kv.line_of("k_grid"));
  try {
    cfg.filters = parse_filter_list(kv.require("filters"));
  } catch (const ParseError &e) {
    throw ParseError(std::string("config: key 'filters': ") + e.what(), kv.line_of("filters"));
  }
  cfg.trials = kv.number<std::size_t>("trials");
  cfg.base_seed = kv.number<std::uint64_t>("seed");
  if (kv.has("resample_matrix")) {
    const std::string &v = kv.require("resample_matrix");
    if (v == "true" || v == "1") {
      cfg.resample_matrix = true;
    } else if (v == "false" || v == "0") {
      cfg.resample_matrix = false;
    } else {
      throw ParseError("config: resample_matrix must be true or false",
                       kv.line_of("resample_matrix"));
    }
  }
  cfg.out_path = kv.require("out");
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open config file '" + path.string() + "'");
  }
  return parse_config(in, path.parent_path());
}

} // namespace prsvd
