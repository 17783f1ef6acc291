// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#include "aow/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace aow {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
T parse_int(std::string_view key, std::string_view v) {
  T x{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("setting '" + std::string(key) + "': expected an integer, got '" + std::string(v) + "'");
  }
  return x;
}

double parse_double(std::string_view key, std::string_view v) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("setting '" + std::string(key) + "': expected a number, got '" + std::string(v) + "'");
  }
  return x;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("setting '" + std::string(key) + "': expected true or false, got '" + std::string(v) + "'");
}

using Setter = std::function<void(EpisodeConfig&, std::string_view, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    // Generator.
    t["seed"] = [](auto& c, auto k, auto v) { c.gen.seed = parse_int<std::uint64_t>(k, v); };
    t["dim"] = [](auto& c, auto k, auto v) { c.gen.dim = parse_int<int>(k, v); };
    t["n_entities"] = [](auto& c, auto k, auto v) { c.gen.n_entities = parse_int<int>(k, v); };
    t["polarity_ratio"] = [](auto& c, auto k, auto v) { c.gen.polarity_ratio = parse_double(k, v); };
    t["n_levels"] = [](auto& c, auto k, auto v) { c.gen.n_levels = parse_int<int>(k, v); };
    t["arena_extent"] = [](auto& c, auto k, auto v) { c.gen.arena_extent = parse_double(k, v); };
    t["inertia_min"] = [](auto& c, auto k, auto v) { c.gen.inertia_min = parse_double(k, v); };
    t["inertia_max"] = [](auto& c, auto k, auto v) { c.gen.inertia_max = parse_double(k, v); };
    t["basis"] = [](auto& c, auto, auto v) {
      c.gen.grammar.basis.clear();
      for (auto item : split_list(v)) c.gen.grammar.basis.push_back(parse_term(item));
    };
    t["max_terms"] = [](auto& c, auto k, auto v) { c.gen.grammar.max_terms = parse_int<int>(k, v); };
    t["coeff_min"] = [](auto& c, auto k, auto v) { c.gen.grammar.coeff_min = parse_double(k, v); };
    t["coeff_max"] = [](auto& c, auto k, auto v) { c.gen.grammar.coeff_max = parse_double(k, v); };
    t["polarity_coupling"] = [](auto& c, auto k, auto v) {
      c.gen.grammar.polarity_coupling = parse_bool(k, v);
    };
    t["regime_times"] = [](auto& c, auto k, auto v) {
      c.gen.drift.regime_times.clear();
      for (auto item : split_list(v)) c.gen.drift.regime_times.push_back(parse_int<std::int64_t>(k, item));
    };
    t["smooth_rate"] = [](auto& c, auto k, auto v) { c.gen.drift.smooth_rate = parse_double(k, v); };
    t["drift_levels"] = [](auto& c, auto k, auto v) {
      c.gen.drift.drift_levels.clear();
      for (auto item : split_list(v)) c.gen.drift.drift_levels.push_back(parse_int<int>(k, item));
    };
    // Dynamics.
    t["h"] = [](auto& c, auto k, auto v) { c.step.h = parse_double(k, v); };
    t["a_max"] = [](auto& c, auto k, auto v) { c.step.a_max = parse_double(k, v); };
    t["v_max"] = [](auto& c, auto k, auto v) { c.step.v_max = parse_double(k, v); };
    t["eps_r"] = [](auto& c, auto k, auto v) { c.step.eps_r = parse_double(k, v); };
    // Body.
    t["body_size"] = [](auto& c, auto k, auto v) { c.body.size = parse_int<int>(k, v); };
    t["body_mode"] = [](auto& c, auto k, auto v) {
      if (v == "fixed") {
        c.body.mode = BodyMode::kFixed;
      } else if (v == "destructible") {
        c.body.mode = BodyMode::kDestructible;
      } else {
        throw ConfigError("setting '" + std::string(k) + "': expected fixed or destructible");
      }
    };
    t["window"] = [](auto& c, auto k, auto v) { c.body.window_halfwidth = parse_double(k, v); };
    t["resolution"] = [](auto& c, auto k, auto v) { c.body.resolution = parse_int<int>(k, v); };
    t["f_max"] = [](auto& c, auto k, auto v) { c.body.f_max = parse_double(k, v); };
    t["d_hit"] = [](auto& c, auto k, auto v) { c.body.d_hit = parse_double(k, v); };
    t["stress_threshold"] = [](auto& c, auto k, auto v) { c.body.stress_threshold = parse_double(k, v); };
    // Problems and scoring.
    t["scriptor_len"] = [](auto& c, auto k, auto v) { c.problem.scriptor_len = parse_int<int>(k, v); };
    t["epsilon"] = [](auto& c, auto k, auto v) { c.problem.epsilon = parse_double(k, v); };
    t["timeout"] = [](auto& c, auto k, auto v) { c.problem.timeout = parse_int<std::int64_t>(k, v); };
    t["null_rollouts"] = [](auto& c, auto k, auto v) { c.problem.null_rollouts = parse_int<int>(k, v); };
    t["max_regenerations"] = [](auto& c, auto k, auto v) {
      c.problem.max_regenerations = parse_int<int>(k, v);
    };
    t["s_max"] = [](auto& c, auto k, auto v) { c.scoring.s_max = parse_double(k, v); };
    t["lambda_m"] = [](auto& c, auto k, auto v) { c.scoring.lambda_m = parse_double(k, v); };
    t["lambda_c"] = [](auto& c, auto k, auto v) { c.scoring.lambda_c = parse_double(k, v); };
    // Metrics.
    t["metric_window"] = [](auto& c, auto k, auto v) { c.metrics.window = parse_int<int>(k, v); };
    t["theta"] = [](auto& c, auto k, auto v) { c.metrics.theta = parse_double(k, v); };
    t["pre_win"] = [](auto& c, auto k, auto v) { c.metrics.pre_win = parse_int<int>(k, v); };
    t["post_win"] = [](auto& c, auto k, auto v) { c.metrics.post_win = parse_int<int>(k, v); };
    t["weights"] = [](auto& c, auto k, auto v) {
      const auto items = split_list(v);
      if (items.size() != 3) throw ConfigError("setting 'weights': expected three comma-separated numbers");
      for (std::size_t i = 0; i < 3; ++i) c.metrics.weights[i] = parse_double(k, items[i]);
    };
    // Episode.
    t["episode_len"] = [](auto& c, auto k, auto v) { c.episode_len = parse_int<std::int64_t>(k, v); };
    t["problems_per_regime"] = [](auto& c, auto k, auto v) { c.problems_per_regime = parse_int<int>(k, v); };
    t["tick_budget_ms"] = [](auto& c, auto k, auto v) {
      c.tick_budget = std::chrono::milliseconds(parse_int<std::int64_t>(k, v));
    };
    t["handshake_budget_ms"] = [](auto& c, auto k, auto v) {
      c.handshake_budget = std::chrono::milliseconds(parse_int<std::int64_t>(k, v));
    };
    t["checkpoint_every"] = [](auto& c, auto k, auto v) { c.checkpoint_every = parse_int<std::int64_t>(k, v); };
    t["retries"] = [](auto& c, auto k, auto v) { c.retries = parse_int<int>(k, v); };
    return t;
  }();
  return table;
}

std::string num(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

template <typename T>
std::string join(const std::vector<T>& xs) {
  std::ostringstream s;
  for (std::size_t i = 0; i < xs.size(); ++i) s << (i ? "," : "") << xs[i];
  return s.str();
}

}  // namespace

void apply_setting(EpisodeConfig& cfg, std::string_view key, std::string_view value) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError("unknown setting '" + std::string(key) + "'");
  try {
    it->second(cfg, key, trim(value));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("setting '" + std::string(key) + "': " + e.what());
  }
}

EpisodeConfig parse_config(std::string_view text, const std::string& source, EpisodeConfig base) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
      }
      try {
        apply_setting(base, trim(line.substr(0, eq)), line.substr(eq + 1));
      } catch (const ConfigError& e) {
        throw ConfigError(source + ":" + std::to_string(line_no) + ": " + e.what());
      }
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return base;
}

EpisodeConfig load_config(const std::string& path, EpisodeConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path, std::move(base));
}

std::string config_to_text(const EpisodeConfig& c) {
  std::ostringstream o;
  std::vector<std::string> basis;
  for (Term t : c.gen.grammar.basis) basis.emplace_back(term_name(t));
  o << "seed = " << c.gen.seed << '\n'
    << "dim = " << c.gen.dim << '\n'
    << "n_entities = " << c.gen.n_entities << '\n'
    << "polarity_ratio = " << num(c.gen.polarity_ratio) << '\n'
    << "n_levels = " << c.gen.n_levels << '\n'
    << "arena_extent = " << num(c.gen.arena_extent) << '\n'
    << "inertia_min = " << num(c.gen.inertia_min) << '\n'
    << "inertia_max = " << num(c.gen.inertia_max) << '\n'
    << "basis = " << join(basis) << '\n'
    << "max_terms = " << c.gen.grammar.max_terms << '\n'
    << "coeff_min = " << num(c.gen.grammar.coeff_min) << '\n'
    << "coeff_max = " << num(c.gen.grammar.coeff_max) << '\n'
    << "polarity_coupling = " << (c.gen.grammar.polarity_coupling ? "true" : "false") << '\n'
    << "regime_times = " << join(c.gen.drift.regime_times) << '\n'
    << "smooth_rate = " << num(c.gen.drift.smooth_rate) << '\n'
    << "drift_levels = " << join(c.gen.drift.drift_levels) << '\n'
    << "h = " << num(c.step.h) << '\n'
    << "a_max = " << num(c.step.a_max) << '\n'
    << "v_max = " << num(c.step.v_max) << '\n'
    << "eps_r = " << num(c.step.eps_r) << '\n'
    << "body_size = " << c.body.size << '\n'
    << "body_mode = " << (c.body.mode == BodyMode::kFixed ? "fixed" : "destructible") << '\n'
    << "window = " << num(c.body.window_halfwidth) << '\n'
    << "resolution = " << c.body.resolution << '\n'
    << "f_max = " << num(c.body.f_max) << '\n'
    << "d_hit = " << num(c.body.d_hit) << '\n'
    << "stress_threshold = " << num(c.body.stress_threshold) << '\n'
    << "scriptor_len = " << c.problem.scriptor_len << '\n'
    << "epsilon = " << num(c.problem.epsilon) << '\n'
    << "timeout = " << c.problem.timeout << '\n'
    << "null_rollouts = " << c.problem.null_rollouts << '\n'
    << "max_regenerations = " << c.problem.max_regenerations << '\n'
    << "s_max = " << num(c.scoring.s_max) << '\n'
    << "lambda_m = " << num(c.scoring.lambda_m) << '\n'
    << "lambda_c = " << num(c.scoring.lambda_c) << '\n'
    << "metric_window = " << c.metrics.window << '\n'
    << "theta = " << num(c.metrics.theta) << '\n'
    << "pre_win = " << c.metrics.pre_win << '\n'
    << "post_win = " << c.metrics.post_win << '\n'
    << "weights = " << num(c.metrics.weights[0]) << ',' << num(c.metrics.weights[1]) << ','
    << num(c.metrics.weights[2]) << '\n'
    << "episode_len = " << c.episode_len << '\n'
    << "problems_per_regime = " << c.problems_per_regime << '\n'
    << "tick_budget_ms = " << c.tick_budget.count() << '\n'
    << "handshake_budget_ms = " << c.handshake_budget.count() << '\n'
    << "checkpoint_every = " << c.checkpoint_every << '\n'
    << "retries = " << c.retries << '\n';
  return o.str();
}

}  // namespace aow
