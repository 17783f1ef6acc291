// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#include "aow/agents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace aow {

std::vector<std::string> MindSession::handle(const std::string& line) {
  const ToAgent msg = decode_to_agent(line);
  std::vector<std::string> out;
  if (state_.phase == AgentPhase::kHandshake && !std::holds_alternative<HelloToAgent>(msg) &&
      !std::holds_alternative<ByeMsg>(msg)) {
    throw ProtocolError("protocol: message received before hello");
  }
  if (const auto* hello = std::get_if<HelloToAgent>(&msg)) {
    if (hello->version != kProtocolVersion) throw ProtocolError("protocol: version mismatch");
    mind_->on_hello(*hello);
    state_.phase = AgentPhase::kIdle;
    out.push_back(encode(FromAgent{HelloFromAgent{kProtocolVersion, mind_->name()}}));
  } else if (const auto* problem = std::get_if<ProblemMsg>(&msg)) {
    state_.phase = AgentPhase::kSolving;
    state_.active_problem = problem->id;
    mind_->on_problem(*problem);
  } else if (const auto* obs = std::get_if<ObservationMsg>(&msg)) {
    ActionMsg action = mind_->on_observation(*obs);
    action.tick = obs->tick;
    const ResourcesMsg res = mind_->resources();
    state_.reported_M = std::max(state_.reported_M, res.M);
    state_.reported_C = std::max(state_.reported_C, res.C);
    out.push_back(encode(FromAgent{ResourcesMsg{state_.reported_M, state_.reported_C}}));
    out.push_back(encode(FromAgent{std::move(action)}));
  } else if (const auto* score = std::get_if<ScoreMsg>(&msg)) {
    mind_->on_score(*score);
    state_.phase = AgentPhase::kIdle;
    state_.active_problem.reset();
  } else if (std::holds_alternative<ByeMsg>(msg)) {
    finished_ = true;
  }
  return out;
}

ActionMsg NullMind::on_observation(const ObservationMsg& obs) { return ActionMsg{obs.tick, {}}; }

ActionMsg RandomMind::on_observation(const ObservationMsg& obs) {
  ActionMsg a;
  a.tick = obs.tick;
  for (int id : hello_.members) a.forces[id] = uniform_in_ball(rng_, hello_.f_max, hello_.dim);
  return a;
}

namespace {

// Separable [1 2 1] / 4 blur per channel, zero padded; center cell masked
// because the body always sits there.
std::vector<double> prepare(const std::vector<double>& grid, int res) {
  std::vector<double> src = grid;
  const int center = (res + 1) / 2 - 1;
  for (int c = 0; c < 2; ++c) src[static_cast<std::size_t>((c * res + center) * res + center)] = 0.0;
  const auto at = [res](const std::vector<double>& g, int c, int x, int y) {
    if (x < 0 || y < 0 || x >= res || y >= res) return 0.0;
    return g[static_cast<std::size_t>((c * res + x) * res + y)];
  };
  std::vector<double> tmp(src.size(), 0.0);
  std::vector<double> out(src.size(), 0.0);
  for (int c = 0; c < 2; ++c) {
    for (int x = 0; x < res; ++x) {
      for (int y = 0; y < res; ++y) {
        tmp[static_cast<std::size_t>((c * res + x) * res + y)] =
            0.25 * at(src, c, x - 1, y) + 0.5 * at(src, c, x, y) + 0.25 * at(src, c, x + 1, y);
      }
    }
    for (int x = 0; x < res; ++x) {
      for (int y = 0; y < res; ++y) {
        out[static_cast<std::size_t>((c * res + x) * res + y)] =
            0.25 * at(tmp, c, x, y - 1) + 0.5 * at(tmp, c, x, y) + 0.25 * at(tmp, c, x, y + 1);
      }
    }
  }
  return out;
}

double correlation(const std::vector<double>& to, const std::vector<double>& from, int res, int sx,
                   int sy) {
  double acc = 0.0;
  for (int c = 0; c < 2; ++c) {
    for (int x = std::max(0, -sx); x < std::min(res, res - sx); ++x) {
      for (int y = std::max(0, -sy); y < std::min(res, res - sy); ++y) {
        acc += to[static_cast<std::size_t>((c * res + x) * res + y)] *
               from[static_cast<std::size_t>((c * res + x + sx) * res + y + sy)];
      }
    }
  }
  return acc;
}

double parabolic_peak(double left, double mid, double right) {
  const double denom = left - 2.0 * mid + right;
  if (denom >= 0.0) return 0.0;
  return std::clamp(0.5 * (left - right) / denom, -0.5, 0.5);
}

}  // namespace

std::array<double, 2> GreedyMind::register_offset(const std::vector<double>& from,
                                                  const std::vector<double>& to) const {
  // Finds s with to(i) ~ from(i + s): the body displacement, in cells, that
  // turns the `from` view into the `to` view.
  const int res = hello_.resolution;
  const auto a = prepare(from, res);
  const auto b = prepare(to, res);
  const int span = res - 1;
  double best = 0.0;
  int bx = 0;
  int by = 0;
  bool found = false;
  for (int sx = -span; sx <= span; ++sx) {
    for (int sy = -span; sy <= span; ++sy) {
      const double c = correlation(b, a, res, sx, sy);
      // Strictly better, or equal and closer to zero.
      const bool closer = std::abs(sx) + std::abs(sy) < std::abs(bx) + std::abs(by);
      if (c > best || (found && c == best && closer)) {
        best = c;
        bx = sx;
        by = sy;
        found = true;
      }
    }
  }
  if (!found) return {0.0, 0.0};
  double fx = 0.0;
  double fy = 0.0;
  if (std::abs(bx) < span) {
    fx = parabolic_peak(correlation(b, a, res, bx - 1, by), best, correlation(b, a, res, bx + 1, by));
  }
  if (std::abs(by) < span) {
    fy = parabolic_peak(correlation(b, a, res, bx, by - 1), best, correlation(b, a, res, bx, by + 1));
  }
  return {bx + fx, by + fy};
}

void GreedyMind::on_hello(const HelloToAgent& hello) {
  Mind::on_hello(hello);
  // Prior: unit inertia, so one unit of force moves the body one world unit
  // per tick^2; converted to cells.
  const double cell = 2.0 * hello.window / std::max(1, hello.resolution);
  prior_gain_ = {1.0 / cell, 1.0 / cell};
  reset_model();
  velocity_ = {0.0, 0.0};
  last_force_ = {0.0, 0.0};
  last_grid_.clear();
  resets_ = 0;
}

void GreedyMind::reset_model() {
  gain_ = prior_gain_;
  const double f = std::max(hello_.f_max, 1e-12);
  const double p0 = 1.0 / (params_.prior_weight * f * f);
  rls_p_ = {p0, p0};
  err_avg_ = 0.0;
  err_baseline_ = 0.0;
  spike_run_ = 0;
}

void GreedyMind::on_problem(const ProblemMsg& problem) { problem_ = problem; }

void GreedyMind::on_score(const ScoreMsg&) { problem_.reset(); }

ActionMsg GreedyMind::on_observation(const ObservationMsg& obs) {
  ActionMsg action;
  action.tick = obs.tick;
  if (hello_.members.empty() || hello_.resolution < 1) return action;

  // Model update from the shift observed over the last tick.
  if (!last_grid_.empty()) {
    const auto moved = register_offset(last_grid_, obs.grid);
    double err = 0.0;
    for (int k = 0; k < 2; ++k) {
      const double before = velocity_[k];
      const double x = last_force_[k];
      const double predicted = before + gain_[k] * x;
      const double innovation = moved[k] - predicted;
      err += std::abs(innovation);
      if (x != 0.0) {
        const double y = moved[k] - before;
        const double p = rls_p_[k];
        const double gain_k = p * x / (params_.forgetting + x * p * x);
        gain_[k] += gain_k * (y - gain_[k] * x);
        gain_[k] = std::max(gain_[k], 0.05 * prior_gain_[k]);
        rls_p_[k] = (p - gain_k * x * p) / params_.forgetting;
        ++updates_;
      }
      velocity_[k] = predicted + 0.3 * innovation;
    }
    err_avg_ = 0.8 * err_avg_ + 0.2 * err;
    err_baseline_ = err_baseline_ == 0.0 ? err_avg_ : 0.99 * err_baseline_ + 0.01 * err_avg_;
    if (err_baseline_ > 1e-9 && err_avg_ > params_.drift_spike * err_baseline_) {
      if (++spike_run_ >= params_.drift_patience) {
        reset_model();
        ++resets_;
      }
    } else {
      spike_run_ = 0;
    }
  }
  last_grid_ = obs.grid;

  std::array<double, 2> offset{0.0, 0.0};
  if (problem_) offset = register_offset(obs.grid, problem_->target);

  // Candidates: zero first so that ties keep still, then +-f_max per axis.
  const int dim = hello_.dim;
  std::vector<Vec> candidates{Vec{}};
  for (int k = 0; k < dim; ++k) {
    for (double s : {1.0, -1.0}) {
      Vec f{};
      f[k] = s * hello_.f_max;
      candidates.push_back(f);
    }
  }
  double best_cost = std::numeric_limits<double>::infinity();
  Vec best{};
  for (const auto& f : candidates) {
    double cost = 0.0;
    double speed2 = 0.0;
    for (int k = 0; k < 2; ++k) {
      const double v = velocity_[k] + gain_[k] * f[k];
      const double rest = offset[k] - params_.horizon * v;
      cost += rest * rest;
      speed2 += v * v;
    }
    const double over = std::sqrt(speed2) - params_.max_speed_cells;
    if (over > 0.0) cost += 100.0 * over * over;
    if (cost < best_cost) {
      best_cost = cost;
      best = f;
    }
  }
  last_force_ = {best[0], best[1]};
  // Every member gets the same push so the body moves as one.
  bool any = false;
  for (int k = 0; k < dim; ++k) any = any || best[k] != 0.0;
  if (any) {
    for (int id : hello_.members) action.forces[id] = best;
  }
  return action;
}

ResourcesMsg GreedyMind::resources() const {
  const auto grid = static_cast<std::int64_t>(2 * hello_.resolution * hello_.resolution);
  return {2 * grid + 10, updates_};
}

void OracleMind::on_problem(const ProblemMsg&) {
  script_ = std::move(pending_);
  pending_.clear();
  cursor_ = 0;
}

ActionMsg OracleMind::on_observation(const ObservationMsg& obs) {
  ActionMsg a;
  a.tick = obs.tick;
  if (cursor_ < script_.size()) a.forces = script_[cursor_++];
  return a;
}

bool is_builtin_agent(const std::string& name) {
  return name == "null" || name == "random" || name == "greedy" || name == "oracle";
}

std::unique_ptr<Mind> make_builtin(const std::string& name, std::uint64_t seed) {
  if (name == "null") return std::make_unique<NullMind>();
  if (name == "random") return std::make_unique<RandomMind>(seed);
  if (name == "greedy") return std::make_unique<GreedyMind>();
  if (name == "oracle") return std::make_unique<OracleMind>();
  throw ConfigError("unknown builtin agent '" + name + "'");
}

}  // namespace aow
