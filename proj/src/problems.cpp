// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#include "aow/problems.hpp"

#include <algorithm>
#include <cmath>

namespace aow {

void validate(const ProblemParams& p) {
  if (p.scriptor_len < 0) throw ConfigError("invalid problem params: scriptor_len >= 0");
  if (!(p.epsilon > 0.0)) throw ConfigError("invalid problem params: epsilon > 0");
  if (p.timeout <= 0) throw ConfigError("invalid problem params: timeout > 0");
  if (p.null_rollouts < 1) throw ConfigError("invalid problem params: null_rollouts >= 1");
  if (p.max_regenerations < 1) throw ConfigError("invalid problem params: max_regenerations >= 1");
}

double distance(std::span<const double> current, std::span<const double> target) {
  if (current.size() != target.size() || current.empty()) {
    throw ContractViolation("distance: grid shapes differ");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < current.size(); ++i) {
    const double d = current[i] - target[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(current.size()));
}

double distance(const Observation& current, const Observation& target) {
  if (current.resolution != target.resolution) {
    throw ContractViolation("distance: resolutions differ");
  }
  return distance(std::span<const double>(current.grid), std::span<const double>(target.grid));
}

ForceMap scriptor_action(const World& world, const Body& body, double f_max, Stream& rng) {
  ForceMap forces;
  for (int id : body.member_ids) forces[id] = uniform_in_ball(rng, f_max, world.dim());
  return forces;
}

Problem generate_problem(const World& world, const Body& body, const BodyConfig& body_cfg,
                         const ProblemParams& params, const StepParams& step_params,
                         Stream& rng, int id) {
  const int res = body_cfg.resolution;
  const Observation now = project(world, body, res);

  Problem problem;
  problem.id = id;
  problem.issued_tick = world.tick;
  problem.epsilon = params.epsilon;
  problem.timeout = params.timeout;

  for (int attempt = 0; attempt < params.max_regenerations; ++attempt) {
    World clone = world;
    std::vector<ForceMap> actions;
    actions.reserve(static_cast<std::size_t>(params.scriptor_len));
    for (int i = 0; i < params.scriptor_len; ++i) {
      Action a{scriptor_action(clone, body, body_cfg.f_max, rng), body_cfg.f_max};
      actions.push_back(act(clone, body, a));
      step(clone, actions.back(), step_params);
    }
    problem.target = project(clone, body, res);
    problem.hidden_actions = std::move(actions);
    if (params.scriptor_len == 0 || distance(now, problem.target) > params.epsilon) break;
  }
  problem.target.tick = world.tick;
  problem.calib =
      null_baseline(world, body, problem, params.null_rollouts, params.scriptor_len, step_params);
  return problem;
}

bool check_solved(const World& world, const Body& body, const Problem& problem) {
  return distance(project(world, body, problem.target.resolution), problem.target) <=
         problem.epsilon;
}

DifficultyCalib null_baseline(const World& world, const Body& body, const Problem& problem,
                              int rollouts, int scriptor_len, const StepParams& step_params) {
  if (rollouts < 1) throw ContractViolation("null_baseline needs at least one rollout");
  // The world is deterministic, so every zero-action rollout from the same
  // state follows the same path: simulate one and count it for all.
  World clone = world;
  bool hit = check_solved(clone, body, problem);
  for (std::int64_t t = 0; t < problem.timeout && !hit; ++t) {
    step(clone, {}, step_params);
    hit = check_solved(clone, body, problem);
  }
  const int solved = hit ? rollouts : 0;
  DifficultyCalib calib;
  calib.p_null = static_cast<double>(solved) / rollouts;
  calib.o_ref = std::max(1, scriptor_len);
  calib.d_ref = std::max(1, scriptor_len);
  return calib;
}

std::pair<double, double> score(bool solved, std::int64_t O, std::int64_t D, std::int64_t M,
                                std::int64_t C, const DifficultyCalib& calib,
                                const ScoreParams& params) {
  if (!(calib.o_ref > 0.0) || !(calib.d_ref > 0.0)) {
    throw ConfigError("score: o_ref and d_ref must be positive");
  }
  if (O < 0 || D < 0 || M < 0 || C < 0) throw ContractViolation("score: negative indicator");
  if (!solved) return {0.0, 0.0};
  const double s = params.s_max * (1.0 - calib.p_null) *
                   std::exp(-(static_cast<double>(O) / calib.o_ref +
                              static_cast<double>(D) / calib.d_ref) /
                            2.0);
  const double denom = 1.0 + params.lambda_m * std::log1p(static_cast<double>(M)) +
                       params.lambda_c * std::log1p(static_cast<double>(C));
  return {s, s / denom};
}

}  // namespace aow
