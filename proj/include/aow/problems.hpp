// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "aow/dynamics.hpp"
#include "aow/interface.hpp"

namespace aow {

struct DifficultyCalib {
  /// Fraction of passive rollouts that reach the target on their own.
  double p_null = 0.0;
  double o_ref = 1.0;
  double d_ref = 1.0;
};

struct ProblemParams {
  int scriptor_len = 16;
  double epsilon = 0.2;
  std::int64_t timeout = 60;
  int null_rollouts = 4;
  /// Attempts at drawing a non-degenerate target before accepting one.
  int max_regenerations = 8;
};

void validate(const ProblemParams& p);

struct Problem {
  int id = 0;
  std::int64_t issued_tick = 0;
  Observation target;
  double epsilon = 0.2;
  std::int64_t timeout = 60;
  DifficultyCalib calib;
  /// The scriptor's action series. Never sent to agents.
  std::vector<ForceMap> hidden_actions;
};

struct ScoreParams {
  double s_max = 1.0;
  double lambda_m = 0.0;
  double lambda_c = 0.0;
};

struct SolveRecord {
  int problem_id = 0;
  bool solved = false;
  std::int64_t O = 0;
  std::int64_t D = 0;
  std::int64_t M = 0;
  std::int64_t C = 0;
  double S = 0.0;
  double S_norm = 0.0;
};

/// Root-mean-square cell difference over both channels.
double distance(std::span<const double> current, std::span<const double> target);
double distance(const Observation& current, const Observation& target);

/// Random bounded scriptor action for every body member.
ForceMap scriptor_action(const World& world, const Body& body, double f_max, Stream& rng);

/*!
 * Issue a reachable problem for `body`.
 *
 * The live world is cloned; a hidden scriptor drives the clone's body with
 * random bounded forces for scriptor_len ticks and the resulting projection
 * becomes the target. Targets within epsilon of the current projection are
 * redrawn up to max_regenerations times. The live world is not modified.
 */
Problem generate_problem(const World& world, const Body& body, const BodyConfig& body_cfg,
                         const ProblemParams& params, const StepParams& step_params,
                         Stream& rng, int id);

/// Solve test against the problem target; does not count as an observation.
bool check_solved(const World& world, const Body& body, const Problem& problem);

/// Passive-difficulty calibration from `rollouts` zero-action clones.
DifficultyCalib null_baseline(const World& world, const Body& body, const Problem& problem,
                              int rollouts, int scriptor_len, const StepParams& step_params);

/// Raw and resource-normalized score. Returns (S, S_norm).
std::pair<double, double> score(bool solved, std::int64_t O, std::int64_t D, std::int64_t M,
                                std::int64_t C, const DifficultyCalib& calib,
                                const ScoreParams& params = {});

}  // namespace aow
