// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "aow/problems.hpp"
#include "aow/serialize.hpp"

namespace aow {
namespace {

struct Fixture {
  World world;
  Body body;
  BodyConfig body_cfg;
  ProblemParams params;
  StepParams step;
};

Fixture make(std::uint64_t seed, bool frozen = false) {
  Fixture f;
  GenSpec s;
  s.seed = seed;
  s.drift.regime_times = {};
  if (frozen) {
    s.grammar.coeff_min = 0.0;
    s.grammar.coeff_max = 0.0;
  }
  f.world = generate_world(s);
  f.body = import_body(f.world, f.body_cfg, choose_anchors(f.world, 1)[0]);
  return f;
}

TEST(Distance, RootMeanSquareOverCells) {
  std::vector<double> a(32, 0.0);
  std::vector<double> b(32, 0.0);
  b[7] = 2.0;
  EXPECT_DOUBLE_EQ(distance(a, b), 2.0 / std::sqrt(32.0));
  EXPECT_DOUBLE_EQ(distance(a, a), 0.0);
  std::vector<double> c(8, 0.0);
  EXPECT_THROW(distance(a, c), ContractViolation);
}

TEST(GenerateProblem, LeavesLiveWorldUntouched) {
  Fixture f = make(3);
  const std::string before = snapshot(f.world);
  Stream rng(1, 0);
  const Problem p = generate_problem(f.world, f.body, f.body_cfg, f.params, f.step, rng, 0);
  EXPECT_EQ(before, snapshot(f.world));
  EXPECT_EQ(p.hidden_actions.size(), static_cast<std::size_t>(f.params.scriptor_len));
  EXPECT_EQ(p.target.grid.size(), Observation::cells(f.body_cfg.resolution));
  EXPECT_EQ(p.calib.o_ref, f.params.scriptor_len);
}

TEST(GenerateProblem, EmptyScriptIsDegenerate) {
  Fixture f = make(4);
  f.params.scriptor_len = 0;
  Stream rng(1, 0);
  const Problem p = generate_problem(f.world, f.body, f.body_cfg, f.params, f.step, rng, 0);
  EXPECT_EQ(distance(project(f.world, f.body, f.body_cfg.resolution), p.target), 0.0);
  EXPECT_EQ(p.calib.p_null, 1.0);
  const auto [s, s_norm] = score(true, 1, 1, 0, 0, p.calib);
  EXPECT_EQ(s, 0.0);
  EXPECT_EQ(s_norm, 0.0);
}

TEST(GenerateProblem, FrozenWorldIsNeverSolvedPassively) {
  Fixture f = make(5, true);
  Stream rng(2, 0);
  int checked = 0;
  for (int i = 0; i < 10; ++i) {
    const Problem p = generate_problem(f.world, f.body, f.body_cfg, f.params, f.step, rng, i);
    if (distance(project(f.world, f.body, f.body_cfg.resolution), p.target) > 0.0) {
      EXPECT_EQ(p.calib.p_null, 0.0);
      ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(GenerateProblem, ReplayingHiddenActionsReachesTarget) {
  Fixture f = make(6);
  Stream rng(3, 0);
  int solved = 0;
  for (int i = 0; i < 20; ++i) {
    const Problem p = generate_problem(f.world, f.body, f.body_cfg, f.params, f.step, rng, i);
    World live = f.world;
    bool hit = false;
    for (const auto& a : p.hidden_actions) {
      step(live, a, f.step);
      hit = hit || check_solved(live, f.body, p);
    }
    solved += hit ? 1 : 0;
    for (int t = 0; t < 7; ++t) step(f.world, {}, f.step);
  }
  EXPECT_EQ(solved, 20);
}

TEST(CheckSolved, InfiniteToleranceAlwaysSolves) {
  Fixture f = make(7);
  Stream rng(4, 0);
  Problem p = generate_problem(f.world, f.body, f.body_cfg, f.params, f.step, rng, 0);
  p.epsilon = std::numeric_limits<double>::infinity();
  EXPECT_TRUE(check_solved(f.world, f.body, p));
}

TEST(Score, DecreasesInObservationsAndDuration) {
  DifficultyCalib calib{0.0, 10.0, 10.0};
  for (int o = 0; o <= 50; ++o) {
    for (int d = 0; d <= 50; ++d) {
      const double s = score(true, o, d, 0, 0, calib).first;
      ASSERT_GE(s, 0.0);
      ASSERT_LE(s, 1.0);
      if (o > 0) {
        ASSERT_LT(s, score(true, o - 1, d, 0, 0, calib).first);
      }
      if (d > 0) {
        ASSERT_LT(s, score(true, o, d - 1, 0, 0, calib).first);
      }
    }
  }
}

TEST(Score, ExactValueAndEdgeCases) {
  DifficultyCalib calib{0.25, 4.0, 8.0};
  const auto [s, s_norm] = score(true, 4, 8, 0, 0, calib);
  EXPECT_DOUBLE_EQ(s, 0.75 * std::exp(-1.0));
  EXPECT_DOUBLE_EQ(s_norm, s);
  EXPECT_EQ(score(false, 1, 1, 0, 0, calib).first, 0.0);
  calib.p_null = 1.0;
  EXPECT_EQ(score(true, 0, 0, 0, 0, calib).first, 0.0);
}

TEST(Score, ResourceNormalisation) {
  DifficultyCalib calib{0.0, 1.0, 1.0};
  ScoreParams sp;
  sp.lambda_m = 0.5;
  sp.lambda_c = 0.25;
  const auto [s, s_norm] = score(true, 1, 1, 99, 9, calib, sp);
  EXPECT_DOUBLE_EQ(s_norm, s / (1.0 + 0.5 * std::log(100.0) + 0.25 * std::log(10.0)));
  EXPECT_THROW(score(true, -1, 0, 0, 0, calib), ContractViolation);
  EXPECT_THROW(score(true, 1, 1, 0, 0, DifficultyCalib{0.0, 0.0, 1.0}), ConfigError);
}

TEST(ProblemParams, Validation) {
  ProblemParams p;
  p.epsilon = 0.0;
  EXPECT_THROW(validate(p), ConfigError);
  p = ProblemParams{};
  p.timeout = 0;
  EXPECT_THROW(validate(p), ConfigError);
}

}  // namespace
}  // namespace aow
