// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "aow/dynamics.hpp"
#include "aow/serialize.hpp"

namespace aow {
namespace {

CausationLaw single(Term term, double coeff, bool coupled = false) {
  CausationLaw law;
  law.terms.push_back({term, coeff, coupled});
  return law;
}

StepParams loose() {
  StepParams p;
  p.a_max = 1e6;
  p.v_max = 1e6;
  return p;
}

LawParticipant at(int id, double x, double y) {
  LawParticipant p;
  p.id = id;
  p.position = {x, y, 0.0};
  return p;
}

TEST(EvalLaw, InverseSquareAtDistanceTwo) {
  const auto acc = eval_law(single(Term::kInvSquare, 1.0), at(0, 0, 0), at(1, 2, 0), loose(), 8.0, 2);
  // Positive coefficient pushes a away from b.
  EXPECT_DOUBLE_EQ(acc[0], -0.25);
  EXPECT_DOUBLE_EQ(acc[1], 0.0);
}

TEST(EvalLaw, UsesShortestTorusPath) {
  // On a 16-wide torus b at 7.5 is one unit left of a at -7.5.
  const auto acc = eval_law(single(Term::kConstant, 1.0), at(0, -7.5, 0), at(1, 7.5, 0), loose(), 8.0, 2);
  EXPECT_NEAR(acc[0], 1.0, 1e-12);
}

TEST(EvalLaw, PolarityCouplingFlipsSign) {
  LawParticipant a = at(0, 0, 0);
  LawParticipant b = at(1, 1, 0);
  b.polarity = -1.0;
  const auto acc = eval_law(single(Term::kConstant, 1.0, true), a, b, loose(), 8.0, 2);
  EXPECT_DOUBLE_EQ(acc[0], 1.0);
}

TEST(EvalLaw, DividesByInertia) {
  LawParticipant a = at(0, 0, 0);
  a.inertia = 4.0;
  const auto acc = eval_law(single(Term::kConstant, 2.0), a, at(1, 1, 0), loose(), 8.0, 2);
  EXPECT_DOUBLE_EQ(acc[0], -0.5);
}

TEST(EvalLaw, CoincidentPointsUseGuardAndClamp) {
  StepParams p;
  p.eps_r = 0.5;
  p.a_max = 100.0;
  const auto acc = eval_law(single(Term::kInvSquare, 1.0), at(0, 1, 1), at(1, 1, 1), p, 8.0, 2);
  EXPECT_NEAR(std::hypot(acc[0], acc[1]), 4.0, 1e-12);
  p.a_max = 0.05;
  const auto clamped = eval_law(single(Term::kInvSquare, 1.0), at(0, 1, 1), at(1, 1, 1), p, 8.0, 2);
  EXPECT_NEAR(std::hypot(clamped[0], clamped[1]), 0.05, 1e-12);
  // Antisymmetric even in the coincident case.
  const auto back = eval_law(single(Term::kInvSquare, 1.0), at(1, 1, 1), at(0, 1, 1), p, 8.0, 2);
  EXPECT_DOUBLE_EQ(clamped[0], -back[0]);
}

TEST(EvalLaw, DampingOpposesRelativeVelocity) {
  LawParticipant a = at(0, 0, 0);
  a.velocity = {0.2, 0.0, 0.0};
  const auto acc = eval_law(single(Term::kDamping, 0.5), a, at(1, 3, 0), loose(), 8.0, 2);
  EXPECT_DOUBLE_EQ(acc[0], -0.1);
}

GenSpec tiny(std::uint64_t seed, int n) {
  GenSpec s;
  s.seed = seed;
  s.n_entities = n;
  s.n_levels = 2;
  s.drift.regime_times = {};
  s.drift.drift_levels = {1};
  return s;
}

TEST(Step, ZeroLawsLeavePositionsUnchanged) {
  GenSpec s = tiny(1, 2);
  s.grammar.coeff_min = 0.0;
  s.grammar.coeff_max = 0.0;
  World w = generate_world(s);
  const auto before = w.entities;
  step(w, {}, StepParams{});
  EXPECT_EQ(w.tick, 1);
  for (std::size_t i = 0; i < before.size(); ++i) EXPECT_EQ(w.entities[i].position, before[i].position);
}

TEST(Step, ClampsHoldEveryTick) {
  GenSpec s = tiny(3, 30);
  s.grammar.coeff_min = -1.0;
  s.grammar.coeff_max = 1.0;
  s.grammar.basis = {Term::kInvSquare, Term::kInverse, Term::kConstant, Term::kLinear, Term::kSquare,
                     Term::kDamping};
  World w = generate_world(s);
  StepParams p;
  Stream rng(5, 0);
  for (int t = 0; t < 300; ++t) {
    ForceMap ext{{0, uniform_in_ball(rng, 10.0, 2)}};
    const auto rep = step(w, ext, p);
    EXPECT_LE(rep.max_acceleration, p.a_max * (1 + 1e-12));
    for (const auto& e : w.entities) {
      for (int k = 0; k < 2; ++k) {
        ASSERT_LE(std::abs(e.velocity[k]), p.v_max * (1 + 1e-12));
        ASSERT_GE(e.position[k], -s.arena_extent);
        ASSERT_LT(e.position[k], s.arena_extent);
      }
    }
  }
}

TEST(Step, UnknownExternalIdIsRejectedBeforeMutation) {
  World w = generate_world(tiny(2, 5));
  const std::string before = snapshot(w);
  EXPECT_THROW(step(w, ForceMap{{99, Vec{0.01, 0, 0}}}, StepParams{}), ContractViolation);
  EXPECT_EQ(before, snapshot(w));
}

TEST(Step, ExternalForceAcceleratesEntity) {
  GenSpec s = tiny(4, 2);
  s.grammar.coeff_min = 0.0;
  s.grammar.coeff_max = 0.0;
  World w = generate_world(s);
  const Vec x0 = w.entities[0].position;
  step(w, ForceMap{{0, Vec{0.02, 0, 0}}}, StepParams{});
  // Semi-implicit Euler: v = a h, x += v h.
  EXPECT_DOUBLE_EQ(w.entities[0].velocity[0], 0.02);
  EXPECT_NEAR(torus_delta(x0, w.entities[0].position, s.arena_extent, 2)[0], 0.02, 1e-12);
}

TEST(Step, MomentumIsConservedWithoutExternalForces) {
  for (int n = 2; n <= 10; n += 4) {
    GenSpec s = tiny(static_cast<std::uint64_t>(n), n);
    s.grammar.basis = {Term::kInvSquare, Term::kInverse, Term::kConstant, Term::kDamping};
    s.grammar.coeff_min = -1e-3;
    s.grammar.coeff_max = 1e-3;
    World w = generate_world(s);
    const StepParams p = loose();
    Vec prev = total_momentum(w);
    for (int t = 0; t < 1000; ++t) {
      step(w, {}, p);
      const Vec now = total_momentum(w);
      for (int k = 0; k < 2; ++k) ASSERT_LE(std::abs(now[k] - prev[k]), 1e-9);
      prev = now;
    }
  }
}

TEST(StepParams, ValidationRejectsNonPositive) {
  StepParams p;
  p.a_max = 0.0;
  EXPECT_THROW(validate(p), ConfigError);
  p = StepParams{};
  p.eps_r = -1.0;
  EXPECT_THROW(validate(p), ConfigError);
}

}  // namespace
}  // namespace aow
