// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "aow/agents.hpp"
#include "aow/common.hpp"

namespace aow {
namespace {

constexpr int kRes = 9;

HelloToAgent hello() { return HelloToAgent{kProtocolVersion, 0, 2, {0, 1, 2}, 0.04, kRes, 2.5}; }

// Channel 0 holds a single bright cell at (x, y).
std::vector<double> blob(int x, int y) {
  std::vector<double> g(2 * kRes * kRes, 0.0);
  g[static_cast<std::size_t>(x * kRes + y)] = 1.0;
  return g;
}

std::string obs_line(std::int64_t tick, const std::vector<double>& grid) {
  return encode(ToAgent{ObservationMsg{tick, kRes, grid, 1.0}});
}

TEST(Session, HandshakeThenActionPerObservation) {
  MindSession s(make_builtin("null", 0));
  EXPECT_THROW(s.handle(obs_line(0, blob(1, 1))), ProtocolError);

  MindSession session(make_builtin("null", 0));
  const auto hi = session.handle(encode(ToAgent{hello()}));
  ASSERT_EQ(hi.size(), 1u);
  EXPECT_EQ(std::get<HelloFromAgent>(decode_from_agent(hi[0], 2)).name, "null");
  EXPECT_EQ(session.state().phase, AgentPhase::kIdle);

  session.handle(encode(ToAgent{ProblemMsg{4, 0, kRes, blob(1, 1), 0.2, 60}}));
  EXPECT_EQ(session.state().phase, AgentPhase::kSolving);
  EXPECT_EQ(session.state().active_problem, 4);

  const auto replies = session.handle(obs_line(3, blob(1, 1)));
  ASSERT_EQ(replies.size(), 2u);
  EXPECT_TRUE(std::holds_alternative<ResourcesMsg>(decode_from_agent(replies[0], 2)));
  const auto act = std::get<ActionMsg>(decode_from_agent(replies[1], 2));
  EXPECT_EQ(act.tick, 3);
  EXPECT_TRUE(act.forces.empty());

  session.handle(encode(ToAgent{ScoreMsg{4, false, 1, 1, 0, 0}}));
  EXPECT_EQ(session.state().phase, AgentPhase::kIdle);
  session.handle(encode(ToAgent{ByeMsg{"end"}}));
  EXPECT_TRUE(session.finished());
}

TEST(Session, RejectsWrongVersion) {
  MindSession s(make_builtin("greedy", 0));
  HelloToAgent h = hello();
  h.version = 99;
  EXPECT_THROW(s.handle(encode(ToAgent{h})), ProtocolError);
}

TEST(RandomMind, DeterministicPerSeedAndBounded) {
  auto run = [](std::uint64_t seed) {
    MindSession s(make_builtin("random", seed));
    s.handle(encode(ToAgent{hello()}));
    std::vector<std::string> lines;
    for (int t = 0; t < 20; ++t) {
      const auto r = s.handle(obs_line(t, blob(4, 4)));
      lines.push_back(r.back());
      const auto action = std::get<ActionMsg>(decode_from_agent(r.back(), 2));
      for (const auto& [id, f] : action.forces) {
        EXPECT_LE(std::hypot(f[0], f[1]), 0.04 + 1e-12);
      }
    }
    return lines;
  };
  EXPECT_EQ(run(5), run(5));
  EXPECT_NE(run(5), run(6));
}

TEST(GreedyMind, StaticWorldWithoutProblemKeepsStill) {
  GreedyMind g;
  g.on_hello(hello());
  for (int t = 0; t < 30; ++t) {
    const auto a = g.on_observation(ObservationMsg{t, kRes, blob(3, 5), 1.0});
    EXPECT_TRUE(a.forces.empty());
  }
  EXPECT_EQ(g.prediction_error(), 0.0);
  EXPECT_EQ(g.model_resets(), 0);
}

TEST(GreedyMind, PushesTowardTargetAlongOneAxis) {
  auto first_force = [](const std::vector<double>& target) {
    GreedyMind g;
    g.on_hello(hello());
    g.on_problem(ProblemMsg{0, 0, kRes, target, 0.2, 60});
    const auto a = g.on_observation(ObservationMsg{0, kRes, blob(2, 2), 1.0});
    return a.forces.empty() ? Vec{} : a.forces.begin()->second;
  };
  const Vec up = first_force(blob(2, 5));
  const Vec down = first_force(blob(5, 2));
  EXPECT_EQ(up[0], 0.0);
  EXPECT_NE(up[1], 0.0);
  EXPECT_NE(down[0], 0.0);
  EXPECT_EQ(down[1], 0.0);
  const Vec back = first_force(blob(2, 0));
  EXPECT_LT(up[1] * back[1], 0.0);
}

TEST(Builtins, Names) {
  for (const char* n : {"null", "random", "greedy", "oracle"}) {
    EXPECT_TRUE(is_builtin_agent(n));
    EXPECT_EQ(make_builtin(n, 1)->name(), n);
  }
  EXPECT_FALSE(is_builtin_agent("genius"));
}

}  // namespace
}  // namespace aow
