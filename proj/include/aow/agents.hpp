// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aow/protocol.hpp"
#include "aow/random.hpp"

namespace aow {

/// A mind sees only protocol messages. Implementations must be deterministic
/// given their construction seed and the message sequence.
class Mind {
 public:
  virtual ~Mind() = default;
  virtual std::string name() const = 0;
  virtual void on_hello(const HelloToAgent& hello) { hello_ = hello; }
  virtual void on_problem(const ProblemMsg&) {}
  virtual ActionMsg on_observation(const ObservationMsg& obs) = 0;
  virtual void on_score(const ScoreMsg&) {}
  /// Cumulative self-reported memory and compute units.
  virtual ResourcesMsg resources() const { return {1, 0}; }

 protected:
  HelloToAgent hello_;
};

/// Phase of the agent side of a session.
enum class AgentPhase { kHandshake, kIdle, kSolving };

struct AgentProtocolState {
  AgentPhase phase = AgentPhase::kHandshake;
  std::optional<int> active_problem;
  std::int64_t reported_M = 0;
  std::int64_t reported_C = 0;
};

/*!
 * Drives a Mind from protocol lines.
 *
 * handle() takes one harness line and returns the reply lines: a hello for
 * hello, a resources report followed by an action for each observation, and
 * nothing otherwise.
 */
class MindSession {
 public:
  explicit MindSession(std::unique_ptr<Mind> mind) : mind_(std::move(mind)) {}

  std::vector<std::string> handle(const std::string& line);
  const AgentProtocolState& state() const { return state_; }
  Mind& mind() { return *mind_; }
  bool finished() const { return finished_; }

 private:
  std::unique_ptr<Mind> mind_;
  AgentProtocolState state_;
  bool finished_ = false;
};

/// Always does nothing.
class NullMind : public Mind {
 public:
  std::string name() const override { return "null"; }
  ActionMsg on_observation(const ObservationMsg& obs) override;
};

/// Uniform force in the f_max ball on every member, every tick.
class RandomMind : public Mind {
 public:
  explicit RandomMind(std::uint64_t seed) : rng_(Stream::named(seed, "agent")) {}
  std::string name() const override { return "random"; }
  ActionMsg on_observation(const ObservationMsg& obs) override;

 private:
  Stream rng_;
};

/*!
 * One-step lookahead controller with an online linear motion model.
 *
 * Each tick the target is registered against the current grid (blurred
 * cross-correlation, sub-cell peak) to get the body displacement still
 * needed, in cells. A per-axis linear model maps force to velocity change
 * (cells per tick per unit force) and is refit online by recursive least
 * squares from the observed shift between consecutive grids. Candidates are
 * the zero force and +-f_max along each axis; the one with the smallest
 * predicted remaining displacement over a short horizon wins. A sustained
 * spike in the model's prediction error is treated as drift and resets it.
 */
class GreedyMind : public Mind {
 public:
  struct Params {
    double horizon = 4.0;
    double max_speed_cells = 0.35;
    double forgetting = 0.995;
    double prior_weight = 50.0;
    double drift_spike = 3.0;
    int drift_patience = 5;
  };

  GreedyMind() : GreedyMind(Params{}) {}
  explicit GreedyMind(Params params) : params_(params) {}

  std::string name() const override { return "greedy"; }
  void on_hello(const HelloToAgent& hello) override;
  void on_problem(const ProblemMsg& problem) override;
  ActionMsg on_observation(const ObservationMsg& obs) override;
  void on_score(const ScoreMsg& score) override;
  ResourcesMsg resources() const override;

  /// Current gain estimate per grid axis, cells/tick^2 per unit force.
  std::array<double, 2> gain() const { return gain_; }
  int model_resets() const { return resets_; }
  /// Mean absolute prediction error of the motion model (cells/tick).
  double prediction_error() const { return err_avg_; }

 private:
  void reset_model();
  std::array<double, 2> register_offset(const std::vector<double>& from,
                                        const std::vector<double>& to) const;

  Params params_;
  std::array<double, 2> gain_{};
  std::array<double, 2> prior_gain_{};
  std::array<double, 2> rls_p_{};
  std::array<double, 2> velocity_{};
  std::array<double, 2> last_force_{};
  std::vector<double> last_grid_;
  std::optional<ProblemMsg> problem_;
  double err_avg_ = 0.0;
  double err_baseline_ = 0.0;
  int spike_run_ = 0;
  int resets_ = 0;
  std::int64_t updates_ = 0;
};

/// Replays a hidden scriptor series. Harness-internal; never ranked.
class OracleMind : public Mind {
 public:
  std::string name() const override { return "oracle"; }
  void on_problem(const ProblemMsg& problem) override;
  ActionMsg on_observation(const ObservationMsg& obs) override;
  void on_score(const ScoreMsg&) override { script_.clear(); }
  /// Privileged feed of the scriptor series for the next problem.
  void load_script(std::vector<ForceMap> actions) { pending_ = std::move(actions); }

 private:
  std::vector<ForceMap> pending_;
  std::vector<ForceMap> script_;
  std::size_t cursor_ = 0;
};

/// Names accepted by make_builtin.
bool is_builtin_agent(const std::string& name);
std::unique_ptr<Mind> make_builtin(const std::string& name, std::uint64_t seed);

}  // namespace aow
