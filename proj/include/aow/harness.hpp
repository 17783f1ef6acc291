// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aow/dynamics.hpp"
#include "aow/interface.hpp"
#include "aow/metrics.hpp"
#include "aow/problems.hpp"
#include "aow/serialize.hpp"
#include "aow/worldgen.hpp"

namespace aow {

struct EpisodeConfig {
  GenSpec gen;
  StepParams step;
  BodyConfig body;
  ProblemParams problem;
  ScoreParams scoring;
  MetricParams metrics;
  std::int64_t episode_len = 1500;
  /// Cap on problems issued to one agent within one regime.
  int problems_per_regime = 1000;
  std::chrono::milliseconds tick_budget{50};
  std::chrono::milliseconds handshake_budget{5000};
  std::int64_t checkpoint_every = 100;
  /// Parameter retries the developer made before this run; reported only.
  int retries = 0;
};

/// Throws ConfigError naming the first violated invariant.
void validate(const EpisodeConfig& cfg);

/// A mind to evaluate: a builtin name (null, random, greedy, oracle) run
/// in-process, or a shell command speaking the wire protocol on stdio.
struct AgentSpec {
  std::string builtin;
  std::string command;
  std::uint64_t seed = 0;

  static AgentSpec parse(const std::string& text, std::uint64_t seed = 0);
  std::string label() const;
};

/// Accounting for one agent over an episode.
struct AgentOutcome {
  int agent_id = 0;
  std::string name;
  std::vector<int> body;
  ScoreStream stream;
  std::vector<SolveRecord> records;
  std::int64_t senses = 0;
  std::int64_t timeouts = 0;
  bool destroyed = false;
  AdaptationReport report;
};

struct EpisodeResult {
  std::vector<AgentOutcome> agents;
  std::vector<std::string> live_trace;
  std::vector<std::string> disclosure_trace;
  std::string final_hash;
  std::int64_t ticks = 0;
  bool aborted = false;
  std::string abort_reason;
};

struct EpisodeOptions {
  /// Permits the privileged oracle agent. Never set for reported evaluations.
  bool allow_oracle = false;
  /// Build the live and disclosure traces. Off for bulk evaluation.
  bool traces = true;
};

/*!
 * Run one episode with one or more agents sharing a world.
 *
 * Each tick: issue problems to idle agents, then per agent in id order one
 * sense and one act, then a dynamics step, then solve/timeout checks.
 * Protocol violations abort the episode and close open problems unsolved.
 */
EpisodeResult run_episode(const EpisodeConfig& cfg, const std::vector<AgentSpec>& agents,
                          const EpisodeOptions& options = {});

/// Seed of the i-th world under a master seed. Injective in i.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

struct Stage1Result {
  std::vector<AdaptationReport> per_world;
  AdaptationReport aggregate;
  std::vector<EpisodeResult> episodes;
};

Stage1Result run_stage1(const EpisodeConfig& cfg, const AgentSpec& agent, int n_worlds,
                        std::uint64_t master_seed, bool keep_episodes = false);

struct Stage2Result {
  std::vector<AdaptationReport> ranking;
  EpisodeResult episode;
};

Stage2Result run_stage2(const EpisodeConfig& cfg, const std::vector<AgentSpec>& agents);

struct ReplayVerdict {
  bool ok = false;
  std::optional<std::int64_t> divergent_tick;
  std::string reason;
  /// Full world at the start and end of the replay, laws included.
  std::optional<World> initial_world;
  std::optional<World> final_world;
};

ReplayVerdict replay(const std::vector<std::string>& disclosure_lines);
ReplayVerdict replay_file(const std::string& path);

/// Number of lines in a live trace that carry world-law or generator
/// parameters (law terms, coefficients, seeds, snapshots, hidden actions).
std::size_t audit_live_trace(const std::vector<std::string>& lines);

/// Writes traces, score streams and the report into `dir`. Files are written
/// to a temporary name and renamed into place.
void write_episode_outputs(const EpisodeResult& result, const std::string& dir);

}  // namespace aow
