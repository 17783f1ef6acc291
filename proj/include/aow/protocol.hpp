// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aow/dynamics.hpp"

/*!
 * \file protocol.hpp
 * \brief Newline-delimited JSON messages between the harness and a mind.
 *
 * Every line is one JSON object with a "kind" field. Field sets are closed:
 * a message with any field not listed below is rejected, which keeps world
 * internals (laws, positions, seeds) off the wire.
 *
 * Harness to agent:
 *   hello        {kind, version, agent_id, dim, members[int], f_max, resolution, window}
 *   problem      {kind, id, tick, resolution, target[num], epsilon, timeout}
 *   observation  {kind, tick, resolution, grid[num], integrity}
 *   score        {kind, problem_id, solved, O, D, S, S_norm}
 *   bye          {kind, reason}
 *
 * Agent to harness:
 *   hello        {kind, version, name}
 *   action       {kind, tick, forces[{id, f[num]}]}
 *   resources    {kind, M, C}      (cumulative, self-reported)
 *   bye          {kind, reason}
 */

namespace aow {

inline constexpr int kProtocolVersion = 1;

struct HelloToAgent {
  int version = kProtocolVersion;
  int agent_id = 0;
  int dim = 2;
  std::vector<int> members;
  double f_max = 0.0;
  int resolution = 0;
  double window = 0.0;
};

struct ProblemMsg {
  int id = 0;
  std::int64_t tick = 0;
  int resolution = 0;
  std::vector<double> target;
  double epsilon = 0.0;
  std::int64_t timeout = 0;
};

struct ObservationMsg {
  std::int64_t tick = 0;
  int resolution = 0;
  std::vector<double> grid;
  double integrity = 1.0;
};

struct ScoreMsg {
  int problem_id = 0;
  bool solved = false;
  std::int64_t O = 0;
  std::int64_t D = 0;
  double S = 0.0;
  double S_norm = 0.0;
};

struct ByeMsg {
  std::string reason;
};

struct HelloFromAgent {
  int version = kProtocolVersion;
  std::string name;
};

struct ActionMsg {
  std::int64_t tick = 0;
  ForceMap forces;
};

struct ResourcesMsg {
  std::int64_t M = 0;
  std::int64_t C = 0;
};

using ToAgent = std::variant<HelloToAgent, ProblemMsg, ObservationMsg, ScoreMsg, ByeMsg>;
using FromAgent = std::variant<HelloFromAgent, ActionMsg, ResourcesMsg, ByeMsg>;

/// One line of JSON, without the trailing newline.
std::string encode(const ToAgent& msg);
std::string encode(const FromAgent& msg);

/// Parse and schema-check one line. Throws ProtocolError.
ToAgent decode_to_agent(std::string_view line);
FromAgent decode_from_agent(std::string_view line, int dim);

}  // namespace aow
