// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <sys/types.h>

#include "aow/agents.hpp"

namespace aow {

/// Harness end of a line-oriented link to one mind.
class AgentChannel {
 public:
  virtual ~AgentChannel() = default;
  virtual void send(const std::string& line) = 0;
  /// Next line from the agent, or nullopt if none arrived within `budget`.
  virtual std::optional<std::string> receive(std::chrono::milliseconds budget) = 0;
  /// In-process channels reply synchronously and never time out.
  virtual bool in_process() const = 0;
};

/// Runs a Mind in the harness process, still round-tripping every message
/// through the wire encoding and schema checks.
class InProcessChannel : public AgentChannel {
 public:
  explicit InProcessChannel(std::unique_ptr<Mind> mind) : session_(std::move(mind)) {}

  void send(const std::string& line) override;
  std::optional<std::string> receive(std::chrono::milliseconds budget) override;
  bool in_process() const override { return true; }

  Mind& mind() { return session_.mind(); }

 private:
  MindSession session_;
  std::deque<std::string> pending_;
};

/// Spawns `/bin/sh -c command` with stdin/stdout pipes.
class SubprocessChannel : public AgentChannel {
 public:
  explicit SubprocessChannel(const std::string& command);
  ~SubprocessChannel() override;
  SubprocessChannel(const SubprocessChannel&) = delete;
  SubprocessChannel& operator=(const SubprocessChannel&) = delete;

  void send(const std::string& line) override;
  std::optional<std::string> receive(std::chrono::milliseconds budget) override;
  bool in_process() const override { return false; }

 private:
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  bool eof_ = false;
};

}  // namespace aow
