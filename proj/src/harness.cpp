// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#include "aow/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include "aow/agents.hpp"
#include "aow/channel.hpp"
#include "aow/protocol.hpp"
#include "aow/random.hpp"

namespace aow {

void validate(const EpisodeConfig& cfg) {
  validate(cfg.gen);
  validate(cfg.step);
  validate(cfg.body);
  validate(cfg.problem);
  if (cfg.episode_len < 1) throw ConfigError("episode_len must be >= 1");
  if (cfg.problems_per_regime < 1) throw ConfigError("problems_per_regime must be >= 1");
  if (cfg.tick_budget.count() < 1) throw ConfigError("tick_budget_ms must be >= 1");
  if (cfg.handshake_budget.count() < 1) throw ConfigError("handshake_budget_ms must be >= 1");
  if (cfg.checkpoint_every < 1) throw ConfigError("checkpoint_every must be >= 1");
  if (!(cfg.scoring.s_max > 0.0)) throw ConfigError("s_max must be > 0");
  if (cfg.scoring.lambda_m < 0.0 || cfg.scoring.lambda_c < 0.0) {
    throw ConfigError("resource weights must be >= 0");
  }
  if (cfg.retries < 0) throw ConfigError("retries must be >= 0");
  if (cfg.metrics.window < 1) throw ConfigError("metric window must be >= 1");
  if (!(cfg.metrics.theta > 0.0 && cfg.metrics.theta <= 1.0)) {
    throw ConfigError("theta must lie in (0, 1]");
  }
  if (cfg.metrics.pre_win < 1 || cfg.metrics.post_win < 1) {
    throw ConfigError("pre_win and post_win must be >= 1");
  }
  double wsum = 0.0;
  for (double w : cfg.metrics.weights) {
    if (w < 0.0) throw ConfigError("merge weights must be >= 0");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-9) throw ConfigError("merge weights must sum to 1");
}

AgentSpec AgentSpec::parse(const std::string& text, std::uint64_t seed) {
  AgentSpec spec;
  spec.seed = seed;
  if (text.rfind("cmd:", 0) == 0) {
    spec.command = text.substr(4);
    if (spec.command.empty()) throw ConfigError("empty agent command");
  } else if (is_builtin_agent(text)) {
    spec.builtin = text;
  } else {
    throw ConfigError("unknown agent '" + text + "' (builtins: null, random, greedy, oracle; or cmd:<command>)");
  }
  return spec;
}

std::string AgentSpec::label() const { return builtin.empty() ? "cmd:" + command : builtin; }

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master + index * Stream::kGolden);
}

namespace {

class TraceSink {
 public:
  explicit TraceSink(bool enabled) : enabled_(enabled) {}

  /// Same record in both traces.
  void both(const Json& ev) {
    if (!enabled_) return;
    full_.push_back(ev.dump());
    live_.push_back(full_.back());
  }
  /// Full record for disclosure, redacted view for the live trace.
  void split(const Json& full, Json live) {
    if (!enabled_) return;
    full_.push_back(full.dump());
    live["redacted"] = true;
    live_.push_back(live.dump());
  }
  bool enabled() const { return enabled_; }

  std::vector<std::string> live_;
  std::vector<std::string> full_;

 private:
  bool enabled_;
};

Json event(std::int64_t tick, const char* kind) { return Json{{"tick", tick}, {"kind", kind}}; }

Json forces_json(const ForceMap& forces, int dim) {
  Json arr = Json::array();
  for (const auto& [id, f] : forces) arr.push_back(Json{{"id", id}, {"f", to_json(f, dim)}});
  return arr;
}

struct Participant {
  AgentSpec spec;
  int id = 0;
  std::string name;
  std::unique_ptr<AgentChannel> channel;
  OracleMind* oracle = nullptr;
  Body body;
  Stream problem_rng;
  std::optional<Problem> active;
  int next_problem_id = 0;
  std::int64_t observations = 0;
  std::int64_t M = 0;
  std::int64_t C = 0;
  std::map<std::size_t, int> issued_per_regime;
  double cumulative = 0.0;
  AgentOutcome out;
};

std::size_t regime_index(const World& world) {
  const auto& times = world.spec.drift.regime_times;
  return static_cast<std::size_t>(
      std::count_if(times.begin(), times.end(), [&](std::int64_t t) { return t <= world.tick; }));
}

std::unique_ptr<AgentChannel> open_channel(Participant& p, std::uint64_t seed,
                                           const EpisodeOptions& options) {
  if (!p.spec.builtin.empty()) {
    if (p.spec.builtin == "oracle" && !options.allow_oracle) {
      throw ConfigError("the oracle agent reads hidden problem data and cannot be evaluated");
    }
    auto mind = make_builtin(p.spec.builtin, seed);
    if (auto* o = dynamic_cast<OracleMind*>(mind.get())) p.oracle = o;
    return std::make_unique<InProcessChannel>(std::move(mind));
  }
  return std::make_unique<SubprocessChannel>(p.spec.command);
}

void handshake(Participant& p, const EpisodeConfig& cfg, int dim) {
  HelloToAgent hello;
  hello.agent_id = p.id;
  hello.dim = dim;
  hello.members = p.body.member_ids;
  hello.f_max = cfg.body.f_max;
  hello.resolution = cfg.body.resolution;
  hello.window = cfg.body.window_halfwidth;
  p.channel->send(encode(ToAgent{hello}));
  const auto line = p.channel->receive(cfg.handshake_budget);
  if (!line) throw ProtocolError("agent " + std::to_string(p.id) + " did not answer hello");
  const FromAgent reply = decode_from_agent(*line, dim);
  const auto* h = std::get_if<HelloFromAgent>(&reply);
  if (!h) throw ProtocolError("agent " + std::to_string(p.id) + " answered hello with another message");
  if (h->version != kProtocolVersion) {
    throw ProtocolError("agent " + std::to_string(p.id) + " speaks protocol version " +
                        std::to_string(h->version));
  }
  p.name = h->name;
}

/// Reads until the action for `tick` arrives. Returns nullopt on timeout.
std::optional<ForceMap> await_action(Participant& p, std::int64_t tick, int dim,
                                     std::chrono::milliseconds budget) {
  const auto deadline = std::chrono::steady_clock::now() + budget;
  for (;;) {
    const auto now = std::chrono::steady_clock::now();
    const auto left = std::max(std::chrono::milliseconds(0),
                               std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now));
    const auto line = p.channel->receive(left);
    if (!line) return std::nullopt;
    const FromAgent msg = decode_from_agent(*line, dim);
    if (const auto* r = std::get_if<ResourcesMsg>(&msg)) {
      if (r->M < 0 || r->C < 0) throw ProtocolError("negative resource report");
      p.M = std::max(p.M, r->M);
      p.C = std::max(p.C, r->C);
    } else if (const auto* a = std::get_if<ActionMsg>(&msg)) {
      if (a->tick == tick) return a->forces;
      if (a->tick > tick) throw ProtocolError("action for future tick " + std::to_string(a->tick));
      // Late reply to a tick that already timed out; drop it.
    } else if (std::holds_alternative<ByeMsg>(msg)) {
      throw ProtocolError("agent " + std::to_string(p.id) + " left the episode");
    } else {
      throw ProtocolError("unexpected hello during episode");
    }
  }
}

void close_problem(Participant& p, bool solved, std::int64_t now, const EpisodeConfig& cfg,
                   TraceSink& trace, bool notify) {
  const Problem& prob = *p.active;
  SolveRecord rec;
  rec.problem_id = prob.id;
  rec.solved = solved;
  rec.O = p.observations;
  rec.D = now - prob.issued_tick;
  rec.M = p.M;
  rec.C = p.C;
  std::tie(rec.S, rec.S_norm) = score(solved, rec.O, rec.D, rec.M, rec.C, prob.calib, cfg.scoring);
  p.cumulative += rec.S_norm;
  p.out.records.push_back(rec);
  Json ev = event(now, "problem_closed");
  ev["agent"] = p.id;
  ev["problem"] = prob.id;
  ev["solved"] = solved;
  ev["O"] = rec.O;
  ev["D"] = rec.D;
  ev["M"] = rec.M;
  ev["C"] = rec.C;
  ev["S"] = rec.S;
  ev["S_norm"] = rec.S_norm;
  ev["cumulative"] = p.cumulative;
  trace.both(ev);
  if (notify) {
    p.channel->send(encode(ToAgent{ScoreMsg{prob.id, solved, rec.O, rec.D, rec.S, rec.S_norm}}));
  }
  p.active.reset();
  p.observations = 0;
}

}  // namespace

EpisodeResult run_episode(const EpisodeConfig& cfg, const std::vector<AgentSpec>& agents,
                          const EpisodeOptions& options) {
  validate(cfg);
  if (agents.empty()) throw ConfigError("an episode needs at least one agent");
  World world = generate_world(cfg.gen);
  const int dim = world.dim();
  if (static_cast<std::size_t>(cfg.body.size) * agents.size() > world.entities.size()) {
    throw ConfigError("not enough entities for " + std::to_string(agents.size()) + " bodies of size " +
                      std::to_string(cfg.body.size));
  }

  TraceSink trace(options.traces);
  EpisodeResult result;
  std::vector<Participant> parts(agents.size());
  const auto anchors = choose_anchors(world, static_cast<int>(agents.size()));
  std::vector<int> taken(anchors.begin(), anchors.end());
  for (std::size_t i = 0; i < agents.size(); ++i) {
    Participant& p = parts[i];
    p.spec = agents[i];
    p.id = static_cast<int>(i);
    std::vector<int> others;
    for (int a : taken) {
      if (a != anchors[i]) others.push_back(a);
    }
    p.body = import_body(world, cfg.body, anchors[i], others);
    taken.insert(taken.end(), p.body.member_ids.begin(), p.body.member_ids.end());
    p.problem_rng = world.problem_stream.fork(static_cast<std::uint64_t>(p.id));
    const std::uint64_t seed = mix64(cfg.gen.seed ^ mix64(p.spec.seed + static_cast<std::uint64_t>(p.id)));
    p.channel = open_channel(p, seed, options);
    try {
      handshake(p, cfg, dim);
    } catch (const IoError& e) {
      throw ProtocolError("agent " + std::to_string(p.id) + " failed the handshake: " + e.what());
    }
    p.out.agent_id = p.id;
    p.out.name = p.name;
    p.out.body = p.body.member_ids;
    p.out.stream.samples.push_back({0, 0.0});
  }

  // Headers and initial world.
  Json header{{"kind", "header"},
              {"format", "aow-trace"},
              {"version", 1},
              {"trace", "live"},
              {"rng", std::string(kStreamAlgorithm)},
              {"step", to_json(cfg.step)},
              {"clamps",
               {{"a_max", cfg.step.a_max}, {"v_max", cfg.step.v_max}, {"f_max", cfg.body.f_max}}},
              {"episode_len", cfg.episode_len},
              {"checkpoint_every", cfg.checkpoint_every}};
  Json roster = Json::array();
  for (const auto& p : parts) {
    roster.push_back(Json{{"id", p.id}, {"name", p.name}, {"members", p.body.member_ids}});
  }
  header["agents"] = roster;
  if (trace.enabled()) {
    trace.live_.push_back(header.dump());
    Json full_header = header;
    full_header["trace"] = "disclosure";
    full_header["gen"] = to_json(cfg.gen);
    trace.full_.push_back(full_header.dump());
    const std::string snap = snapshot(world);
    Json init = event(0, "world_init");
    init["hash"] = hash_bytes(snap);
    init["snapshot"] = Json::parse(snap);
    Json live_init = event(0, "world_init");
    live_init["entities"] = world.entities.size();
    trace.split(init, live_init);
  }

  std::int64_t t = 0;
  try {
    for (; t < cfg.episode_len; ++t) {
      // Issue problems to idle agents.
      for (auto& p : parts) {
        if (p.active) continue;
        const std::size_t regime = regime_index(world);
        if (p.issued_per_regime[regime] >= cfg.problems_per_regime) continue;
        Problem prob = generate_problem(world, p.body, cfg.body, cfg.problem, cfg.step, p.problem_rng,
                                        p.next_problem_id++);
        ++p.issued_per_regime[regime];
        p.observations = 0;
        Json full = event(t, "problem_issued");
        full["agent"] = p.id;
        full["problem"] = prob.id;
        full["epsilon"] = prob.epsilon;
        full["timeout"] = prob.timeout;
        full["target"] = prob.target.grid;
        Json live = full;
        full["p_null"] = prob.calib.p_null;
        full["o_ref"] = prob.calib.o_ref;
        full["d_ref"] = prob.calib.d_ref;
        Json hidden = Json::array();
        for (const auto& a : prob.hidden_actions) hidden.push_back(forces_json(a, dim));
        full["hidden_actions"] = hidden;
        trace.split(full, live);
        if (p.oracle) p.oracle->load_script(prob.hidden_actions);
        p.channel->send(encode(ToAgent{ProblemMsg{prob.id, t, prob.target.resolution, prob.target.grid,
                                                  prob.epsilon, prob.timeout}}));
        p.active = std::move(prob);
      }

      // One sense and one act per agent, in id order.
      ForceMap external;
      std::vector<int> senses(parts.size(), 0);
      std::vector<int> acts(parts.size(), 0);
      for (auto& p : parts) {
        std::int64_t counted = 0;
        const Observation obs = sense(world, p.body, cfg.body.resolution, counted);
        ++senses[static_cast<std::size_t>(p.id)];
        ++p.out.senses;
        if (p.active) p.observations += counted;
        Json sev = event(t, "sense");
        sev["agent"] = p.id;
        sev["problem"] = p.active ? Json(p.active->id) : Json(nullptr);
        trace.both(sev);
        p.channel->send(encode(ToAgent{ObservationMsg{t, obs.resolution, obs.grid, p.body.integrity}}));

        auto forces = await_action(p, t, dim, cfg.tick_budget);
        bool substituted = false;
        if (!forces) {
          ++p.out.timeouts;
          substituted = true;
          forces.emplace();
        }
        const ForceMap applied = act(world, p.body, Action{*forces, cfg.body.f_max});
        ++acts[static_cast<std::size_t>(p.id)];
        for (const auto& [id, f] : applied) external[id] = f;
        Json aev = event(t, "act");
        aev["agent"] = p.id;
        aev["forces"] = forces_json(applied, dim);
        aev["substituted"] = substituted;
        trace.both(aev);
      }
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (senses[i] != 1 || acts[i] != 1) throw std::logic_error("tick fairness violated");
      }

      const StepReport report = step(world, external, cfg.step);
      if (report.drift_event) {
        for (auto& p : parts) p.out.stream.drift_marks.push_back(t);
        Json full = event(t, "drift");
        Json laws = Json::array();
        for (const auto& law : world.laws) laws.push_back(to_json(law));
        full["laws"] = laws;
        trace.split(full, event(t, "drift"));
      }
      if (trace.enabled()) {
        Json full = event(world.tick, "step");
        Json live = full;
        if (world.tick % cfg.checkpoint_every == 0) {
          const std::string snap = snapshot(world);
          full["hash"] = hash_bytes(snap);
          full["snapshot"] = Json::parse(snap);
          trace.split(full, live);
        } else {
          full["hash"] = snapshot_hash(world);
          trace.split(full, live);
        }
      }

      bool any_destroyed = false;
      for (auto& p : parts) {
        if (p.body.mode == BodyMode::kDestructible) {
          update_integrity(world, p.body, cfg.body);
          if (p.body.destroyed && !p.out.destroyed) {
            p.out.destroyed = true;
            any_destroyed = true;
            Json dev = event(world.tick, "destroyed");
            dev["agent"] = p.id;
            trace.both(dev);
          }
        }
        if (p.active) {
          const std::int64_t elapsed = world.tick - p.active->issued_tick;
          if (check_solved(world, p.body, *p.active)) {
            close_problem(p, true, world.tick, cfg, trace, true);
          } else if (elapsed >= p.active->timeout) {
            close_problem(p, false, world.tick, cfg, trace, true);
          }
        }
        p.out.stream.samples.push_back({world.tick, p.cumulative});
      }
      if (any_destroyed) {
        ++t;
        break;
      }
    }
  } catch (const ProtocolError& e) {
    result.aborted = true;
    result.abort_reason = e.what();
  } catch (const IoError& e) {
    result.aborted = true;
    result.abort_reason = e.what();
  } catch (const ContractViolation& e) {
    result.aborted = true;
    result.abort_reason = e.what();
  }

  for (auto& p : parts) {
    if (p.active) close_problem(p, false, world.tick, cfg, trace, false);
    try {
      p.channel->send(encode(ToAgent{ByeMsg{result.aborted ? "aborted" : "episode_end"}}));
    } catch (const IoError&) {
      // The agent is already gone.
    }
  }

  result.ticks = world.tick;
  result.final_hash = snapshot_hash(world);
  Json end = event(world.tick, "episode_end");
  end["aborted"] = result.aborted;
  if (result.aborted) end["reason"] = result.abort_reason;
  Json full_end = end;
  full_end["hash"] = result.final_hash;
  trace.split(full_end, end);

  for (auto& p : parts) {
    AgentOutcome& out = p.out;
    out.stream.episode_len = world.tick;
    // The stream holds one sample per completed tick; a tick interrupted by
    // an abort contributes nothing.
    while (out.stream.samples.size() > static_cast<std::size_t>(world.tick) + 1) out.stream.samples.pop_back();
    if (out.stream.samples.back().tick != world.tick) out.stream.samples.push_back({world.tick, p.cumulative});
    if (world.tick >= 2) {
      out.report = adaptation_report(out.stream, cfg.metrics);
    }
    out.report.agent_id = p.id;
    out.report.agent_name = p.name;
    out.report.world_seed = cfg.gen.seed;
    out.report.retries = cfg.retries;
    result.agents.push_back(std::move(out));
  }
  result.live_trace = std::move(trace.live_);
  result.disclosure_trace = std::move(trace.full_);
  return result;
}

Stage1Result run_stage1(const EpisodeConfig& cfg, const AgentSpec& agent, int n_worlds,
                        std::uint64_t master_seed, bool keep_episodes) {
  if (n_worlds < 1) throw ConfigError("stage 1 needs at least one world");
  Stage1Result res;
  for (int i = 0; i < n_worlds; ++i) {
    EpisodeConfig c = cfg;
    c.gen.seed = derive_seed(master_seed, static_cast<std::uint64_t>(i));
    EpisodeOptions opt;
    opt.traces = keep_episodes;
    EpisodeResult ep = run_episode(c, {agent}, opt);
    if (ep.aborted) throw ProtocolError("world " + std::to_string(i) + ": " + ep.abort_reason);
    res.per_world.push_back(ep.agents.front().report);
    if (keep_episodes) res.episodes.push_back(std::move(ep));
  }
  res.aggregate = aggregate_reports(res.per_world);
  return res;
}

Stage2Result run_stage2(const EpisodeConfig& cfg, const std::vector<AgentSpec>& agents) {
  if (agents.size() < 2) throw ConfigError("stage 2 needs at least two agents");
  Stage2Result res;
  res.episode = run_episode(cfg, agents);
  if (res.episode.aborted) throw ProtocolError(res.episode.abort_reason);
  std::vector<AdaptationReport> reports;
  for (const auto& a : res.episode.agents) reports.push_back(a.report);
  res.ranking = relative_rank(std::move(reports));
  return res;
}

namespace {

ReplayVerdict fail(ReplayVerdict v, std::int64_t tick, std::string reason) {
  v.ok = false;
  v.divergent_tick = tick;
  v.reason = std::move(reason);
  return v;
}

}  // namespace

ReplayVerdict replay(const std::vector<std::string>& lines) {
  ReplayVerdict v;
  if (lines.empty()) return fail(v, 0, "empty trace");
  Json header;
  try {
    header = Json::parse(lines[0]);
  } catch (const std::exception& e) {
    return fail(v, 0, std::string("unreadable header: ") + e.what());
  }
  if (header.value("format", "") != "aow-trace" || header.value("version", 0) != 1) {
    return fail(v, 0, "not an aow-trace v1 file");
  }
  if (header.value("trace", "") != "disclosure") {
    return fail(v, 0, "replay needs the disclosure trace, got '" + header.value("trace", "") + "'");
  }
  const StepParams params = step_params_from_json(header.at("step"));

  std::optional<World> world;
  ForceMap pending;
  std::int64_t last_tick = 0;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    if (lines[n].empty()) continue;
    Json ev;
    try {
      ev = Json::parse(lines[n]);
    } catch (const std::exception& e) {
      return fail(v, last_tick, "line " + std::to_string(n + 1) + " is not JSON: " + e.what());
    }
    const std::string kind = ev.value("kind", "");
    const std::int64_t tick = ev.value("tick", std::int64_t{-1});
    if (kind == "world_init") {
      const std::string snap = ev.at("snapshot").dump();
      if (hash_bytes(snap) != ev.value("hash", "")) return fail(v, 0, "initial snapshot does not match its hash");
      world = restore(snap);
      v.initial_world = *world;
      last_tick = world->tick;
    } else if (!world) {
      return fail(v, 0, "missing world_init record before line " + std::to_string(n + 1));
    } else if (kind == "act") {
      for (const auto& item : ev.at("forces")) pending[item.at("id").get<int>()] = vec_from_json(item.at("f"));
    } else if (kind == "step") {
      try {
        step(*world, pending, params);
      } catch (const ContractViolation& e) {
        return fail(v, tick, std::string("recorded action rejected: ") + e.what());
      }
      pending.clear();
      last_tick = world->tick;
      if (world->tick != tick) return fail(v, tick, "step record out of order");
      const std::string snap = snapshot(*world);
      if (ev.contains("snapshot")) {
        const std::string recorded = ev.at("snapshot").dump();
        if (hash_bytes(recorded) != ev.value("hash", "")) {
          return fail(v, tick, "checkpoint snapshot does not match its hash");
        }
        if (recorded != snap) return fail(v, tick, "world state diverges from checkpoint");
      }
      if (ev.contains("hash") && hash_bytes(snap) != ev.at("hash").get<std::string>()) {
        return fail(v, tick, "world hash diverges");
      }
    } else if (kind == "episode_end") {
      if (tick != world->tick) return fail(v, tick, "episode_end tick does not match replay");
      if (snapshot_hash(*world) != ev.value("hash", "")) return fail(v, tick, "final hash diverges");
      v.ok = true;
      v.final_world = *world;
      return v;
    }
  }
  if (!world) return fail(v, 0, "missing world_init record");
  return fail(v, last_tick, "truncated trace: missing episode_end record");
}

ReplayVerdict replay_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trace " + path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(std::move(line));
  return replay(lines);
}

namespace {

bool leaks(const Json& j) {
  static const std::set<std::string> kSecret{"laws",     "terms",          "coeff",  "snapshot",
                                             "seed",     "hidden_actions", "gen",    "grammar",
                                             "coeff_min", "coeff_max",     "streams", "p_null"};
  if (j.is_object()) {
    for (const auto& [k, val] : j.items()) {
      if (kSecret.count(k) || leaks(val)) return true;
    }
  } else if (j.is_array()) {
    for (const auto& val : j) {
      if (leaks(val)) return true;
    }
  }
  return false;
}

void write_atomic(const std::filesystem::path& path, const std::string& data) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot write " + tmp);
    out << data;
    if (!out) throw IoError("write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp + ": " + ec.message());
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string s;
  for (const auto& l : lines) {
    s += l;
    s += '\n';
  }
  return s;
}

}  // namespace

std::size_t audit_live_trace(const std::vector<std::string>& lines) {
  std::size_t bad = 0;
  for (const auto& line : lines) {
    if (line.empty()) continue;
    try {
      if (leaks(Json::parse(line))) ++bad;
    } catch (const std::exception&) {
      ++bad;
    }
  }
  return bad;
}

void write_episode_outputs(const EpisodeResult& result, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  const fs::path root(dir);
  write_atomic(root / "live_trace.jsonl", join_lines(result.live_trace));
  write_atomic(root / "disclosure_trace.jsonl", join_lines(result.disclosure_trace));
  std::ostringstream report;
  write_report_csv_header(report);
  std::ostringstream records;
  records << "agent_id,problem_id,solved,O,D,M,C,S,S_norm\n";
  records.precision(17);
  for (const auto& a : result.agents) {
    std::ostringstream stream;
    write_score_stream(stream, a.stream);
    write_atomic(root / ("scores_agent" + std::to_string(a.agent_id) + ".csv"), stream.str());
    write_report_csv_row(report, a.report);
    for (const auto& r : a.records) {
      records << a.agent_id << ',' << r.problem_id << ',' << (r.solved ? 1 : 0) << ',' << r.O << ','
              << r.D << ',' << r.M << ',' << r.C << ',' << r.S << ',' << r.S_norm << '\n';
    }
  }
  write_atomic(root / "report.csv", report.str());
  write_atomic(root / "records.csv", records.str());
}

}  // namespace aow
