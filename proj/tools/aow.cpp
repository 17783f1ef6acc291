// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: world generation, episodes, evaluation stages,
// replay verification, metric reports and a stdio agent.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "aow/agents.hpp"
#include "aow/config.hpp"
#include "aow/harness.hpp"
#include "aow/metrics.hpp"
#include "aow/serialize.hpp"

namespace {

enum Exit { kOk = 0, kOther = 1, kConfig = 2, kProtocol = 3, kIo = 4 };

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "Settings file (key = value); defaults to $AOW_CONFIG");
  cmd->add_option("--set", c.overrides, "Override one setting, key=value (repeatable)");
}

aow::EpisodeConfig load(const Common& c) {
  aow::EpisodeConfig cfg;
  std::string path = c.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv(aow::kConfigEnv); env && *env) path = env;
  }
  if (!path.empty()) cfg = aow::load_config(path);
  for (const auto& kv : c.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw aow::ConfigError("--set expects key=value, got '" + kv + "'");
    aow::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  aow::validate(cfg);
  return cfg;
}

void prepare_out(const std::string& dir, bool force) {
  namespace fs = std::filesystem;
  if (fs::exists(dir) && !(fs::is_directory(dir) && fs::is_empty(dir)) && !force) {
    throw aow::IoError("output '" + dir + "' already exists; pass --force to overwrite");
  }
}

std::vector<aow::AgentSpec> parse_agents(const std::vector<std::string>& names, std::uint64_t seed) {
  std::vector<aow::AgentSpec> out;
  for (const auto& n : names) out.push_back(aow::AgentSpec::parse(n, seed));
  return out;
}

void print_report(const aow::AdaptationReport& r) {
  std::cout << "agent " << r.agent_id << " (" << r.agent_name << "): alpha=" << r.alpha << " beta=" << r.beta
            << " gamma=" << r.gamma << (r.gamma_measured ? "" : " (unmeasured)") << " I=" << r.I
            << " [lower bound]\n";
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw aow::IoError("cannot write " + path);
  out << data;
  if (!out) throw aow::IoError("write failed: " + path);
}

int run_agent(const std::string& kind, std::uint64_t seed, int delay_ms) {
  aow::MindSession session(aow::make_builtin(kind, seed));
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.empty()) continue;
    const auto replies = session.handle(line);
    if (delay_ms > 0 && !replies.empty() && line.find("\"observation\"") != std::string::npos) {
      std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
    }
    for (const auto& r : replies) std::cout << r << '\n';
    std::cout.flush();
    if (session.finished()) break;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aow: artificial open world simulator and evaluation harness"};
  app.require_subcommand(1);

  Common common;
  bool force = false;
  std::string out;

  auto* gen = app.add_subcommand("gen", "Generate a world and write its snapshot");
  add_common(gen, common);
  std::uint64_t gen_seed = 0;
  bool gen_seed_set = false;
  gen->add_option("--seed", gen_seed, "World seed (overrides the config)")->each([&](const std::string&) {
    gen_seed_set = true;
  });
  gen->add_option("--out", out, "Snapshot file")->required();
  gen->add_flag("--force", force, "Overwrite an existing file");

  auto* run = app.add_subcommand("run", "Run one episode and write traces, scores and report");
  add_common(run, common);
  std::vector<std::string> run_agents;
  std::uint64_t agent_seed = 0;
  bool allow_oracle = false;
  run->add_option("--agent", run_agents, "null, random, greedy, oracle or cmd:<command> (repeatable)")
      ->required();
  run->add_option("--agent-seed", agent_seed, "Seed for stochastic builtin agents");
  run->add_option("--out", out, "Output directory")->required();
  run->add_flag("--force", force, "Overwrite existing outputs");
  run->add_flag("--allow-oracle", allow_oracle, "Permit the privileged oracle (audits only)");

  auto* s1 = app.add_subcommand("stage1", "Evaluate one agent alone over several worlds");
  add_common(s1, common);
  std::string s1_agent;
  int n_worlds = 20;
  std::uint64_t master_seed = 1;
  s1->add_option("--agent", s1_agent, "Agent to evaluate")->required();
  s1->add_option("--agent-seed", agent_seed, "Seed for stochastic builtin agents");
  s1->add_option("--worlds", n_worlds, "Number of worlds")->check(CLI::PositiveNumber);
  s1->add_option("--master-seed", master_seed, "Master seed for world seeds");
  s1->add_option("--out", out, "Output directory")->required();
  s1->add_flag("--force", force, "Overwrite existing outputs");

  auto* s2 = app.add_subcommand("stage2", "Evaluate several agents in one shared world");
  add_common(s2, common);
  std::vector<std::string> s2_agents;
  s2->add_option("--agent", s2_agents, "Agents (repeatable, at least two)")->required();
  s2->add_option("--agent-seed", agent_seed, "Seed for stochastic builtin agents");
  s2->add_option("--out", out, "Output directory")->required();
  s2->add_flag("--force", force, "Overwrite existing outputs");

  auto* rep = app.add_subcommand("replay", "Verify a disclosure trace by re-simulation");
  std::string trace_path;
  bool show_laws = false;
  rep->add_option("trace", trace_path, "disclosure_trace.jsonl")->required();
  rep->add_flag("--laws", show_laws, "Print the disclosed world laws");

  auto* report = app.add_subcommand("report", "Adaptation metrics from a score stream CSV");
  add_common(report, common);
  std::string scores_path;
  std::string rate_out;
  report->add_option("scores", scores_path, "Score stream CSV")->required();
  report->add_option("--rate-out", rate_out, "Also write the rate curve CSV here");

  auto* agent = app.add_subcommand("agent", "Run a builtin mind on stdin/stdout");
  std::string kind = "greedy";
  int delay_ms = 0;
  agent->add_option("--kind", kind, "null, random or greedy")->check(CLI::IsMember({"null", "random", "greedy"}));
  agent->add_option("--seed", agent_seed, "Agent seed");
  agent->add_option("--delay-ms", delay_ms, "Sleep before each action (testing aid)");

  auto* golden = app.add_subcommand("golden", "Write the reference score streams used by the acceptance suite");
  golden->add_option("--out", out, "Output directory")->required();
  golden->add_flag("--force", force, "Overwrite existing outputs");

  auto* showcfg = app.add_subcommand("config", "Print the effective settings");
  add_common(showcfg, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (*gen) {
      aow::EpisodeConfig cfg = load(common);
      if (gen_seed_set) cfg.gen.seed = gen_seed;
      if (std::filesystem::exists(out) && !force) {
        throw aow::IoError("output '" + out + "' already exists; pass --force to overwrite");
      }
      const aow::World world = aow::generate_world(cfg.gen);
      write_file(out, aow::snapshot(world));
      std::cout << "world " << aow::snapshot_hash(world) << " -> " << out << '\n';
    } else if (*run) {
      const aow::EpisodeConfig cfg = load(common);
      prepare_out(out, force);
      aow::EpisodeOptions opt;
      opt.allow_oracle = allow_oracle;
      const auto res = aow::run_episode(cfg, parse_agents(run_agents, agent_seed), opt);
      aow::write_episode_outputs(res, out);
      for (const auto& a : res.agents) print_report(a.report);
      if (res.aborted) {
        std::cerr << "episode aborted: " << res.abort_reason << '\n';
        return kProtocol;
      }
    } else if (*s1) {
      const aow::EpisodeConfig cfg = load(common);
      prepare_out(out, force);
      const auto spec = aow::AgentSpec::parse(s1_agent, agent_seed);
      const auto res = aow::run_stage1(cfg, spec, n_worlds, master_seed);
      std::filesystem::create_directories(out);
      std::ostringstream csv;
      aow::write_report_csv_header(csv);
      for (const auto& r : res.per_world) aow::write_report_csv_row(csv, r);
      write_file(out + "/stage1_worlds.csv", csv.str());
      std::ostringstream agg;
      aow::write_report_csv_header(agg);
      aow::write_report_csv_row(agg, res.aggregate);
      write_file(out + "/stage1_report.csv", agg.str());
      print_report(res.aggregate);
    } else if (*s2) {
      const aow::EpisodeConfig cfg = load(common);
      prepare_out(out, force);
      const auto res = aow::run_stage2(cfg, parse_agents(s2_agents, agent_seed));
      aow::write_episode_outputs(res.episode, out);
      std::ostringstream csv;
      aow::write_report_csv_header(csv);
      for (const auto& r : res.ranking) aow::write_report_csv_row(csv, r);
      write_file(out + "/ranking.csv", csv.str());
      int rank = 1;
      for (const auto& r : res.ranking) {
        std::cout << rank++ << ". ";
        print_report(r);
      }
    } else if (*rep) {
      const auto v = aow::replay_file(trace_path);
      if (v.ok) {
        std::cout << "OK";
        if (v.final_world) std::cout << " (" << v.final_world->tick << " ticks)";
        std::cout << '\n';
        if (show_laws && v.initial_world) {
          for (const auto& law : v.initial_world->laws) std::cout << aow::to_json(law).dump() << '\n';
        }
        return kOk;
      }
      std::cout << "FAIL at tick " << v.divergent_tick.value_or(0) << ": " << v.reason << '\n';
      return kOther;
    } else if (*report) {
      const aow::EpisodeConfig cfg = load(common);
      const auto stream = aow::read_score_stream_file(scores_path);
      const auto r = aow::adaptation_report(stream, cfg.metrics);
      aow::write_report_csv_header(std::cout);
      aow::write_report_csv_row(std::cout, r);
      if (!rate_out.empty()) {
        std::ostringstream rc;
        aow::write_rate_csv(rc, aow::rate_curve(stream, cfg.metrics.window));
        write_file(rate_out, rc.str());
      }
    } else if (*agent) {
      return run_agent(kind, agent_seed, delay_ms);
    } else if (*golden) {
      prepare_out(out, force);
      std::filesystem::create_directories(out);
      int i = 0;
      for (const auto& stream : aow::golden_adaptation_streams()) {
        std::ostringstream csv;
        aow::write_score_stream(csv, stream);
        write_file(out + "/adaptation_" + std::to_string(i++) + ".csv", csv.str());
      }
      i = 0;
      for (const auto& stream : aow::golden_generalization_streams()) {
        std::ostringstream csv;
        aow::write_score_stream(csv, stream);
        write_file(out + "/generalization_" + std::to_string(i++) + ".csv", csv.str());
      }
      std::cout << "golden streams -> " << out << '\n';
    } else if (*showcfg) {
      std::cout << aow::config_to_text(load(common));
    }
  } catch (const aow::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const aow::ProtocolError& e) {
    std::cerr << "protocol error: " << e.what() << '\n';
    return kProtocol;
  } catch (const aow::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kOk;
}
