// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aow/config.hpp"
#include "aow/harness.hpp"
#include "aow/metrics.hpp"
#include "aow/serialize.hpp"

namespace py = pybind11;

namespace {

aow::EpisodeConfig make_config(const std::map<std::string, std::string>& settings) {
  aow::EpisodeConfig cfg;
  for (const auto& [key, value] : settings) aow::apply_setting(cfg, key, value);
  aow::validate(cfg);
  return cfg;
}

aow::ScoreStream make_stream(const std::vector<std::pair<std::int64_t, double>>& samples,
                             const std::vector<std::int64_t>& drift_marks) {
  aow::ScoreStream s;
  for (const auto& [t, c] : samples) s.samples.push_back({t, c});
  s.drift_marks = drift_marks;
  s.episode_len = samples.empty() ? 0 : samples.back().first;
  return s;
}

std::vector<std::pair<std::int64_t, double>> curve_pairs(const aow::RateCurve& c) {
  std::vector<std::pair<std::int64_t, double>> out;
  for (const auto& p : c) out.emplace_back(p.tick, p.rate);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Open world simulator, evaluation harness and adaptation metrics.";

  py::register_exception<aow::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<aow::ProtocolError>(m, "ProtocolError");
  py::register_exception<aow::IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<aow::ContractViolation>(m, "ContractViolation", PyExc_ValueError);
  py::register_exception<aow::InsufficientData>(m, "InsufficientData", PyExc_ValueError);

  py::class_<aow::AdaptationReport>(m, "AdaptationReport")
      .def_readonly("agent_id", &aow::AdaptationReport::agent_id)
      .def_readonly("agent_name", &aow::AdaptationReport::agent_name)
      .def_readonly("alpha", &aow::AdaptationReport::alpha)
      .def_readonly("beta", &aow::AdaptationReport::beta)
      .def_readonly("gamma", &aow::AdaptationReport::gamma)
      .def_readonly("I", &aow::AdaptationReport::I)
      .def_readonly("gamma_measured", &aow::AdaptationReport::gamma_measured)
      .def_readonly("segments", &aow::AdaptationReport::segments)
      .def_readonly("world_seed", &aow::AdaptationReport::world_seed)
      .def("__repr__", [](const aow::AdaptationReport& r) {
        return "<AdaptationReport " + r.agent_name + " I=" + std::to_string(r.I) + ">";
      });

  py::class_<aow::EpisodeResult>(m, "EpisodeResult")
      .def_readonly("live_trace", &aow::EpisodeResult::live_trace)
      .def_readonly("disclosure_trace", &aow::EpisodeResult::disclosure_trace)
      .def_readonly("final_hash", &aow::EpisodeResult::final_hash)
      .def_readonly("ticks", &aow::EpisodeResult::ticks)
      .def_readonly("aborted", &aow::EpisodeResult::aborted)
      .def_readonly("abort_reason", &aow::EpisodeResult::abort_reason)
      .def_property_readonly("reports",
                             [](const aow::EpisodeResult& r) {
                               std::vector<aow::AdaptationReport> out;
                               for (const auto& a : r.agents) out.push_back(a.report);
                               return out;
                             })
      .def_property_readonly("scores", [](const aow::EpisodeResult& r) {
        std::vector<std::vector<std::pair<std::int64_t, double>>> out;
        for (const auto& a : r.agents) {
          auto& s = out.emplace_back();
          for (const auto& p : a.stream.samples) s.emplace_back(p.tick, p.cumulative);
        }
        return out;
      });

  m.def(
      "config_text", [](const std::map<std::string, std::string>& settings) {
        return aow::config_to_text(make_config(settings));
      },
      py::arg("settings") = std::map<std::string, std::string>{},
      "Effective settings as `key = value` text.");

  m.def(
      "world_hash",
      [](const std::map<std::string, std::string>& settings) {
        return aow::snapshot_hash(aow::generate_world(make_config(settings).gen));
      },
      py::arg("settings") = std::map<std::string, std::string>{}, "Hash of the generated initial world.");

  m.def(
      "run_episode",
      [](const std::vector<std::string>& agents, const std::map<std::string, std::string>& settings,
         std::uint64_t agent_seed, bool traces) {
        std::vector<aow::AgentSpec> specs;
        for (const auto& a : agents) specs.push_back(aow::AgentSpec::parse(a, agent_seed));
        aow::EpisodeOptions opt;
        opt.traces = traces;
        const auto cfg = make_config(settings);
        py::gil_scoped_release release;
        return aow::run_episode(cfg, specs, opt);
      },
      py::arg("agents"), py::arg("settings") = std::map<std::string, std::string>{},
      py::arg("agent_seed") = 0, py::arg("traces") = true);

  m.def(
      "replay",
      [](const std::vector<std::string>& lines) {
        const auto v = aow::replay(lines);
        py::dict d;
        d["ok"] = v.ok;
        d["tick"] = v.divergent_tick ? py::cast(*v.divergent_tick) : py::none();
        d["reason"] = v.reason;
        return d;
      },
      py::arg("disclosure_trace"));

  m.def("audit_live_trace", &aow::audit_live_trace, py::arg("lines"));

  m.def(
      "rate_curve",
      [](const std::vector<std::pair<std::int64_t, double>>& samples, int window) {
        return curve_pairs(aow::rate_curve(make_stream(samples, {}), window));
      },
      py::arg("samples"), py::arg("window") = 25, "(tick, cumulative) pairs to (tick, rate) pairs.");

  m.def(
      "alpha_beta",
      [](const std::vector<std::pair<std::int64_t, double>>& curve, std::int64_t t0, std::int64_t t1,
         double theta) {
        aow::RateCurve c;
        for (const auto& [t, r] : curve) c.push_back({t, r});
        return aow::extract_alpha_beta(c, t0, t1, theta);
      },
      py::arg("curve"), py::arg("t0"), py::arg("t1"), py::arg("theta") = 0.9);

  m.def(
      "gamma",
      [](const std::vector<std::pair<std::int64_t, double>>& curve, std::int64_t mark, int pre, int post) {
        aow::RateCurve c;
        for (const auto& [t, r] : curve) c.push_back({t, r});
        return aow::extract_gamma(c, mark, pre, post);
      },
      py::arg("curve"), py::arg("mark"), py::arg("pre_win") = 100, py::arg("post_win") = 100);

  m.def(
      "merge",
      [](double a, double b, double g, std::array<double, 3> w) { return aow::merge(a, b, g, w); },
      py::arg("alpha"), py::arg("beta"), py::arg("gamma"),
      py::arg("weights") = std::array<double, 3>{1.0 / 3, 1.0 / 3, 1.0 / 3});

  m.def(
      "adaptation_report",
      [](const std::vector<std::pair<std::int64_t, double>>& samples, const std::vector<std::int64_t>& marks,
         const std::map<std::string, std::string>& settings) {
        return aow::adaptation_report(make_stream(samples, marks), make_config(settings).metrics);
      },
      py::arg("samples"), py::arg("drift_marks") = std::vector<std::int64_t>{},
      py::arg("settings") = std::map<std::string, std::string>{});
}
