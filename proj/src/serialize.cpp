// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#include "aow/serialize.hpp"

#include <cstdio>

#include "aow/random.hpp"

namespace aow {

Json to_json(const Vec& v, int dim) {
  Json a = Json::array();
  for (int k = 0; k < dim; ++k) a.push_back(v[k]);
  return a;
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array() || j.size() > static_cast<std::size_t>(kMaxDim)) {
    throw IoError("vector must be an array of at most 3 numbers");
  }
  Vec v{};
  for (std::size_t k = 0; k < j.size(); ++k) v[k] = j[k].get<double>();
  return v;
}

Json to_json(const CausationLaw& law) {
  Json terms = Json::array();
  for (const auto& t : law.terms) {
    terms.push_back(Json::array({std::string(term_name(t.term)), t.coeff, t.polarity_coupled}));
  }
  Json j;
  j["level"] = law.level;
  j["drift_handle"] = law.drift_handle ? Json(*law.drift_handle) : Json(nullptr);
  j["terms"] = std::move(terms);
  return j;
}

CausationLaw law_from_json(const Json& j) {
  CausationLaw law;
  law.level = j.at("level").get<int>();
  if (!j.at("drift_handle").is_null()) law.drift_handle = j.at("drift_handle").get<int>();
  for (const auto& t : j.at("terms")) {
    law.terms.push_back({parse_term(t.at(0).get<std::string>()), t.at(1).get<double>(),
                         t.at(2).get<bool>()});
  }
  return law;
}

Json to_json(const GenSpec& s) {
  Json basis = Json::array();
  for (Term t : s.grammar.basis) basis.push_back(std::string(term_name(t)));
  Json j;
  j["seed"] = s.seed;
  j["dim"] = s.dim;
  j["n_entities"] = s.n_entities;
  j["polarity_ratio"] = s.polarity_ratio;
  j["n_levels"] = s.n_levels;
  j["arena_extent"] = s.arena_extent;
  j["inertia_min"] = s.inertia_min;
  j["inertia_max"] = s.inertia_max;
  j["grammar"] = {{"basis", basis},
                  {"max_terms", s.grammar.max_terms},
                  {"coeff_min", s.grammar.coeff_min},
                  {"coeff_max", s.grammar.coeff_max},
                  {"polarity_coupling", s.grammar.polarity_coupling}};
  j["drift"] = {{"regime_times", s.drift.regime_times},
                {"smooth_rate", s.drift.smooth_rate},
                {"drift_levels", s.drift.drift_levels}};
  return j;
}

GenSpec genspec_from_json(const Json& j) {
  GenSpec s;
  s.seed = j.at("seed").get<std::uint64_t>();
  s.dim = j.at("dim").get<int>();
  s.n_entities = j.at("n_entities").get<int>();
  s.polarity_ratio = j.at("polarity_ratio").get<double>();
  s.n_levels = j.at("n_levels").get<int>();
  s.arena_extent = j.at("arena_extent").get<double>();
  s.inertia_min = j.at("inertia_min").get<double>();
  s.inertia_max = j.at("inertia_max").get<double>();
  const auto& g = j.at("grammar");
  s.grammar.basis.clear();
  for (const auto& t : g.at("basis")) s.grammar.basis.push_back(parse_term(t.get<std::string>()));
  s.grammar.max_terms = g.at("max_terms").get<int>();
  s.grammar.coeff_min = g.at("coeff_min").get<double>();
  s.grammar.coeff_max = g.at("coeff_max").get<double>();
  s.grammar.polarity_coupling = g.at("polarity_coupling").get<bool>();
  const auto& d = j.at("drift");
  s.drift.regime_times = d.at("regime_times").get<std::vector<std::int64_t>>();
  s.drift.smooth_rate = d.at("smooth_rate").get<double>();
  s.drift.drift_levels = d.at("drift_levels").get<std::vector<int>>();
  return s;
}

Json to_json(const StepParams& p) {
  return Json{{"h", p.h}, {"a_max", p.a_max}, {"v_max", p.v_max}, {"eps_r", p.eps_r}};
}

StepParams step_params_from_json(const Json& j) {
  StepParams p;
  p.h = j.at("h").get<double>();
  p.a_max = j.at("a_max").get<double>();
  p.v_max = j.at("v_max").get<double>();
  p.eps_r = j.at("eps_r").get<double>();
  return p;
}

Json to_json(const Stream& s) { return Json::array({s.key(), s.counter()}); }

Stream stream_from_json(const Json& j) {
  return Stream(j.at(0).get<std::uint64_t>(), j.at(1).get<std::uint64_t>());
}

Json world_to_json(const World& w) {
  const int dim = w.dim();
  Json j;
  j["format"] = "aow-world";
  j["version"] = 1;
  j["spec"] = to_json(w.spec);
  j["tick"] = w.tick;
  j["streams"] = {{"generation", to_json(w.generation_stream)},
                  {"drift", to_json(w.drift_stream)},
                  {"problems", to_json(w.problem_stream)}};
  Json laws = Json::array();
  for (const auto& law : w.laws) laws.push_back(to_json(law));
  j["laws"] = std::move(laws);
  // [id, polarity, inertia, position, velocity]
  Json ents = Json::array();
  for (const auto& e : w.entities) {
    ents.push_back(Json::array({e.id, e.polarity, e.inertia, to_json(e.position, dim),
                                to_json(e.velocity, dim)}));
  }
  j["entities"] = std::move(ents);
  // [id, children, agg_inertia, agg_polarity, leaf_count, agg_position, agg_velocity]
  Json levels = Json::array();
  for (const auto& lv : w.composites) {
    Json arr = Json::array();
    for (const auto& c : lv) {
      arr.push_back(Json::array({c.id, c.children, c.agg_inertia, c.agg_polarity, c.leaf_count,
                                 to_json(c.agg_position, dim), to_json(c.agg_velocity, dim)}));
    }
    levels.push_back(std::move(arr));
  }
  j["composites"] = std::move(levels);
  j["drift_events"] = w.drift_events;
  j["last_stress"] = w.last_stress;
  return j;
}

World world_from_json(const Json& j) {
  if (j.value("format", "") != "aow-world" || j.value("version", 0) != 1) {
    throw IoError("not an aow-world v1 document");
  }
  World w;
  w.spec = genspec_from_json(j.at("spec"));
  validate(w.spec);
  w.tick = j.at("tick").get<std::int64_t>();
  w.generation_stream = stream_from_json(j.at("streams").at("generation"));
  w.drift_stream = stream_from_json(j.at("streams").at("drift"));
  w.problem_stream = stream_from_json(j.at("streams").at("problems"));
  for (const auto& l : j.at("laws")) w.laws.push_back(law_from_json(l));
  for (const auto& e : j.at("entities")) {
    Entity ent;
    ent.id = e.at(0).get<int>();
    ent.polarity = e.at(1).get<int>();
    ent.inertia = e.at(2).get<double>();
    ent.position = vec_from_json(e.at(3));
    ent.velocity = vec_from_json(e.at(4));
    w.entities.push_back(ent);
  }
  int level = 1;
  for (const auto& lv : j.at("composites")) {
    std::vector<Composite> out;
    for (const auto& c : lv) {
      Composite comp;
      comp.id = c.at(0).get<int>();
      comp.level = level;
      comp.children = c.at(1).get<std::vector<int>>();
      comp.agg_inertia = c.at(2).get<double>();
      comp.agg_polarity = c.at(3).get<double>();
      comp.leaf_count = c.at(4).get<double>();
      comp.agg_position = vec_from_json(c.at(5));
      comp.agg_velocity = vec_from_json(c.at(6));
      out.push_back(std::move(comp));
    }
    w.composites.push_back(std::move(out));
    ++level;
  }
  w.drift_events = j.at("drift_events").get<std::vector<std::int64_t>>();
  w.last_stress = j.at("last_stress").get<std::vector<double>>();
  if (static_cast<int>(w.entities.size()) != w.spec.n_entities ||
      static_cast<int>(w.laws.size()) != w.spec.n_levels ||
      static_cast<int>(w.composites.size()) != w.spec.n_levels - 1) {
    throw IoError("world document is inconsistent with its GenSpec");
  }
  return w;
}

std::string snapshot(const World& world) { return world_to_json(world).dump(); }

World restore(std::string_view bytes) {
  Json j;
  try {
    j = Json::parse(bytes);
  } catch (const Json::exception& e) {
    throw IoError(std::string("malformed world snapshot: ") + e.what());
  }
  try {
    return world_from_json(j);
  } catch (const Json::exception& e) {
    throw IoError(std::string("malformed world snapshot: ") + e.what());
  }
}

std::string hash_bytes(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string snapshot_hash(const World& world) { return hash_bytes(snapshot(world)); }

std::string laws_bytes(const World& world, int level) {
  return to_json(world.laws.at(static_cast<std::size_t>(level))).dump();
}

}  // namespace aow
