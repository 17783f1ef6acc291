// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#include "aow/protocol.hpp"

#include <cmath>
#include <initializer_list>
#include <utility>

#include <json.hpp>

namespace aow {

namespace {

using Json = nlohmann::json;

enum class Type { kInt, kNum, kBool, kStr, kIntArray, kNumArray, kForces };

struct Field {
  const char* name;
  Type type;
};

using Schema = std::initializer_list<Field>;

[[noreturn]] void violation(const std::string& what) { throw ProtocolError("protocol: " + what); }

bool is_int(const Json& v) { return v.is_number_integer(); }
bool is_num(const Json& v) { return v.is_number() && std::isfinite(v.get<double>()); }

void check_type(const std::string& kind, const Field& f, const Json& v) {
  bool ok = false;
  switch (f.type) {
    case Type::kInt: ok = is_int(v); break;
    case Type::kNum: ok = is_num(v); break;
    case Type::kBool: ok = v.is_boolean(); break;
    case Type::kStr: ok = v.is_string(); break;
    case Type::kIntArray:
      ok = v.is_array();
      for (const auto& x : v) ok = ok && is_int(x);
      break;
    case Type::kNumArray:
      ok = v.is_array();
      for (const auto& x : v) ok = ok && is_num(x);
      break;
    case Type::kForces:
      ok = v.is_array();
      for (const auto& x : v) {
        ok = ok && x.is_object() && x.size() == 2 && x.contains("id") && is_int(x["id"]) &&
             x.contains("f") && x["f"].is_array();
        if (ok) {
          for (const auto& c : x["f"]) ok = ok && is_num(c);
        }
      }
      break;
  }
  if (!ok) violation("field '" + std::string(f.name) + "' of '" + kind + "' has the wrong type");
}

// Closed schema: every listed field required, nothing else allowed.
void check_schema(const Json& j, const std::string& kind, Schema schema) {
  for (const auto& [key, value] : j.items()) {
    if (key == "kind") continue;
    bool known = false;
    for (const auto& f : schema) known = known || key == f.name;
    if (!known) violation("unknown field '" + key + "' in '" + kind + "' message");
  }
  for (const auto& f : schema) {
    if (!j.contains(f.name)) violation("missing field '" + std::string(f.name) + "' in '" + kind + "'");
    check_type(kind, f, j[f.name]);
  }
}

Json parse_line(std::string_view line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const Json::exception&) {
    violation("line is not valid JSON");
  }
  if (!j.is_object()) violation("message must be a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string()) violation("message lacks a string 'kind'");
  return j;
}

constexpr Schema kHelloToAgent = {{"version", Type::kInt},   {"agent_id", Type::kInt},
                                  {"dim", Type::kInt},       {"members", Type::kIntArray},
                                  {"f_max", Type::kNum},     {"resolution", Type::kInt},
                                  {"window", Type::kNum}};
constexpr Schema kProblem = {{"id", Type::kInt},           {"tick", Type::kInt},
                             {"resolution", Type::kInt},   {"target", Type::kNumArray},
                             {"epsilon", Type::kNum},      {"timeout", Type::kInt}};
constexpr Schema kObservation = {{"tick", Type::kInt},
                                 {"resolution", Type::kInt},
                                 {"grid", Type::kNumArray},
                                 {"integrity", Type::kNum}};
constexpr Schema kScore = {{"problem_id", Type::kInt}, {"solved", Type::kBool},
                           {"O", Type::kInt},          {"D", Type::kInt},
                           {"S", Type::kNum},          {"S_norm", Type::kNum}};
constexpr Schema kBye = {{"reason", Type::kStr}};
constexpr Schema kHelloFromAgent = {{"version", Type::kInt}, {"name", Type::kStr}};
constexpr Schema kAction = {{"tick", Type::kInt}, {"forces", Type::kForces}};
constexpr Schema kResources = {{"M", Type::kInt}, {"C", Type::kInt}};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Json vec_json(const Vec& v, int dim) {
  Json a = Json::array();
  for (int k = 0; k < dim; ++k) a.push_back(v[k]);
  return a;
}

}  // namespace

std::string encode(const ToAgent& msg) {
  const Json j = std::visit(
      Overloaded{
          [](const HelloToAgent& m) {
            return Json{{"kind", "hello"},       {"version", m.version},
                        {"agent_id", m.agent_id}, {"dim", m.dim},
                        {"members", m.members},   {"f_max", m.f_max},
                        {"resolution", m.resolution}, {"window", m.window}};
          },
          [](const ProblemMsg& m) {
            return Json{{"kind", "problem"},       {"id", m.id},
                        {"tick", m.tick},          {"resolution", m.resolution},
                        {"target", m.target},      {"epsilon", m.epsilon},
                        {"timeout", m.timeout}};
          },
          [](const ObservationMsg& m) {
            return Json{{"kind", "observation"}, {"tick", m.tick},
                        {"resolution", m.resolution}, {"grid", m.grid},
                        {"integrity", m.integrity}};
          },
          [](const ScoreMsg& m) {
            return Json{{"kind", "score"}, {"problem_id", m.problem_id}, {"solved", m.solved},
                        {"O", m.O},        {"D", m.D},                   {"S", m.S},
                        {"S_norm", m.S_norm}};
          },
          [](const ByeMsg& m) { return Json{{"kind", "bye"}, {"reason", m.reason}}; },
      },
      msg);
  return j.dump();
}

std::string encode(const FromAgent& msg) {
  const Json j = std::visit(
      Overloaded{
          [](const HelloFromAgent& m) {
            return Json{{"kind", "hello"}, {"version", m.version}, {"name", m.name}};
          },
          [](const ActionMsg& m) {
            Json forces = Json::array();
            for (const auto& [id, f] : m.forces) {
              // Trailing zero components are dropped by the receiver's dim.
              forces.push_back(Json{{"id", id}, {"f", vec_json(f, kMaxDim)}});
            }
            return Json{{"kind", "action"}, {"tick", m.tick}, {"forces", forces}};
          },
          [](const ResourcesMsg& m) { return Json{{"kind", "resources"}, {"M", m.M}, {"C", m.C}}; },
          [](const ByeMsg& m) { return Json{{"kind", "bye"}, {"reason", m.reason}}; },
      },
      msg);
  return j.dump();
}

ToAgent decode_to_agent(std::string_view line) {
  const Json j = parse_line(line);
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "hello") {
    check_schema(j, kind, kHelloToAgent);
    HelloToAgent m;
    m.version = j["version"].get<int>();
    m.agent_id = j["agent_id"].get<int>();
    m.dim = j["dim"].get<int>();
    m.members = j["members"].get<std::vector<int>>();
    m.f_max = j["f_max"].get<double>();
    m.resolution = j["resolution"].get<int>();
    m.window = j["window"].get<double>();
    return m;
  }
  if (kind == "problem") {
    check_schema(j, kind, kProblem);
    ProblemMsg m;
    m.id = j["id"].get<int>();
    m.tick = j["tick"].get<std::int64_t>();
    m.resolution = j["resolution"].get<int>();
    m.target = j["target"].get<std::vector<double>>();
    m.epsilon = j["epsilon"].get<double>();
    m.timeout = j["timeout"].get<std::int64_t>();
    if (m.target.size() != static_cast<std::size_t>(2 * m.resolution * m.resolution)) {
      violation("problem target size does not match resolution");
    }
    return m;
  }
  if (kind == "observation") {
    check_schema(j, kind, kObservation);
    ObservationMsg m;
    m.tick = j["tick"].get<std::int64_t>();
    m.resolution = j["resolution"].get<int>();
    m.grid = j["grid"].get<std::vector<double>>();
    m.integrity = j["integrity"].get<double>();
    if (m.grid.size() != static_cast<std::size_t>(2 * m.resolution * m.resolution)) {
      violation("observation grid size does not match resolution");
    }
    return m;
  }
  if (kind == "score") {
    check_schema(j, kind, kScore);
    ScoreMsg m;
    m.problem_id = j["problem_id"].get<int>();
    m.solved = j["solved"].get<bool>();
    m.O = j["O"].get<std::int64_t>();
    m.D = j["D"].get<std::int64_t>();
    m.S = j["S"].get<double>();
    m.S_norm = j["S_norm"].get<double>();
    return m;
  }
  if (kind == "bye") {
    check_schema(j, kind, kBye);
    return ByeMsg{j["reason"].get<std::string>()};
  }
  violation("unknown message kind '" + kind + "' for agent");
}

FromAgent decode_from_agent(std::string_view line, int dim) {
  const Json j = parse_line(line);
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "hello") {
    check_schema(j, kind, kHelloFromAgent);
    HelloFromAgent m;
    m.version = j["version"].get<int>();
    m.name = j["name"].get<std::string>();
    return m;
  }
  if (kind == "action") {
    check_schema(j, kind, kAction);
    ActionMsg m;
    m.tick = j["tick"].get<std::int64_t>();
    for (const auto& entry : j["forces"]) {
      const auto& f = entry["f"];
      if (f.size() < static_cast<std::size_t>(dim) || f.size() > static_cast<std::size_t>(kMaxDim)) {
        violation("force vector length does not match the world dimension");
      }
      Vec v{};
      for (std::size_t k = 0; k < f.size(); ++k) {
        v[k] = f[k].get<double>();
        if (static_cast<int>(k) >= dim && v[k] != 0.0) {
          violation("force has nonzero components beyond the world dimension");
        }
      }
      const int id = entry["id"].get<int>();
      if (m.forces.count(id)) violation("duplicate force entry for entity " + std::to_string(id));
      m.forces[id] = v;
    }
    return m;
  }
  if (kind == "resources") {
    check_schema(j, kind, kResources);
    ResourcesMsg m;
    m.M = j["M"].get<std::int64_t>();
    m.C = j["C"].get<std::int64_t>();
    if (m.M < 0 || m.C < 0) violation("resources must be nonnegative");
    return m;
  }
  if (kind == "bye") {
    check_schema(j, kind, kBye);
    return ByeMsg{j["reason"].get<std::string>()};
  }
  violation("unknown message kind '" + kind + "' from agent");
}

}  // namespace aow
