// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "aow/dynamics.hpp"
#include "aow/worldgen.hpp"

namespace aow {

using Json = nlohmann::ordered_json;

Json to_json(const Vec& v, int dim);
Vec vec_from_json(const Json& j);

Json to_json(const CausationLaw& law);
CausationLaw law_from_json(const Json& j);

Json to_json(const GenSpec& spec);
GenSpec genspec_from_json(const Json& j);

Json to_json(const StepParams& params);
StepParams step_params_from_json(const Json& j);

Json to_json(const Stream& s);
Stream stream_from_json(const Json& j);

/// Complete world state as a JSON document with fixed key order.
Json world_to_json(const World& world);
World world_from_json(const Json& j);

/// Canonical, byte-stable serialization: equal worlds give equal bytes.
std::string snapshot(const World& world);
World restore(std::string_view bytes);

/// FNV-1a of the canonical serialization, as 16 lowercase hex digits.
std::string snapshot_hash(const World& world);
std::string hash_bytes(std::string_view bytes);

/// Canonical serialization of the laws only; used for drift audits.
std::string laws_bytes(const World& world, int level);

}  // namespace aow
