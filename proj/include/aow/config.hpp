// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "aow/harness.hpp"

namespace aow {

/// Environment variable naming a config file loaded before command-line overrides.
inline constexpr const char* kConfigEnv = "AOW_CONFIG";

/// Sets one `key = value` setting. Throws ConfigError for unknown keys or
/// unparsable values.
void apply_setting(EpisodeConfig& cfg, std::string_view key, std::string_view value);

/// Parses `key = value` lines; `#` starts a comment. Errors name `source` and the line.
EpisodeConfig parse_config(std::string_view text, const std::string& source = "<config>",
                           EpisodeConfig base = {});
EpisodeConfig load_config(const std::string& path, EpisodeConfig base = {});

/// Every setting, one per line, in a form parse_config reads back exactly.
std::string config_to_text(const EpisodeConfig& cfg);

}  // namespace aow
