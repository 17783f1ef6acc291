// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "aow/dynamics.hpp"
#include "aow/random.hpp"
#include "aow/worldgen.hpp"

namespace aow {

enum class BodyMode { kFixed, kDestructible };

/// How a mind is embodied and what its sensor and motor can do.
struct BodyConfig {
  int size = 1;
  BodyMode mode = BodyMode::kFixed;
  double window_halfwidth = 2.5;
  int resolution = 10;
  double f_max = 0.04;
  /// Destructible mode: integrity lost per over-stressed tick.
  double d_hit = 0.1;
  /// Destructible mode: mean law-force magnitude on members that counts as a hit.
  double stress_threshold = 0.04;
};

void validate(const BodyConfig& cfg);

struct Body {
  std::vector<int> member_ids;
  BodyMode mode = BodyMode::kFixed;
  double integrity = 1.0;
  double window_halfwidth = 3.0;
  bool destroyed = false;
};

/*!
 * Egocentric density grid.
 *
 * Layout is channel-major: grid[(channel * R + ix) * R + iy], channel 0 for
 * positive entities and 1 for negative ones. Axis 0 of the world maps to ix,
 * axis 1 to iy.
 */
struct Observation {
  std::int64_t tick = 0;
  int resolution = 0;
  std::vector<double> grid;
  Vec window_center{};

  double at(int channel, int ix, int iy) const {
    return grid[static_cast<std::size_t>((channel * resolution + ix) * resolution + iy)];
  }
  static std::size_t cells(int resolution) {
    return static_cast<std::size_t>(2 * resolution * resolution);
  }
};

struct Action {
  ForceMap forces;
  double f_max = 0.0;
};

/// Picks `size` basic entities for a new body: the anchor plus its nearest
/// neighbours (torus distance, ties by id), skipping ids in `taken`.
Body import_body(const World& world, const BodyConfig& cfg, int anchor_id,
                 const std::vector<int>& taken = {});

/// Chooses anchor ids for `n_agents` bodies from a dedicated stream.
std::vector<int> choose_anchors(const World& world, int n_agents);

/// Inertia-weighted torus centroid of the body members.
Vec body_centroid(const World& world, const Body& body);

/// Sensor projection without accounting. Used for solve checks.
Observation project(const World& world, const Body& body, int resolution);

/// Sensor projection that also increments `observation_count` by one.
Observation sense(const World& world, const Body& body, int resolution,
                  std::int64_t& observation_count);

/// Validates and clamps an action into the external force map for a step.
ForceMap act(const World& world, const Body& body, const Action& action);

/// Destructible bodies lose d_hit integrity on each over-stressed tick; at
/// zero the body is flagged destroyed.
void update_integrity(const World& world, Body& body, const BodyConfig& cfg);

}  // namespace aow
