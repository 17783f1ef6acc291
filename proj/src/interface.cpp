// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#include "aow/interface.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace aow {

void validate(const BodyConfig& cfg) {
  if (cfg.size < 1) throw ConfigError("invalid body: size >= 1");
  if (!(cfg.window_halfwidth > 0.0)) throw ConfigError("invalid body: window_halfwidth > 0");
  if (cfg.resolution < 1) throw ConfigError("invalid body: resolution >= 1");
  if (!(cfg.f_max > 0.0)) throw ConfigError("invalid body: f_max > 0");
  if (!(cfg.d_hit > 0.0 && cfg.d_hit <= 1.0)) throw ConfigError("invalid body: 0 < d_hit <= 1");
  if (!(cfg.stress_threshold >= 0.0)) throw ConfigError("invalid body: stress_threshold >= 0");
}

Body import_body(const World& world, const BodyConfig& cfg, int anchor_id,
                 const std::vector<int>& taken) {
  const int dim = world.dim();
  const double extent = world.spec.arena_extent;
  const auto is_taken = [&](int id) {
    return std::find(taken.begin(), taken.end(), id) != taken.end();
  };
  if (anchor_id < 0 || static_cast<std::size_t>(anchor_id) >= world.entities.size() ||
      is_taken(anchor_id)) {
    throw ContractViolation("body anchor " + std::to_string(anchor_id) + " is not available");
  }
  const Vec anchor = world.entities[static_cast<std::size_t>(anchor_id)].position;
  std::vector<std::pair<double, int>> candidates;
  for (const auto& e : world.entities) {
    if (e.id == anchor_id || is_taken(e.id)) continue;
    candidates.emplace_back(norm(torus_delta(anchor, e.position, extent, dim), dim), e.id);
  }
  if (candidates.size() + 1 < static_cast<std::size_t>(cfg.size)) {
    throw ConfigError("not enough free entities for a body of size " + std::to_string(cfg.size));
  }
  std::sort(candidates.begin(), candidates.end());
  Body body;
  body.member_ids.push_back(anchor_id);
  for (int i = 0; i + 1 < cfg.size; ++i) body.member_ids.push_back(candidates[i].second);
  std::sort(body.member_ids.begin(), body.member_ids.end());
  body.mode = cfg.mode;
  body.window_halfwidth = cfg.window_halfwidth;
  body.integrity = 1.0;
  return body;
}

std::vector<int> choose_anchors(const World& world, int n_agents) {
  if (n_agents < 1 || static_cast<std::size_t>(n_agents) > world.entities.size()) {
    throw ConfigError("cannot place " + std::to_string(n_agents) + " bodies");
  }
  std::vector<int> ids(world.entities.size());
  std::iota(ids.begin(), ids.end(), 0);
  Stream rng = Stream::named(world.spec.seed, "bodies");
  for (std::size_t i = 0; i < static_cast<std::size_t>(n_agents); ++i) {
    const auto j = i + rng.below(ids.size() - i);
    std::swap(ids[i], ids[j]);
  }
  ids.resize(static_cast<std::size_t>(n_agents));
  return ids;
}

Vec body_centroid(const World& world, const Body& body) {
  std::vector<Vec> pts;
  std::vector<double> w;
  for (int id : body.member_ids) {
    const auto& e = world.entities[static_cast<std::size_t>(id)];
    pts.push_back(e.position);
    w.push_back(e.inertia);
  }
  return torus_mean(pts, w, world.spec.arena_extent, world.dim());
}

namespace {

// Cell covering offset u in [0, 2W]; points on an interior boundary go to the
// lower-index cell.
int cell_index(double u, double cell_width, int resolution) {
  const int idx = static_cast<int>(std::ceil(u / cell_width)) - 1;
  return std::clamp(idx, 0, resolution - 1);
}

}  // namespace

Observation project(const World& world, const Body& body, int resolution) {
  if (resolution < 1) throw ContractViolation("sensor resolution must be >= 1");
  const int dim = world.dim();
  const double extent = world.spec.arena_extent;
  const double half = body.window_halfwidth;
  const double cell = 2.0 * half / resolution;

  Observation obs;
  obs.tick = world.tick;
  obs.resolution = resolution;
  obs.window_center = body_centroid(world, body);
  obs.grid.assign(Observation::cells(resolution), 0.0);

  for (const auto& e : world.entities) {
    const Vec d = torus_delta(obs.window_center, e.position, extent, dim);
    bool inside = true;
    for (int k = 0; k < dim; ++k) inside = inside && std::abs(d[k]) <= half;
    if (!inside) continue;
    const int ix = cell_index(d[0] + half, cell, resolution);
    const int iy = cell_index(d[1] + half, cell, resolution);
    const int channel = e.polarity > 0 ? 0 : 1;
    obs.grid[static_cast<std::size_t>((channel * resolution + ix) * resolution + iy)] += 1.0;
  }
  return obs;
}

Observation sense(const World& world, const Body& body, int resolution,
                  std::int64_t& observation_count) {
  Observation obs = project(world, body, resolution);
  ++observation_count;
  return obs;
}

ForceMap act(const World& world, const Body& body, const Action& action) {
  ForceMap out;
  for (const auto& [id, f] : action.forces) {
    if (std::find(body.member_ids.begin(), body.member_ids.end(), id) == body.member_ids.end()) {
      throw ContractViolation("action targets entity " + std::to_string(id) +
                              " which is not a body member");
    }
    Vec clamped = f;
    for (int k = world.dim(); k < kMaxDim; ++k) clamped[k] = 0.0;
    for (int k = 0; k < world.dim(); ++k) {
      if (!std::isfinite(clamped[k])) throw ContractViolation("action force is not finite");
    }
    out[id] = clamp_magnitude(clamped, action.f_max, world.dim());
  }
  return out;
}

void update_integrity(const World& world, Body& body, const BodyConfig& cfg) {
  if (body.mode != BodyMode::kDestructible) {
    throw ContractViolation("update_integrity called on a fixed body");
  }
  if (body.destroyed) return;
  double stress = 0.0;
  for (int id : body.member_ids) stress += world.last_stress[static_cast<std::size_t>(id)];
  stress /= static_cast<double>(body.member_ids.size());
  if (stress > cfg.stress_threshold) {
    body.integrity = std::max(0.0, body.integrity - cfg.d_hit);
    // Guard against 1 - k*d_hit landing a hair above zero.
    if (body.integrity < 1e-12) body.integrity = 0.0;
  }
  if (body.integrity <= 0.0) body.destroyed = true;
}

}  // namespace aow
