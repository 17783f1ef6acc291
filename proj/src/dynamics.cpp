// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#include "aow/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace aow {

void validate(const StepParams& params) {
  if (!(params.h > 0.0)) throw ConfigError("invalid StepParams: h > 0");
  if (!(params.a_max > 0.0)) throw ConfigError("invalid StepParams: a_max > 0");
  if (!(params.v_max > 0.0)) throw ConfigError("invalid StepParams: v_max > 0");
  if (!(params.eps_r > 0.0)) throw ConfigError("invalid StepParams: eps_r > 0");
}

namespace {

double radial_basis(Term t, double r) {
  switch (t) {
    case Term::kInvSquare: return 1.0 / (r * r);
    case Term::kInverse: return 1.0 / r;
    case Term::kConstant: return 1.0;
    case Term::kLinear: return r;
    case Term::kSquare: return r * r;
    case Term::kDamping: return 0.0;
  }
  return 0.0;
}

}  // namespace

Vec pair_force(const CausationLaw& law, const LawParticipant& a, const LawParticipant& b,
               const StepParams& params, double extent, int dim) {
  // Separation vector points from b to a; positive magnitude repels.
  const Vec d = torus_delta(b.position, a.position, extent, dim);
  const double sep = norm(d, dim);
  Vec u{};
  if (sep > 0.0) {
    for (int k = 0; k < dim; ++k) u[k] = d[k] / sep;
  } else {
    // Coincident: fixed axis, sign by id so the pair stays antisymmetric.
    u[0] = a.id < b.id ? -1.0 : 1.0;
  }
  const double r = std::max(sep, params.eps_r);
  const double pp = a.polarity * b.polarity;

  double radial = 0.0;
  double damping = 0.0;
  for (const auto& t : law.terms) {
    if (t.term == Term::kDamping) {
      damping += t.coeff;
    } else {
      radial += t.coeff * radial_basis(t.term, r) * (t.polarity_coupled ? pp : 1.0);
    }
  }
  Vec f{};
  for (int k = 0; k < dim; ++k) {
    f[k] = radial * u[k] - damping * (a.velocity[k] - b.velocity[k]);
  }
  return clamp_magnitude(f, params.a_max * std::min(a.inertia, b.inertia), dim);
}

Vec eval_law(const CausationLaw& law, const LawParticipant& a, const LawParticipant& b,
             const StepParams& params, double extent, int dim) {
  Vec f = pair_force(law, a, b, params, extent, dim);
  for (int k = 0; k < dim; ++k) f[k] /= a.inertia;
  return f;
}

namespace {

LawParticipant participant(const Entity& e) {
  return {e.id, e.position, e.velocity, e.inertia, static_cast<double>(e.polarity)};
}

LawParticipant participant(const Composite& c) {
  return {c.id, c.agg_position, c.agg_velocity, c.agg_inertia, c.agg_polarity};
}

// Accumulates pairwise forces among `members` into `force` (same indexing).
// Pairs are visited in fixed (i < j) order for reproducible summation.
void accumulate_pairs(const CausationLaw& law, const std::vector<LawParticipant>& members,
                      const StepParams& params, double extent, int dim, std::vector<Vec>& force) {
  const std::size_t n = members.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec f = pair_force(law, members[i], members[j], params, extent, dim);
      for (int k = 0; k < dim; ++k) {
        force[i][k] += f[k];
        force[j][k] -= f[k];
      }
    }
  }
}

}  // namespace

StepReport step(World& world, const ForceMap& external, const StepParams& params) {
  const std::size_t n = world.entities.size();
  for (const auto& [id, f] : external) {
    if (id < 0 || static_cast<std::size_t>(id) >= n) {
      throw ContractViolation("external force references unknown entity id " + std::to_string(id));
    }
  }

  StepReport report;
  report.drift_event = apply_drift(world);

  const int dim = world.dim();
  const double extent = world.spec.arena_extent;
  const int levels = world.n_levels();

  // Composite accelerations, top level first, pushed down to children.
  std::vector<Vec> inherited;
  for (int level = levels - 1; level >= 1; --level) {
    const auto& comps = world.composites[static_cast<std::size_t>(level - 1)];
    std::vector<LawParticipant> members;
    members.reserve(comps.size());
    for (const auto& c : comps) members.push_back(participant(c));
    std::vector<Vec> force(comps.size(), Vec{});
    accumulate_pairs(world.laws[static_cast<std::size_t>(level)], members, params, extent, dim,
                     force);
    std::vector<Vec> acc(comps.size(), Vec{});
    for (std::size_t i = 0; i < comps.size(); ++i) {
      for (int k = 0; k < dim; ++k) acc[i][k] = force[i][k] / comps[i].agg_inertia;
      if (!inherited.empty()) {
        for (int k = 0; k < dim; ++k) acc[i][k] += inherited[i][k];
      }
    }
    // Expand to the level below.
    const std::size_t below = world.level_size(level - 1);
    std::vector<Vec> next(below, Vec{});
    for (std::size_t i = 0; i < comps.size(); ++i) {
      for (int child : comps[i].children) {
        next[world.index_of(level - 1, child)] = acc[i];
      }
    }
    inherited = std::move(next);
  }

  std::vector<LawParticipant> basics;
  basics.reserve(n);
  for (const auto& e : world.entities) basics.push_back(participant(e));
  std::vector<Vec> force(n, Vec{});
  accumulate_pairs(world.laws[0], basics, params, extent, dim, force);

  world.last_stress.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    Entity& e = world.entities[i];
    Vec a{};
    for (int k = 0; k < dim; ++k) {
      a[k] = force[i][k] / e.inertia;
      if (!inherited.empty()) a[k] += inherited[i][k];
    }
    Vec law_force{};
    for (int k = 0; k < dim; ++k) law_force[k] = a[k] * e.inertia;
    world.last_stress[i] = norm(law_force, dim);

    if (const auto it = external.find(e.id); it != external.end()) {
      for (int k = 0; k < dim; ++k) a[k] += it->second[k] / e.inertia;
    }
    a = clamp_magnitude(a, params.a_max, dim);
    report.max_acceleration = std::max(report.max_acceleration, norm(a, dim));

    // Semi-implicit Euler: velocity first, then position with the new velocity.
    for (int k = 0; k < dim; ++k) e.velocity[k] += a[k] * params.h;
    e.velocity = clamp_magnitude(e.velocity, params.v_max, dim);
    for (int k = 0; k < dim; ++k) {
      e.position[k] = wrap_coord(e.position[k] + e.velocity[k] * params.h, extent);
    }
  }

  recompute_aggregates(world);
  ++world.tick;
  return report;
}

Vec total_momentum(const World& world) {
  Vec p{};
  for (const auto& e : world.entities) {
    for (int k = 0; k < world.dim(); ++k) p[k] += e.inertia * e.velocity[k];
  }
  return p;
}

}  // namespace aow
