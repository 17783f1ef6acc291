// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>

#include "aow/worldgen.hpp"

namespace aow {

struct StepParams {
  double h = 1.0;
  double a_max = 0.05;
  double v_max = 0.25;
  double eps_r = 0.5;
};

void validate(const StepParams& params);

/// External forces keyed by basic-entity id. Ordered so iteration is stable.
using ForceMap = std::map<int, Vec>;

/// What a causation law needs to know about one participant.
struct LawParticipant {
  int id = 0;
  Vec position{};
  Vec velocity{};
  double inertia = 1.0;
  double polarity = 1.0;
};

/// Force exerted on `a` by `b` under `law`, before division by inertia.
/// Magnitude is limited to a_max * min(inertia_a, inertia_b), so the pair
/// stays equal-and-opposite and neither side exceeds a_max.
Vec pair_force(const CausationLaw& law, const LawParticipant& a, const LawParticipant& b,
               const StepParams& params, double extent, int dim);

/// Acceleration on `a` caused by `b`.
Vec eval_law(const CausationLaw& law, const LawParticipant& a, const LawParticipant& b,
             const StepParams& params, double extent, int dim);

struct StepReport {
  bool drift_event = false;
  /// Largest applied acceleration magnitude over all basic entities.
  double max_acceleration = 0.0;
};

/*!
 * Advance the world by one tick.
 *
 * Order: drift, per-level pairwise law forces (composite accelerations are
 * inherited unchanged by every descendant, i.e. force shared by inertia),
 * external forces, semi-implicit Euler with clamps, aggregate refresh, tick.
 * Throws ContractViolation, before touching the world, if `external` names an
 * unknown entity.
 */
StepReport step(World& world, const ForceMap& external, const StepParams& params);

/// Sum of inertia * velocity over basic entities.
Vec total_momentum(const World& world);

}  // namespace aow
