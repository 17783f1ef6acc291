// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aow/common.hpp"
#include "aow/random.hpp"

namespace aow {

/// Separation-dependent basis terms plus relative-velocity damping.
enum class Term : int {
  kInvSquare = 0,  // r^-2
  kInverse = 1,    // r^-1
  kConstant = 2,   // 1
  kLinear = 3,     // r
  kSquare = 4,     // r^2
  kDamping = 5,    // -(v_a - v_b)
};

std::string_view term_name(Term t);
/// Parses the short names used in config files: inv2 inv1 const lin sq damp.
Term parse_term(std::string_view name);

struct CausationGrammar {
  /// lin, sq and damp are admissible but off by default: growing terms keep
  /// entities near v_max, and damping lets attracting entities collapse into
  /// a single cell. Either leaves a mind little to control.
  std::vector<Term> basis{Term::kInvSquare, Term::kInverse, Term::kConstant};
  int max_terms = 3;
  double coeff_min = -1e-4;
  double coeff_max = 1e-4;
  bool polarity_coupling = true;
};

struct LawTerm {
  Term term = Term::kConstant;
  double coeff = 0.0;
  bool polarity_coupled = false;

  friend bool operator==(const LawTerm&, const LawTerm&) = default;
};

struct CausationLaw {
  int level = 0;
  std::vector<LawTerm> terms;
  /// Index into DriftSchedule::drift_levels, empty for fixed laws.
  std::optional<int> drift_handle;

  friend bool operator==(const CausationLaw&, const CausationLaw&) = default;
};

struct DriftSchedule {
  std::vector<std::int64_t> regime_times{500, 1000};
  double smooth_rate = 0.0;
  std::vector<int> drift_levels{1, 2};
};

struct GenSpec {
  std::uint64_t seed = 0;
  int dim = 2;
  int n_entities = 64;
  double polarity_ratio = 0.5;
  int n_levels = 3;
  CausationGrammar grammar;
  DriftSchedule drift;
  double arena_extent = 6.0;
  double inertia_min = 1.0;
  double inertia_max = 1.0;
};

/// Throws ConfigError naming the first violated invariant.
void validate(const GenSpec& spec);

struct Entity {
  int id = 0;
  int polarity = 1;
  Vec position{};
  Vec velocity{};
  double inertia = 1.0;
  int level = 0;
};

struct Composite {
  int id = 0;
  int level = 1;
  /// Ids of members one level down, ascending.
  std::vector<int> children;
  Vec agg_position{};
  Vec agg_velocity{};
  double agg_inertia = 0.0;
  /// Mean polarity of the basic entities underneath, in [-1, 1].
  double agg_polarity = 0.0;
  /// Number of basic entities underneath.
  double leaf_count = 0.0;
};

struct World {
  GenSpec spec;
  std::vector<Entity> entities;
  /// composites[l - 1] holds level-l composites; ids within a level are
  /// contiguous and ascending.
  std::vector<std::vector<Composite>> composites;
  std::vector<CausationLaw> laws;
  std::int64_t tick = 0;
  Stream generation_stream;
  Stream drift_stream;
  Stream problem_stream;
  /// Ticks at which drift events (regime resamples) happened.
  std::vector<std::int64_t> drift_events;
  /// Magnitude of the summed law force on each basic entity in the last step.
  std::vector<double> last_stress;

  int dim() const { return spec.dim; }
  int n_levels() const { return spec.n_levels; }

  /// Number of members at a hierarchy level (entities at level 0).
  std::size_t level_size(int level) const;
  /// Index of a level member inside its level array.
  std::size_t index_of(int level, int id) const;
};

CausationLaw sample_law(const CausationGrammar& grammar, int level, Stream& rng,
                        const std::vector<int>& drift_levels = {});

World generate_world(const GenSpec& spec);

/// Rebuilds the composite levels from current positions.
void build_hierarchy(World& world);

/// Recomputes every composite aggregate from its children, bottom-up.
void recompute_aggregates(World& world);

/// Inertia-weighted torus mean of a set of points, anchored at the first.
Vec torus_mean(const std::vector<Vec>& points, const std::vector<double>& weights,
               double extent, int dim);

/// Returns true when a drift event (regime resample) happened.
bool apply_drift(World& world, Stream& rng);
inline bool apply_drift(World& world) { return apply_drift(world, world.drift_stream); }

}  // namespace aow
