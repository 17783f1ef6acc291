// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#include "aow/worldgen.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace aow {

namespace {

constexpr std::string_view kTermNames[] = {"inv2", "inv1", "const", "lin", "sq", "damp"};

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("invalid GenSpec: " + what);
}

}  // namespace

std::string_view term_name(Term t) { return kTermNames[static_cast<int>(t)]; }

Term parse_term(std::string_view name) {
  for (int i = 0; i < 6; ++i) {
    if (kTermNames[i] == name) return static_cast<Term>(i);
  }
  throw ConfigError("unknown basis term '" + std::string(name) + "'");
}

void validate(const GenSpec& spec) {
  require(spec.dim >= 2 && spec.dim <= kMaxDim, "dim must be 2 or 3");
  require(spec.n_entities >= 2, "n_entities >= 2");
  require(spec.n_levels >= 1, "n_levels >= 1");
  require(spec.polarity_ratio > 0.0 && spec.polarity_ratio < 1.0, "0 < polarity_ratio < 1");
  require(spec.arena_extent > 0.0 && std::isfinite(spec.arena_extent), "arena_extent > 0");
  require(spec.inertia_min > 0.0 && spec.inertia_max >= spec.inertia_min,
          "0 < inertia_min <= inertia_max");

  const auto& g = spec.grammar;
  require(!g.basis.empty(), "grammar basis nonempty");
  require(g.max_terms >= 1, "grammar max_terms >= 1");
  require(std::isfinite(g.coeff_min) && std::isfinite(g.coeff_max) && g.coeff_min <= g.coeff_max,
          "grammar coeff_range finite and nonempty");
  for (std::size_t i = 0; i < g.basis.size(); ++i) {
    for (std::size_t j = i + 1; j < g.basis.size(); ++j) {
      require(g.basis[i] != g.basis[j], "grammar basis terms distinct");
    }
  }

  const auto& d = spec.drift;
  for (std::size_t i = 0; i < d.regime_times.size(); ++i) {
    require(d.regime_times[i] >= 0, "regime_times nonnegative");
    if (i > 0) require(d.regime_times[i] > d.regime_times[i - 1], "regime_times strictly increasing");
  }
  require(d.smooth_rate >= 0.0 && std::isfinite(d.smooth_rate), "smooth_rate >= 0");
  for (int lvl : d.drift_levels) {
    require(lvl != 0, "drift_levels excludes level 0");
    require(lvl > 0 && lvl < spec.n_levels, "drift_levels within [1, n_levels)");
  }
  require(d.regime_times.empty() || !d.drift_levels.empty(),
          "regime_times require at least one drift level");
}

std::size_t World::level_size(int level) const {
  return level == 0 ? entities.size() : composites[level - 1].size();
}

std::size_t World::index_of(int level, int id) const {
  if (level == 0) return static_cast<std::size_t>(id);
  const auto& lv = composites[level - 1];
  return static_cast<std::size_t>(id - lv.front().id);
}

CausationLaw sample_law(const CausationGrammar& grammar, int level, Stream& rng,
                        const std::vector<int>& drift_levels) {
  if (grammar.basis.empty()) throw ConfigError("causation grammar has an empty basis");
  if (grammar.max_terms < 1) throw ConfigError("causation grammar max_terms < 1");

  CausationLaw law;
  law.level = level;
  const auto it = std::find(drift_levels.begin(), drift_levels.end(), level);
  if (level != 0 && it != drift_levels.end()) {
    law.drift_handle = static_cast<int>(it - drift_levels.begin());
  }

  std::vector<Term> pool = grammar.basis;
  const auto cap = std::min<std::size_t>(static_cast<std::size_t>(grammar.max_terms), pool.size());
  const auto n_terms = 1 + rng.below(cap);
  // Partial Fisher-Yates: the first n_terms slots become the chosen set.
  for (std::size_t i = 0; i < n_terms; ++i) {
    const auto j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  std::sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_terms));
  for (std::size_t i = 0; i < n_terms; ++i) {
    LawTerm t;
    t.term = pool[i];
    t.coeff = rng.uniform(grammar.coeff_min, grammar.coeff_max);
    t.polarity_coupled = grammar.polarity_coupling && t.term != Term::kDamping;
    law.terms.push_back(t);
  }
  return law;
}

Vec torus_mean(const std::vector<Vec>& points, const std::vector<double>& weights,
               double extent, int dim) {
  Vec acc{};
  double wsum = 0.0;
  const Vec& anchor = points.front();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec d = torus_delta(anchor, points[i], extent, dim);
    for (int k = 0; k < dim; ++k) acc[k] += weights[i] * d[k];
    wsum += weights[i];
  }
  Vec out{};
  for (int k = 0; k < dim; ++k) out[k] = wrap_coord(anchor[k] + acc[k] / wsum, extent);
  return out;
}

namespace {

void aggregate(World& world, int level, Composite& c) {
  const int dim = world.dim();
  std::vector<Vec> pos;
  std::vector<double> w;
  Vec vel{};
  double mass = 0.0;
  double charge = 0.0;
  double count = 0.0;
  for (int child : c.children) {
    Vec p, v;
    double m;
    if (level == 1) {
      const auto& e = world.entities[static_cast<std::size_t>(child)];
      p = e.position;
      v = e.velocity;
      m = e.inertia;
      charge += e.polarity;
      count += 1.0;
    } else {
      const auto& lower = world.composites[level - 2];
      const auto& cc = lower[static_cast<std::size_t>(child - lower.front().id)];
      p = cc.agg_position;
      v = cc.agg_velocity;
      m = cc.agg_inertia;
      // Weighted by leaf count so the mean is over basic entities.
      const double leaves = cc.leaf_count;
      charge += cc.agg_polarity * leaves;
      count += leaves;
    }
    pos.push_back(p);
    w.push_back(m);
    for (int k = 0; k < dim; ++k) vel[k] += m * v[k];
    mass += m;
  }
  for (int k = 0; k < dim; ++k) vel[k] /= mass;
  c.agg_position = torus_mean(pos, w, world.spec.arena_extent, dim);
  c.agg_velocity = vel;
  c.agg_inertia = mass;
  c.agg_polarity = charge / count;
  c.leaf_count = count;
}

}  // namespace

void recompute_aggregates(World& world) {
  for (int level = 1; level < world.n_levels(); ++level) {
    for (auto& c : world.composites[level - 1]) aggregate(world, level, c);
  }
}

void build_hierarchy(World& world) {
  const int levels = world.n_levels();
  const int dim = world.dim();
  const double extent = world.spec.arena_extent;
  world.composites.assign(static_cast<std::size_t>(std::max(0, levels - 1)), {});
  int next_id = static_cast<int>(world.entities.size());

  for (int level = 1; level < levels; ++level) {
    const double width = extent / std::ldexp(1.0, levels - level);
    const auto n_buckets = static_cast<long>(std::ldexp(2.0, levels - level));
    std::map<std::array<long, kMaxDim>, std::vector<int>> buckets;
    const std::size_t n = world.level_size(level - 1);
    for (std::size_t i = 0; i < n; ++i) {
      Vec p;
      int id;
      if (level == 1) {
        p = world.entities[i].position;
        id = world.entities[i].id;
      } else {
        p = world.composites[level - 2][i].agg_position;
        id = world.composites[level - 2][i].id;
      }
      std::array<long, kMaxDim> key{};
      for (int k = 0; k < dim; ++k) {
        const long b = static_cast<long>(std::floor((p[k] + extent) / width));
        key[k] = std::clamp(b, 0L, n_buckets - 1);
      }
      buckets[key].push_back(id);
    }
    auto& out = world.composites[level - 1];
    for (auto& [key, ids] : buckets) {
      Composite c;
      c.id = next_id++;
      c.level = level;
      c.children = std::move(ids);
      aggregate(world, level, c);
      out.push_back(std::move(c));
    }
  }
}

World generate_world(const GenSpec& spec) {
  validate(spec);
  World world;
  world.spec = spec;
  world.generation_stream = Stream::named(spec.seed, "generation");
  world.drift_stream = Stream::named(spec.seed, "drift");
  world.problem_stream = Stream::named(spec.seed, "problems");
  Stream& rng = world.generation_stream;

  // Differentiation.
  const int n = spec.n_entities;
  const int n_pos = static_cast<int>(std::floor(spec.polarity_ratio * n));
  world.entities.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Entity& e = world.entities[static_cast<std::size_t>(i)];
    e.id = i;
    e.polarity = i < n_pos ? +1 : -1;
    for (int k = 0; k < spec.dim; ++k) {
      e.position[k] = wrap_coord(rng.uniform(-spec.arena_extent, spec.arena_extent),
                                 spec.arena_extent);
    }
    e.inertia = spec.inertia_min == spec.inertia_max
                    ? spec.inertia_min
                    : rng.uniform(spec.inertia_min, spec.inertia_max);
  }

  // Causations, one law per level.
  for (int level = 0; level < spec.n_levels; ++level) {
    world.laws.push_back(sample_law(spec.grammar, level, rng, spec.drift.drift_levels));
  }

  build_hierarchy(world);
  world.last_stress.assign(world.entities.size(), 0.0);
  return world;
}

bool apply_drift(World& world, Stream& rng) {
  const auto& drift = world.spec.drift;
  const auto& grammar = world.spec.grammar;
  bool event = false;
  if (std::binary_search(drift.regime_times.begin(), drift.regime_times.end(), world.tick)) {
    for (int level : drift.drift_levels) {
      world.laws[static_cast<std::size_t>(level)] =
          sample_law(grammar, level, rng, drift.drift_levels);
    }
    world.drift_events.push_back(world.tick);
    event = true;
  }
  if (drift.smooth_rate > 0.0) {
    for (int level : drift.drift_levels) {
      for (auto& t : world.laws[static_cast<std::size_t>(level)].terms) {
        t.coeff = std::clamp(t.coeff + rng.uniform(-drift.smooth_rate, drift.smooth_rate),
                             grammar.coeff_min, grammar.coeff_max);
      }
    }
  }
  return event;
}

}  // namespace aow
