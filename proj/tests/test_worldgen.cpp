// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <set>

#include "aow/serialize.hpp"
#include "aow/worldgen.hpp"

namespace aow {
namespace {

GenSpec small_spec(std::uint64_t seed) {
  GenSpec s;
  s.seed = seed;
  s.n_entities = 24;
  return s;
}

TEST(Worldgen, SameSpecGivesIdenticalWorld) {
  EXPECT_EQ(snapshot(generate_world(small_spec(3))), snapshot(generate_world(small_spec(3))));
}

TEST(Worldgen, SeedsGiveIndependentLaws) {
  int differ = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const World a = generate_world(small_spec(2 * i + 7));
    const World b = generate_world(small_spec(2 * i + 8));
    differ += a.laws != b.laws ? 1 : 0;
  }
  EXPECT_GE(differ, 99);
}

TEST(Worldgen, PolarityRatioAndPlacement) {
  GenSpec s = small_spec(1);
  s.polarity_ratio = 0.25;
  s.n_entities = 40;
  const World w = generate_world(s);
  int pos = 0;
  for (const auto& e : w.entities) {
    pos += e.polarity > 0 ? 1 : 0;
    for (int k = 0; k < s.dim; ++k) {
      EXPECT_GE(e.position[k], -s.arena_extent);
      EXPECT_LT(e.position[k], s.arena_extent);
    }
  }
  EXPECT_EQ(pos, 10);
}

TEST(Worldgen, HierarchyPartitionsEachLevel) {
  GenSpec s = small_spec(5);
  s.n_levels = 4;
  const World w = generate_world(s);
  ASSERT_EQ(w.composites.size(), 3u);
  for (int level = 1; level < 4; ++level) {
    std::multiset<int> children;
    double leaves = 0.0;
    for (const auto& c : w.composites[static_cast<std::size_t>(level - 1)]) {
      EXPECT_FALSE(c.children.empty());
      children.insert(c.children.begin(), c.children.end());
      leaves += c.leaf_count;
      EXPECT_GE(c.agg_polarity, -1.0);
      EXPECT_LE(c.agg_polarity, 1.0);
    }
    EXPECT_EQ(children.size(), w.level_size(level - 1));
    EXPECT_EQ(std::set<int>(children.begin(), children.end()).size(), children.size());
    EXPECT_DOUBLE_EQ(leaves, s.n_entities);
  }
}

TEST(Worldgen, ValidationRejectsBadSpecs) {
  GenSpec s = small_spec(1);
  s.dim = 4;
  EXPECT_THROW(validate(s), ConfigError);
  s = small_spec(1);
  s.n_levels = 0;
  EXPECT_THROW(validate(s), ConfigError);
  s = small_spec(1);
  s.drift.drift_levels = {0};
  EXPECT_THROW(validate(s), ConfigError);
  s = small_spec(1);
  s.grammar.coeff_min = 1.0;
  s.grammar.coeff_max = -1.0;
  EXPECT_THROW(validate(s), ConfigError);
  s = small_spec(1);
  s.grammar.max_terms = 0;
  EXPECT_THROW(validate(s), ConfigError);
}

TEST(SampleLaw, SingletonBasisGivesOneTerm) {
  CausationGrammar g;
  g.basis = {Term::kInvSquare};
  g.max_terms = 1;
  Stream rng(1, 0);
  const CausationLaw law = sample_law(g, 0, rng);
  ASSERT_EQ(law.terms.size(), 1u);
  EXPECT_EQ(law.terms[0].term, Term::kInvSquare);
  EXPECT_FALSE(law.drift_handle.has_value());
}

TEST(SampleLaw, EmptyBasisIsAConfigError) {
  CausationGrammar g;
  g.basis.clear();
  Stream rng(1, 0);
  EXPECT_THROW(sample_law(g, 0, rng), ConfigError);
}

TEST(SampleLaw, CoefficientMeanIsCentred) {
  CausationGrammar g;
  g.basis = {Term::kConstant};
  g.max_terms = 1;
  g.coeff_min = -1.0;
  g.coeff_max = 1.0;
  Stream rng(99, 0);
  double sum = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto law = sample_law(g, 0, rng);
    ASSERT_GE(law.terms[0].coeff, -1.0);
    ASSERT_LE(law.terms[0].coeff, 1.0);
    sum += law.terms[0].coeff;
  }
  EXPECT_NEAR(sum / 1000.0, 0.0, 0.1);
}

TEST(SampleLaw, TermsAreDistinctAndDampingIsNeverCoupled) {
  CausationGrammar g;
  g.basis = {Term::kInvSquare, Term::kInverse, Term::kConstant, Term::kLinear, Term::kSquare,
             Term::kDamping};
  g.max_terms = 6;
  Stream rng(4, 0);
  for (int i = 0; i < 200; ++i) {
    const auto law = sample_law(g, 1, rng, {1});
    EXPECT_GE(law.terms.size(), 1u);
    std::set<Term> seen;
    for (const auto& t : law.terms) {
      EXPECT_TRUE(seen.insert(t.term).second);
      if (t.term == Term::kDamping) {
        EXPECT_FALSE(t.polarity_coupled);
      }
    }
    EXPECT_TRUE(law.drift_handle.has_value());
  }
}

TEST(Drift, RegimeTimeResamplesDriftingLevels) {
  int differ = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GenSpec s = small_spec(seed);
    s.drift.regime_times = {0};
    s.drift.drift_levels = {1, 2};
    World w = generate_world(s);
    const std::string level0 = laws_bytes(w, 0);
    const std::string before = laws_bytes(w, 1) + laws_bytes(w, 2);
    EXPECT_TRUE(apply_drift(w));
    differ += before != laws_bytes(w, 1) + laws_bytes(w, 2) ? 1 : 0;
    EXPECT_EQ(level0, laws_bytes(w, 0));
    EXPECT_EQ(w.drift_events, std::vector<std::int64_t>{0});
  }
  EXPECT_GE(differ, 99);
}

TEST(Drift, SmoothWalkStaysInRange) {
  GenSpec s = small_spec(2);
  s.drift.regime_times = {};
  s.drift.smooth_rate = 5e-5;
  s.drift.drift_levels = {2};
  World w = generate_world(s);
  const std::string level0 = laws_bytes(w, 0);
  for (int t = 0; t < 500; ++t) {
    EXPECT_FALSE(apply_drift(w));
    for (const auto& term : w.laws[2].terms) {
      ASSERT_GE(term.coeff, s.grammar.coeff_min);
      ASSERT_LE(term.coeff, s.grammar.coeff_max);
    }
  }
  EXPECT_EQ(level0, laws_bytes(w, 0));
}

TEST(TermNames, RoundTrip) {
  for (Term t : {Term::kInvSquare, Term::kInverse, Term::kConstant, Term::kLinear, Term::kSquare,
                 Term::kDamping}) {
    EXPECT_EQ(parse_term(term_name(t)), t);
  }
  EXPECT_THROW(parse_term("cubic"), ConfigError);
}

}  // namespace
}  // namespace aow
