// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aow/common.hpp"
#include "aow/metrics.hpp"
#include "aow/random.hpp"

namespace aow {
namespace {

ScoreStream from_rate(std::int64_t len, double (*rate)(std::int64_t), std::int64_t step = 1) {
  ScoreStream s;
  s.episode_len = len;
  double c = 0.0;
  for (std::int64_t t = 0; t <= len; t += step) {
    s.samples.push_back({t, c});
    for (std::int64_t u = t; u < t + step; ++u) c += rate(u);
  }
  return s;
}

TEST(RateCurve, LinearStreamHasConstantRate) {
  const auto s = from_rate(200, [](std::int64_t) { return 0.5; });
  for (const auto& p : rate_curve(s, 10)) EXPECT_NEAR(p.rate, 0.5, 1e-12);
}

TEST(RateCurve, ConstantStreamHasZeroRate) {
  const auto s = from_rate(50, [](std::int64_t) { return 0.0; });
  for (const auto& p : rate_curve(s, 3)) EXPECT_EQ(p.rate, 0.0);
}

TEST(RateCurve, PiecewiseSlopesRecoveredAwayFromBreak) {
  const auto s = from_rate(1000, [](std::int64_t t) { return t < 500 ? 0.1 : 0.9; });
  for (const auto& p : rate_curve(s, 25)) {
    if (p.tick < 500 - 26) {
      EXPECT_NEAR(p.rate, 0.1, 1e-9);
    }
    if (p.tick > 500 + 26) {
      EXPECT_NEAR(p.rate, 0.9, 1e-9);
    }
  }
}

TEST(RateCurve, NeedsTwoSamplesAndMonotoneInput) {
  ScoreStream s;
  s.samples = {{0, 0.0}};
  EXPECT_THROW(rate_curve(s, 5), InsufficientData);
  s.samples = {{0, 1.0}, {1, 0.5}};
  EXPECT_THROW(rate_curve(s, 5), ContractViolation);
  s.samples = {{0, 0.0}, {0, 0.5}};
  EXPECT_THROW(rate_curve(s, 5), ContractViolation);
}

TEST(RateCurve, NonDecreasingStreamNeverGivesNegativeRate) {
  Stream rng(8, 0);
  ScoreStream s;
  double c = 0.0;
  for (std::int64_t t = 0; t < 500; ++t) {
    if (rng.uniform() < 0.1) c += rng.uniform();
    s.samples.push_back({t, c});
  }
  for (const auto& p : rate_curve(s, 7)) EXPECT_GE(p.rate, 0.0);
}

TEST(AlphaBeta, AllZeroGivesZero) {
  RateCurve c;
  for (std::int64_t t = 0; t <= 100; ++t) c.push_back({t, 0.0});
  EXPECT_EQ(extract_alpha_beta(c, 0, 100), std::make_pair(0.0, 0.0));
}

TEST(AlphaBeta, InstantPlateauIsMaximal) {
  RateCurve c;
  for (std::int64_t t = 0; t <= 100; ++t) c.push_back({t, 0.3});
  const auto [alpha, beta] = extract_alpha_beta(c, 0, 100);
  EXPECT_DOUBLE_EQ(beta, 0.3);
  EXPECT_DOUBLE_EQ(alpha, 100.0);
}

TEST(AlphaBeta, RiseTimeOracle) {
  RateCurve c;
  for (std::int64_t t = 0; t <= 100; ++t) c.push_back({t, t < 25 ? 0.0 : 1.0});
  const auto [alpha, beta] = extract_alpha_beta(c, 0, 100, 0.9);
  EXPECT_DOUBLE_EQ(beta, 1.0);
  EXPECT_DOUBLE_EQ(alpha, 4.0);
}

TEST(AlphaBeta, TimeScalingKeepsAlphaAndScalesBeta) {
  auto rate = [](std::int64_t t) { return 1.0 - std::exp(-static_cast<double>(t) / 40.0); };
  ScoreStream a;
  ScoreStream b;
  double c = 0.0;
  for (std::int64_t t = 0; t <= 400; ++t) {
    a.samples.push_back({t, c});
    b.samples.push_back({3 * t, c});
    c += rate(t);
  }
  const auto [alpha_a, beta_a] = extract_alpha_beta(rate_curve(a, 10), 0, 400);
  const auto [alpha_b, beta_b] = extract_alpha_beta(rate_curve(b, 30), 0, 1200);
  EXPECT_NEAR(alpha_a, alpha_b, 1e-9);
  EXPECT_NEAR(beta_a, 3.0 * beta_b, 1e-9);
}

TEST(Gamma, RatioCases) {
  RateCurve flat;
  RateCurve collapse;
  RateCurve dead;
  for (std::int64_t t = 0; t < 400; ++t) {
    flat.push_back({t, 0.5});
    collapse.push_back({t, t < 200 ? 0.5 : 0.0});
    dead.push_back({t, 0.0});
  }
  EXPECT_DOUBLE_EQ(extract_gamma(flat, 200, 100, 100), 1.0);
  EXPECT_DOUBLE_EQ(extract_gamma(collapse, 200, 100, 100), 0.0);
  EXPECT_DOUBLE_EQ(extract_gamma(dead, 200, 100, 100), 0.0);
}

TEST(Gamma, ScaleInvariantAndBounded) {
  Stream rng(2, 0);
  for (int trial = 0; trial < 50; ++trial) {
    RateCurve c;
    RateCurve scaled;
    for (std::int64_t t = 0; t < 300; ++t) {
      const double r = rng.uniform();
      c.push_back({t, r});
      scaled.push_back({t, 7.0 * r});
    }
    const double g = extract_gamma(c, 150, 50, 50);
    EXPECT_GE(g, 0.0);
    EXPECT_LE(g, 1.0);
    EXPECT_NEAR(g, extract_gamma(scaled, 150, 50, 50), 1e-12);
  }
}

TEST(Merge, GeometricMeanCases) {
  EXPECT_DOUBLE_EQ(merge(1, 1, 1), 1.0);
  EXPECT_NEAR(merge(0.5, 0.5, 0.5), 0.5, 1e-15);
  EXPECT_EQ(merge(0.0, 2.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(merge(0.0, 4.0, 1.0, {0.0, 0.5, 0.5}), 2.0);
  EXPECT_THROW(merge(1, 1, 1, {0.5, 0.5, 0.5}), ContractViolation);
  EXPECT_THROW(merge(1, 1, 1, {-0.5, 1.0, 0.5}), ContractViolation);
}

TEST(Merge, MonotoneInEachIndicator) {
  Stream rng(4, 0);
  for (int i = 0; i < 200; ++i) {
    const double a = rng.uniform(0.1, 5);
    const double b = rng.uniform(0.1, 5);
    const double g = rng.uniform(0.1, 1);
    const double d = rng.uniform(0.0, 1);
    EXPECT_LE(merge(a, b, g), merge(a + d, b, g));
    EXPECT_LE(merge(a, b, g), merge(a, b + d, g));
    EXPECT_LE(merge(a, b, g), merge(a, b, std::min(1.0, g + d)));
  }
}

AdaptationReport rep(int id, double I, double beta, double alpha) {
  AdaptationReport r;
  r.agent_id = id;
  r.I = I;
  r.beta = beta;
  r.alpha = alpha;
  return r;
}

TEST(Rank, OrderAndTieBreaks) {
  const auto ranked = relative_rank({rep(0, 0.3, 1, 1), rep(1, 0.8, 1, 1)});
  EXPECT_EQ(ranked[0].agent_id, 1);
  const auto tied = relative_rank({rep(3, 0.5, 1, 1), rep(2, 0.5, 1, 1)});
  EXPECT_EQ(tied[0].agent_id, 2);
  const auto by_beta = relative_rank({rep(0, 0.5, 1, 9), rep(1, 0.5, 2, 1)});
  EXPECT_EQ(by_beta[0].agent_id, 1);
}

TEST(Rank, PermutationInvariant) {
  Stream rng(6, 0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<AdaptationReport> reports;
    for (int i = 0; i < 6; ++i) {
      reports.push_back(rep(i, static_cast<double>(rng.below(3)), static_cast<double>(rng.below(2)),
                            static_cast<double>(rng.below(2))));
    }
    const auto base = relative_rank(reports);
    for (int k = 0; k < 5; ++k) {
      for (std::size_t i = reports.size() - 1; i > 0; --i) std::swap(reports[i], reports[rng.below(i + 1)]);
      const auto again = relative_rank(reports);
      for (std::size_t i = 0; i < base.size(); ++i) ASSERT_EQ(base[i].agent_id, again[i].agent_id);
    }
  }
}

TEST(Rank, SharedBetaScaleKeepsLeader) {
  Stream rng(10, 0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<AdaptationReport> reports;
    for (int i = 0; i < 4; ++i) {
      AdaptationReport r = rep(i, 0, rng.uniform(0.01, 1), rng.uniform(1, 10));
      r.gamma = rng.uniform(0.1, 1);
      r.I = merge(r.alpha, r.beta, r.gamma);
      reports.push_back(r);
    }
    auto scaled = reports;
    for (auto& r : scaled) {
      r.beta *= 13.0;
      r.I = merge(r.alpha, r.beta, r.gamma);
    }
    EXPECT_EQ(relative_rank(reports)[0].agent_id, relative_rank(scaled)[0].agent_id);
  }
}

TEST(Report, SegmentsAndUnmeasuredGamma) {
  auto s = from_rate(1000, [](std::int64_t) { return 0.2; });
  MetricParams p;
  auto r = adaptation_report(s, p);
  EXPECT_EQ(r.segments, 1);
  EXPECT_FALSE(r.gamma_measured);
  EXPECT_DOUBLE_EQ(r.gamma, 1.0);
  EXPECT_NEAR(r.beta, 0.2, 1e-12);
  EXPECT_TRUE(r.lower_bound);

  s.drift_marks = {400, 700};
  r = adaptation_report(s, p);
  EXPECT_EQ(r.segments, 3);
  EXPECT_TRUE(r.gamma_measured);
  EXPECT_NEAR(r.gamma, 1.0, 1e-12);
  EXPECT_NEAR(r.I, merge(r.alpha, r.beta, r.gamma), 1e-15);
}

TEST(Report, AggregateIsFieldMean) {
  AdaptationReport a = rep(0, 1.0, 0.2, 4.0);
  AdaptationReport b = rep(0, 3.0, 0.4, 2.0);
  const auto m = aggregate_reports({a, b});
  EXPECT_DOUBLE_EQ(m.I, 2.0);
  EXPECT_DOUBLE_EQ(m.beta, 0.3);
  EXPECT_DOUBLE_EQ(m.alpha, 3.0);
  EXPECT_THROW(aggregate_reports({}), InsufficientData);
}

TEST(Golden, ReferenceOrderings) {
  const auto adapt = golden_adaptation_streams();
  ASSERT_EQ(adapt.size(), 3u);
  std::vector<std::pair<double, double>> ab;
  for (const auto& s : adapt) ab.push_back(extract_alpha_beta(rate_curve(s, 25), 0, 1000));
  EXPECT_GT(ab[0].first, ab[2].first);
  EXPECT_GT(ab[2].first, ab[1].first);
  EXPECT_GT(ab[0].second, ab[1].second);
  EXPECT_GT(ab[1].second, ab[2].second);
  const auto gen = golden_generalization_streams();
  ASSERT_EQ(gen.size(), 2u);
  const double g1 = extract_gamma(rate_curve(gen[0], 25), 500, 100, 100);
  const double g2 = extract_gamma(rate_curve(gen[1], 25), 500, 100, 100);
  EXPECT_GT(g1, g2);
}

TEST(ScoreStreamCsv, RoundTripAndErrors) {
  ScoreStream s;
  s.episode_len = 30;
  s.drift_marks = {10, 20};
  for (std::int64_t t = 0; t <= 30; ++t) s.samples.push_back({t, 0.1 * static_cast<double>(t) / 3.0});
  std::stringstream io;
  write_score_stream(io, s);
  const ScoreStream back = read_score_stream(io);
  EXPECT_EQ(back.episode_len, 30);
  EXPECT_EQ(back.drift_marks, s.drift_marks);
  ASSERT_EQ(back.samples.size(), s.samples.size());
  for (std::size_t i = 0; i < s.samples.size(); ++i) {
    EXPECT_EQ(back.samples[i].tick, s.samples[i].tick);
    EXPECT_EQ(back.samples[i].cumulative, s.samples[i].cumulative);
  }

  std::stringstream bad("# aow-score-stream v1\n# episode_len=3\n# drift_marks=\ntick,cumulative_score\n0,0\n1,x\n");
  try {
    read_score_stream(bad);
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("line 6"), std::string::npos) << e.what();
  }
  EXPECT_THROW(read_score_stream_file("/nonexistent/scores.csv"), IoError);
}

}  // namespace
}  // namespace aow
