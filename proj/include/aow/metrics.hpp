// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace aow {

struct ScoreSample {
  std::int64_t tick = 0;
  double cumulative = 0.0;
};

struct ScoreStream {
  std::vector<ScoreSample> samples;
  std::vector<std::int64_t> drift_marks;
  std::int64_t episode_len = 0;
};

/// Throws ContractViolation if ticks are not strictly increasing or the
/// cumulative score ever decreases.
void validate(const ScoreStream& stream);

struct RatePoint {
  std::int64_t tick = 0;
  double rate = 0.0;
};

using RateCurve = std::vector<RatePoint>;

/// Weights for the merged metric, (w_alpha, w_beta, w_gamma).
using MergeWeights = std::array<double, 3>;
inline constexpr MergeWeights kEqualWeights{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

struct MetricParams {
  /// Half-width in ticks of the least-squares window used for dS/dt.
  int window = 25;
  double theta = 0.9;
  int pre_win = 100;
  int post_win = 100;
  MergeWeights weights = kEqualWeights;
};

struct AdaptationReport {
  int agent_id = 0;
  std::string agent_name;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double I = 0.0;
  MergeWeights weights = kEqualWeights;
  /// I only certifies what the agent chose to show.
  bool lower_bound = true;
  /// False when the stream had no drift mark to measure generalization on.
  bool gamma_measured = true;
  int segments = 0;
  int retries = 0;
  std::uint64_t world_seed = 0;
};

/// Centered moving-window least-squares slope of cumulative score vs tick.
RateCurve rate_curve(const ScoreStream& stream, int window);

/// Speed (alpha) and level (beta) of adaptation over [t0, t1].
std::pair<double, double> extract_alpha_beta(const RateCurve& curve, std::int64_t t0,
                                             std::int64_t t1, double theta = 0.9);

/// Generalization: clamped ratio of mean rate after vs before a drift mark.
double extract_gamma(const RateCurve& curve, std::int64_t drift_mark, int pre_win, int post_win);

/// Weighted geometric mean.
double merge(double alpha, double beta, double gamma, const MergeWeights& weights = kEqualWeights);

/// Full pipeline: rate curve, alpha/beta per regime segment (averaged),
/// gamma per drift mark (averaged), merged I.
AdaptationReport adaptation_report(const ScoreStream& stream, const MetricParams& params);

/// Per-field mean over worlds (I is the mean of per-world I).
AdaptationReport aggregate_reports(const std::vector<AdaptationReport>& reports);

/// Sorted by I desc, then beta desc, alpha desc, agent id asc.
std::vector<AdaptationReport> relative_rank(std::vector<AdaptationReport> reports);

/// Reference adaptation curves, packaged under data/golden:
/// three curves with alpha1 > alpha3 > alpha2 and beta1 > beta2 > beta3.
std::vector<ScoreStream> golden_adaptation_streams();
/// Two curves sharing a drift mark, with gamma1 > gamma2.
std::vector<ScoreStream> golden_generalization_streams();

void write_score_stream(std::ostream& out, const ScoreStream& stream);
/// Throws IoError naming the offending line.
ScoreStream read_score_stream(std::istream& in);
ScoreStream read_score_stream_file(const std::string& path);

void write_rate_csv(std::ostream& out, const RateCurve& curve);
void write_report_csv_header(std::ostream& out);
void write_report_csv_row(std::ostream& out, const AdaptationReport& report);

}  // namespace aow
