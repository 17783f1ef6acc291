// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#include "aow/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "aow/common.hpp"

namespace aow {

void validate(const ScoreStream& stream) {
  for (std::size_t i = 1; i < stream.samples.size(); ++i) {
    if (stream.samples[i].tick <= stream.samples[i - 1].tick) {
      throw ContractViolation("score stream ticks must be strictly increasing");
    }
    if (stream.samples[i].cumulative < stream.samples[i - 1].cumulative) {
      throw ContractViolation("cumulative score must be non-decreasing");
    }
  }
}

RateCurve rate_curve(const ScoreStream& stream, int window) {
  if (window < 1) throw ContractViolation("rate_curve: window must be >= 1");
  const auto& s = stream.samples;
  if (s.size() < 2) throw InsufficientData("rate_curve needs at least 2 samples");
  validate(stream);

  RateCurve out;
  out.reserve(s.size());
  std::size_t lo = 0;
  std::size_t hi = 0;  // exclusive
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::int64_t t = s[i].tick;
    while (s[lo].tick < t - window) ++lo;
    while (hi < s.size() && s[hi].tick <= t + window) ++hi;
    std::size_t a = lo;
    std::size_t b = hi;
    if (b - a < 2) {
      a = i == 0 ? 0 : i - 1;
      b = std::min(s.size(), i + 2);
    }
    // Centered moments for a stable slope.
    double tm = 0.0;
    double ym = 0.0;
    for (std::size_t j = a; j < b; ++j) {
      tm += static_cast<double>(s[j].tick);
      ym += s[j].cumulative;
    }
    const double n = static_cast<double>(b - a);
    tm /= n;
    ym /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t j = a; j < b; ++j) {
      const double dt = static_cast<double>(s[j].tick) - tm;
      sxy += dt * (s[j].cumulative - ym);
      sxx += dt * dt;
    }
    out.push_back({t, std::max(0.0, sxy / sxx)});
  }
  return out;
}

std::pair<double, double> extract_alpha_beta(const RateCurve& curve, std::int64_t t0,
                                             std::int64_t t1, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw ContractViolation("theta must lie in (0, 1)");
  if (t1 <= t0) throw ContractViolation("segment must have t1 > t0");
  std::vector<RatePoint> seg;
  for (const auto& p : curve) {
    if (p.tick >= t0 && p.tick <= t1) seg.push_back(p);
  }
  if (seg.empty()) return {0.0, 0.0};

  const double plateau_start = static_cast<double>(t1) - 0.2 * static_cast<double>(t1 - t0);
  double sum = 0.0;
  int count = 0;
  for (const auto& p : seg) {
    if (static_cast<double>(p.tick) >= plateau_start) {
      sum += p.rate;
      ++count;
    }
  }
  const double beta = count > 0 ? sum / count : 0.0;
  if (!(beta > 0.0)) return {0.0, 0.0};

  std::int64_t spacing = t1 - t0;
  for (std::size_t i = 1; i < seg.size(); ++i) {
    spacing = std::min(spacing, seg[i].tick - seg[i - 1].tick);
  }
  std::int64_t t_theta = t1;
  for (const auto& p : seg) {
    if (p.rate >= theta * beta) {
      t_theta = p.tick;
      break;
    }
  }
  const auto rise = std::max<std::int64_t>(t_theta - t0, std::max<std::int64_t>(spacing, 1));
  const double alpha = static_cast<double>(t1 - t0) / static_cast<double>(rise);
  return {alpha, beta};
}

double extract_gamma(const RateCurve& curve, std::int64_t drift_mark, int pre_win, int post_win) {
  if (pre_win < 1 || post_win < 1) throw ContractViolation("gamma windows must be >= 1");
  double pre = 0.0;
  double post = 0.0;
  int n_pre = 0;
  int n_post = 0;
  for (const auto& p : curve) {
    if (p.tick >= drift_mark - pre_win && p.tick < drift_mark) {
      pre += p.rate;
      ++n_pre;
    } else if (p.tick >= drift_mark && p.tick < drift_mark + post_win) {
      post += p.rate;
      ++n_post;
    }
  }
  if (n_pre == 0 || n_post == 0) return 0.0;
  const double r_pre = pre / n_pre;
  const double r_post = post / n_post;
  if (!(r_pre > 0.0)) return 0.0;
  return std::clamp(r_post / r_pre, 0.0, 1.0);
}

double merge(double alpha, double beta, double gamma, const MergeWeights& w) {
  double total = 0.0;
  for (double x : w) {
    if (!(x >= 0.0)) throw ContractViolation("merge weights must be nonnegative");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ContractViolation("merge weights must sum to 1");
  const double v[3] = {alpha, beta, gamma};
  double out = 1.0;
  for (int i = 0; i < 3; ++i) {
    if (w[i] == 0.0) continue;
    if (!(v[i] > 0.0)) return 0.0;
    out *= std::pow(v[i], w[i]);
  }
  return out;
}

AdaptationReport adaptation_report(const ScoreStream& stream, const MetricParams& params) {
  const RateCurve curve = rate_curve(stream, params.window);
  const std::int64_t start = stream.samples.front().tick;
  const std::int64_t end =
      std::max(stream.episode_len, stream.samples.back().tick);

  std::vector<std::int64_t> bounds{start};
  for (auto m : stream.drift_marks) {
    if (m > start && m < end) bounds.push_back(m);
  }
  bounds.push_back(end);

  AdaptationReport r;
  r.weights = params.weights;
  double alpha_sum = 0.0;
  double beta_sum = 0.0;
  int segments = 0;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    if (bounds[i + 1] <= bounds[i]) continue;
    // The last sample of a segment sits just before the next mark.
    const std::int64_t seg_end = i + 2 < bounds.size() ? bounds[i + 1] - 1 : bounds[i + 1];
    if (seg_end <= bounds[i]) continue;
    const auto [a, b] = extract_alpha_beta(curve, bounds[i], seg_end, params.theta);
    alpha_sum += a;
    beta_sum += b;
    ++segments;
  }
  r.segments = segments;
  r.alpha = segments > 0 ? alpha_sum / segments : 0.0;
  r.beta = segments > 0 ? beta_sum / segments : 0.0;

  double gamma_sum = 0.0;
  int marks = 0;
  for (std::size_t i = 1; i + 1 < bounds.size(); ++i) {
    gamma_sum += extract_gamma(curve, bounds[i], params.pre_win, params.post_win);
    ++marks;
  }
  r.gamma_measured = marks > 0;
  r.gamma = marks > 0 ? gamma_sum / marks : 1.0;
  r.I = merge(r.alpha, r.beta, r.gamma, params.weights);
  return r;
}

AdaptationReport aggregate_reports(const std::vector<AdaptationReport>& reports) {
  if (reports.empty()) throw InsufficientData("no reports to aggregate");
  AdaptationReport out = reports.front();
  if (reports.size() == 1) return out;
  out.alpha = out.beta = out.gamma = out.I = 0.0;
  out.segments = 0;
  out.retries = 0;
  out.gamma_measured = true;
  for (const auto& r : reports) {
    out.alpha += r.alpha;
    out.beta += r.beta;
    out.gamma += r.gamma;
    out.I += r.I;
    out.segments += r.segments;
    out.retries = std::max(out.retries, r.retries);
    out.gamma_measured = out.gamma_measured && r.gamma_measured;
  }
  const double n = static_cast<double>(reports.size());
  out.alpha /= n;
  out.beta /= n;
  out.gamma /= n;
  out.I /= n;
  out.world_seed = 0;
  return out;
}

std::vector<AdaptationReport> relative_rank(std::vector<AdaptationReport> reports) {
  std::sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
    if (a.I != b.I) return a.I > b.I;
    if (a.beta != b.beta) return a.beta > b.beta;
    if (a.alpha != b.alpha) return a.alpha > b.alpha;
    return a.agent_id < b.agent_id;
  });
  return reports;
}

namespace {

// Cumulative of r(t) = level * (1 - exp(-t / tau)).
double rise_integral(double level, double tau, double t) {
  return level * (t - tau * (1.0 - std::exp(-t / tau)));
}

}  // namespace

std::vector<ScoreStream> golden_adaptation_streams() {
  struct Shape {
    double level;
    double tau;
  };
  // Curve 1 rises fastest and highest; curve 2 is slow but ends above curve
  // 3; curve 3 is quick to settle at a low level.
  const Shape shapes[] = {{1.0, 20.0}, {0.7, 150.0}, {0.4, 60.0}};
  std::vector<ScoreStream> out;
  for (const auto& sh : shapes) {
    ScoreStream s;
    s.episode_len = 1000;
    for (std::int64_t t = 0; t <= 1000; ++t) {
      s.samples.push_back({t, rise_integral(sh.level, sh.tau, static_cast<double>(t))});
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<ScoreStream> golden_generalization_streams() {
  struct Shape {
    double dip;
    double recovery;
  };
  // Rate after the mark: 1 - dip * exp(-(t - mark) / recovery).
  const Shape shapes[] = {{0.2, 40.0}, {0.8, 150.0}};
  constexpr std::int64_t kMark = 500;
  constexpr double kTau = 30.0;
  std::vector<ScoreStream> out;
  for (const auto& sh : shapes) {
    ScoreStream s;
    s.episode_len = 1000;
    s.drift_marks = {kMark};
    const double at_mark = rise_integral(1.0, kTau, static_cast<double>(kMark));
    for (std::int64_t t = 0; t <= 1000; ++t) {
      double c;
      if (t <= kMark) {
        c = rise_integral(1.0, kTau, static_cast<double>(t));
      } else {
        const double u = static_cast<double>(t - kMark);
        c = at_mark + u - sh.dip * sh.recovery * (1.0 - std::exp(-u / sh.recovery));
      }
      s.samples.push_back({t, c});
    }
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

[[noreturn]] void bad_line(std::size_t line, const std::string& why) {
  throw IoError("score stream line " + std::to_string(line) + ": " + why);
}

std::int64_t parse_int(std::string_view s, std::size_t line) {
  std::int64_t v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) bad_line(line, "bad integer '" + std::string(s) + "'");
  return v;
}

double parse_double(const std::string& s, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    bad_line(line, "bad number '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) bad_line(line, "bad number '" + s + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void write_score_stream(std::ostream& out, const ScoreStream& stream) {
  out << "# aow-score-stream v1\n";
  out << "# episode_len=" << stream.episode_len << "\n";
  out << "# drift_marks=";
  for (std::size_t i = 0; i < stream.drift_marks.size(); ++i) {
    out << (i ? "," : "") << stream.drift_marks[i];
  }
  out << "\n";
  out << "tick,cumulative_score\n";
  for (const auto& s : stream.samples) out << s.tick << "," << fmt_double(s.cumulative) << "\n";
}

ScoreStream read_score_stream(std::istream& in) {
  ScoreStream s;
  std::string raw;
  std::size_t line = 0;
  bool saw_version = false;
  bool saw_columns = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty()) continue;
    if (text[0] == '#') {
      const std::string body = trim(text.substr(1));
      if (body == "aow-score-stream v1") {
        saw_version = true;
      } else if (body.rfind("episode_len=", 0) == 0) {
        s.episode_len = parse_int(body.substr(12), line);
      } else if (body.rfind("drift_marks=", 0) == 0) {
        std::stringstream ss(body.substr(12));
        std::string item;
        while (std::getline(ss, item, ',')) {
          item = trim(item);
          if (!item.empty()) s.drift_marks.push_back(parse_int(item, line));
        }
      } else if (!saw_version) {
        bad_line(line, "expected '# aow-score-stream v1' header");
      }
      continue;
    }
    if (!saw_version) bad_line(line, "missing '# aow-score-stream v1' header");
    if (!saw_columns) {
      if (text != "tick,cumulative_score") bad_line(line, "expected column header 'tick,cumulative_score'");
      saw_columns = true;
      continue;
    }
    const auto comma = text.find(',');
    if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
      bad_line(line, "expected two comma-separated fields");
    }
    ScoreSample sample;
    sample.tick = parse_int(trim(text.substr(0, comma)), line);
    sample.cumulative = parse_double(trim(text.substr(comma + 1)), line);
    if (!s.samples.empty()) {
      if (sample.tick <= s.samples.back().tick) bad_line(line, "ticks must be strictly increasing");
      if (sample.cumulative < s.samples.back().cumulative) {
        bad_line(line, "cumulative score decreased");
      }
    }
    s.samples.push_back(sample);
  }
  if (!saw_version) throw IoError("score stream line 1: missing '# aow-score-stream v1' header");
  if (s.episode_len == 0 && !s.samples.empty()) s.episode_len = s.samples.back().tick;
  std::sort(s.drift_marks.begin(), s.drift_marks.end());
  return s;
}

ScoreStream read_score_stream_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open score stream '" + path + "'");
  return read_score_stream(in);
}

void write_rate_csv(std::ostream& out, const RateCurve& curve) {
  out << "tick,rate\n";
  for (const auto& p : curve) out << p.tick << "," << fmt_double(p.rate) << "\n";
}

void write_report_csv_header(std::ostream& out) {
  out << "agent_id,agent,world_seed,alpha,beta,gamma,I,w_alpha,w_beta,w_gamma,"
         "lower_bound,gamma_measured,segments,retries\n";
}

void write_report_csv_row(std::ostream& out, const AdaptationReport& r) {
  out << r.agent_id << "," << r.agent_name << "," << r.world_seed << "," << fmt_double(r.alpha)
      << "," << fmt_double(r.beta) << "," << fmt_double(r.gamma) << "," << fmt_double(r.I) << ","
      << fmt_double(r.weights[0]) << "," << fmt_double(r.weights[1]) << ","
      << fmt_double(r.weights[2]) << "," << (r.lower_bound ? "true" : "false") << ","
      << (r.gamma_measured ? "true" : "false") << "," << r.segments << "," << r.retries << "\n";
}

}  // namespace aow
