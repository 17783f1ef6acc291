// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace aow {

/// Largest supported spatial dimension. Worlds use the first `dim` components.
inline constexpr int kMaxDim = 3;

using Vec = std::array<double, kMaxDim>;

/// Raised when a configuration value violates a documented invariant.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a caller breaks an operation's precondition (unknown ids,
/// shape mismatches, forbidden agent usage).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when an agent speaks outside the wire protocol.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised on malformed or unreadable input files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a computation needs more samples than it was given.
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double norm(const Vec& v, int dim) {
  double s = 0.0;
  for (int k = 0; k < dim; ++k) s += v[k] * v[k];
  return std::sqrt(s);
}

/// Scales `v` down so that its magnitude does not exceed `limit`.
inline Vec clamp_magnitude(Vec v, double limit, int dim) {
  const double n = norm(v, dim);
  if (n > limit && n > 0.0) {
    const double f = limit / n;
    for (int k = 0; k < dim; ++k) v[k] *= f;
  }
  return v;
}

/// Wraps a coordinate into the half-open arena interval [-extent, extent).
inline double wrap_coord(double x, double extent) {
  const double width = 2.0 * extent;
  double u = std::fmod(x + extent, width);
  if (u < 0.0) u += width;
  if (u >= width) u = 0.0;
  return u - extent;
}

/// Shortest signed displacement from `from` to `to` on the torus, per axis.
inline Vec torus_delta(const Vec& from, const Vec& to, double extent, int dim) {
  const double width = 2.0 * extent;
  Vec d{};
  for (int k = 0; k < dim; ++k) {
    double x = to[k] - from[k];
    x -= width * std::round(x / width);
    d[k] = x;
  }
  return d;
}

}  // namespace aow
