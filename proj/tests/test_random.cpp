// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <set>

#include "aow/random.hpp"

namespace aow {
namespace {

TEST(Stream, SameKeyAndCounterGiveSameSequence) {
  Stream a(42, 0);
  Stream b(42, 0);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Stream, ResumesFromCounter) {
  Stream a(7, 0);
  for (int i = 0; i < 10; ++i) a.next_u64();
  Stream b(7, a.counter());
  EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Stream, ForkDoesNotAdvanceParent) {
  Stream a = Stream::named(1, "drift");
  const Stream before = a;
  Stream child = a.fork(3);
  EXPECT_EQ(a, before);
  EXPECT_NE(child.next_u64(), a.next_u64());
}

TEST(Stream, NamedStreamsAreDistinct) {
  Stream a = Stream::named(9, "generation");
  Stream b = Stream::named(9, "drift");
  Stream c = Stream::named(10, "generation");
  const auto x = a.next_u64();
  EXPECT_NE(x, b.next_u64());
  EXPECT_NE(x, c.next_u64());
}

TEST(Stream, UniformStaysInRange) {
  Stream s(5, 0);
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 20000.0, 0.5, 0.01);
}

TEST(Stream, BelowIsUnbiased) {
  Stream s(11, 0);
  int counts[6] = {};
  for (int i = 0; i < 60000; ++i) ++counts[s.below(6)];
  for (int c : counts) EXPECT_NEAR(c, 10000, 400);
  EXPECT_EQ(s.below(1), 0u);
}

TEST(Mix64, DistinctOnConsecutiveInputs) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 100000; ++i) seen.insert(mix64(i));
  EXPECT_EQ(seen.size(), 100000u);
}

TEST(UniformInBall, RespectsRadiusAndDim) {
  Stream s(3, 0);
  for (int i = 0; i < 1000; ++i) {
    const Vec v = uniform_in_ball(s, 0.5, 2);
    EXPECT_LE(std::hypot(v[0], v[1]), 0.5);
    EXPECT_EQ(v[2], 0.0);
  }
}

}  // namespace
}  // namespace aow
