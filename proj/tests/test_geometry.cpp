#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <set>
#include <vector>

#include "swarm/errors.hpp"
#include "swarm/geometry.hpp"
#include "swarm/oracles.hpp"
#include "swarm/parallel.hpp"
#include "swarm/random.hpp"
#include "swarm/spatial_index.hpp"

using namespace swarm;

TEST(UnitToward, AxisAligned) {
  const auto u = unit_toward({0, 0}, {1, 0}, 1e-12);
  EXPECT_FALSE(u.is_degenerate);
  EXPECT_EQ(u.direction, Vec2(1, 0));
}

TEST(UnitToward, CoincidentPointsAreDegenerate) {
  const auto u = unit_toward({1, 1}, {1, 1});
  EXPECT_TRUE(u.is_degenerate);
  EXPECT_EQ(u.direction, Vec2(0, 0));
}

TEST(UnitToward, ThreeFourFive) {
  const auto u = unit_toward({0, 0}, {3, 4});
  EXPECT_FALSE(u.is_degenerate);
  EXPECT_NEAR(u.direction.x, 0.6, 1e-15);
  EXPECT_NEAR(u.direction.y, 0.8, 1e-15);
}

TEST(UnitToward, WithinEpsIsDegenerate) {
  EXPECT_TRUE(unit_toward({0, 0}, {1e-13, 0}).is_degenerate);
  EXPECT_FALSE(unit_toward({0, 0}, {1e-11, 0}).is_degenerate);
}

TEST(UnitToward, NormIsOneWhenNotDegenerate) {
  RngStream rng(7, StreamDomain::test, 0, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec2 a{rng.next_uniform(-1e3, 1e3), rng.next_uniform(-1e3, 1e3)};
    const double scale = std::pow(10.0, rng.next_uniform(-10, 3));
    const Vec2 b = a + scale * Vec2{rng.next_uniform(-1, 1), rng.next_uniform(-1, 1)};
    const auto u = unit_toward(a, b);
    if (!u.is_degenerate) EXPECT_NEAR(u.direction.norm(), 1.0, 1e-12);
  }
}

TEST(Region, RejectsEmptyBox) {
  EXPECT_THROW(Region({0, 0}, {0, 1}), ConfigError);
  EXPECT_THROW(Region({0, 0}, {1, -1}), ConfigError);
}

TEST(Region, ClosedMembership) {
  const Region r({0, 0}, {1, 2});
  EXPECT_TRUE(r.contains({0, 0}));
  EXPECT_TRUE(r.contains({1, 2}));
  EXPECT_FALSE(r.strictly_contains({1, 0.5}));
  EXPECT_FALSE(r.contains({1.0000001, 0.5}));
  EXPECT_DOUBLE_EQ(r.inset_distance({0.25, 1}), 0.25);
  EXPECT_LT(r.inset_distance({-1, 1}), 0);
}

TEST(SpatialIndex, NonPositiveRadiusIsConfigError) {
  EXPECT_THROW(build_index({}, 0.0), ConfigError);
  EXPECT_THROW(build_index({}, -1.0), ConfigError);
}

TEST(SpatialIndex, EmptyHasNoBuckets) {
  const auto index = build_index({}, 1.0);
  EXPECT_EQ(index.bucket_count(), 0u);
  EXPECT_TRUE(index.neighbors_within({0, 0}, 1.0).empty());
}

TEST(SpatialIndex, CoLocatedPointsShareOneBucket) {
  const std::vector<IndexedPoint> pts{{0, {0.1, 0.1}}, {1, {0.2, 0.3}}, {2, {0.4, 0.05}}};
  const auto index = build_index(pts, 1.0);
  ASSERT_EQ(index.bucket_count(), 1u);
  EXPECT_EQ(index.bucket_sizes(), std::vector<std::size_t>{3});
}

TEST(SpatialIndex, EveryPointInExactlyOneBucket) {
  RngStream rng(3, StreamDomain::test, 1, 0);
  std::vector<IndexedPoint> pts;
  for (AgentId i = 0; i < 500; ++i) pts.push_back({i, {rng.next_uniform(-5, 5), rng.next_uniform(-5, 5)}});
  const auto index = build_index(pts, 0.37);
  std::size_t total = 0;
  for (std::size_t n : index.bucket_sizes()) total += n;
  EXPECT_EQ(total, pts.size());
}

TEST(SpatialIndex, ThresholdStraddle) {
  const std::vector<IndexedPoint> pts{{0, {0.5, 0}}, {1, {1.5, 0}}};
  const auto found = build_index(pts, 1.0).neighbors_within({0, 0}, 1.0);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].id, 0u);
  EXPECT_DOUBLE_EQ(found[0].distance, 0.5);
}

TEST(SpatialIndex, ClosedBallIncludesBoundary) {
  const std::vector<IndexedPoint> pts{{4, {0.75, 0}}};
  EXPECT_EQ(build_index(pts, 0.75).neighbors_within({0, 0}, 0.75).size(), 1u);
}

TEST(SpatialIndex, QueryRadiusAboveCellSizeIsContractViolation) {
  const auto index = build_index({}, 0.5);
  EXPECT_THROW(index.neighbors_within({0, 0}, 0.51), ContractViolation);
}

namespace {

std::set<AgentId> ids_of(const std::vector<Neighbor>& ns) {
  std::set<AgentId> ids;
  for (const auto& n : ns) ids.insert(n.id);
  return ids;
}

}  // namespace

TEST(SpatialIndex, MatchesBruteForceOn200UniformPoints) {
  RngStream rng(11, StreamDomain::test, 2, 0);
  std::vector<IndexedPoint> pts;
  for (AgentId i = 0; i < 200; ++i) pts.push_back({i, rng.next_in_region(Region({0, 0}, {1, 1}))});
  const auto index = build_index(pts, 0.1);
  for (const auto& q : pts) {
    EXPECT_EQ(ids_of(index.neighbors_within(q.position, 0.1)), ids_of(brute_force_neighbors(pts, q.position, 0.1)));
  }
}

TEST(SpatialIndex, RandomizedTrialsMatchBruteForce) {
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    RngStream rng(trial, StreamDomain::test, 3, 0);
    const double radius = rng.next_uniform(0.01, 2.0);
    const auto n = static_cast<AgentId>(rng.next_u64() % 100);
    std::vector<IndexedPoint> pts;
    for (AgentId i = 0; i < n; ++i) pts.push_back({i, {rng.next_uniform(-3, 3), rng.next_uniform(-3, 3)}});
    const auto index = build_index(pts, radius);
    const Vec2 p{rng.next_uniform(-3, 3), rng.next_uniform(-3, 3)};
    const double r = radius * rng.next_unit();
    ASSERT_EQ(ids_of(index.neighbors_within(p, r)), ids_of(brute_force_neighbors(pts, p, r))) << "trial " << trial;
  }
}

TEST(RngStream, SameKeyGivesSameDraws) {
  RngStream a = RngStream::for_step(42, 5, 1000);
  RngStream b = RngStream::for_step(42, 5, 1000);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(RngStream, DifferentKeysDiffer) {
  EXPECT_NE(RngStream::for_step(42, 5, 1000).next_u64(), RngStream::for_step(42, 6, 1000).next_u64());
  EXPECT_NE(RngStream::for_step(42, 5, 1000).next_u64(), RngStream::for_step(42, 5, 1001).next_u64());
  EXPECT_NE(RngStream::for_step(42, 5, 1000).next_u64(), RngStream::for_step(43, 5, 1000).next_u64());
  EXPECT_NE(RngStream(1, StreamDomain::agent_init, 0, 0).next_u64(),
            RngStream(1, StreamDomain::target_placement, 0, 0).next_u64());
}

TEST(RngStream, UnitAndDiskRanges) {
  RngStream rng(5, StreamDomain::test, 4, 0);
  double sum_r2 = 0.0;
  const int n = 20000;
  for (int k = 0; k < n; ++k) {
    const double u = rng.next_unit();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const Vec2 d = rng.next_in_disk(0.5);
    ASSERT_LE(d.norm(), 0.5);
    sum_r2 += d.norm_sq();
  }
  // Area-uniform disk: E[r^2] = R^2 / 2.
  EXPECT_NEAR(sum_r2 / n, 0.125, 0.003);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(10000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); }, 1);
  EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](const auto& h) { return h.load() == 1; }));
  parallel_for(0, [](std::size_t) { FAIL(); });
}
