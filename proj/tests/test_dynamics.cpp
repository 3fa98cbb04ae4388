#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "swarm/dynamics.hpp"
#include "swarm/errors.hpp"

using namespace swarm;

namespace {

const Region kBig({-10, -10}, {10, 10});

Snapshot snapshot_of(std::vector<Vec2> ps, double V_A) {
  std::vector<IndexedPoint> pts;
  for (std::size_t i = 0; i < ps.size(); ++i) pts.push_back({static_cast<AgentId>(i), ps[i]});
  return Snapshot(std::move(pts), V_A);
}

SignalCoverageLaw unit_gaussian_law(std::vector<double> demands) {
  KernelOptions opts;
  opts.truncation_radius = 8.0;
  opts.grid_step = 8.0 / 512.0;
  SignalCoverageLaw law;
  law.kernel = derive_kernel(SignalFunction::gaussian(1.0), opts);
  for (double n : demands) {
    KernelTable t = law.kernel;
    t.demand_scale = n;
    law.target_kernels.push_back(t);
  }
  return law;
}

DynamicsConfig config(ForceLaw law, double V_A, double delta, double Delta, bool noise) {
  DynamicsConfig cfg{std::move(law), V_A, delta, Delta, noise};
  cfg.validate();
  return cfg;
}

DemandProfile empty_electrostatic(const Region& r = kBig, double V_A = 3.0) {
  return DemandProfile::electrostatic(r, {{}, {}, V_A});
}

}  // namespace

TEST(DynamicsConfig, RequiresOrderedSteps) {
  EXPECT_THROW(config(ElectrostaticLaw{}, 1.0, 0.1, 0.05, true), ConfigError);
  EXPECT_THROW(config(ElectrostaticLaw{}, 1.0, 0.0, 0.05, true), ConfigError);
  EXPECT_THROW(config(ElectrostaticLaw{}, 0.0, 0.01, 0.05, true), ConfigError);
  EXPECT_NO_THROW(config(ElectrostaticLaw{}, 1.0, 0.05, 0.05, true));
}

TEST(SignalCoverageVelocity, IsolatedAgent) {
  const auto snap = snapshot_of({{0, 0}, {5, 5}}, 1.0);
  const auto r = signal_coverage_velocity(snap, 0, {}, unit_gaussian_law({}));
  EXPECT_TRUE(r.is_isolated);
  EXPECT_EQ(r.v, Vec2(0, 0));
}

TEST(SignalCoverageVelocity, PulledTowardSingleCenter) {
  const auto snap = snapshot_of({{0, 0}}, 2.0);
  const std::vector<TargetSite> targets{{{1, 0}, 1.0, 0}};
  const auto r = signal_coverage_velocity(snap, 0, targets, unit_gaussian_law({1.0}));
  EXPECT_FALSE(r.is_isolated);
  EXPECT_NEAR(r.v.x, -0.9527361323650899, 1e-6);  // -(pi / 2) exp(-1/2)
  EXPECT_NEAR(r.v.y, 0.0, 1e-15);
  RngStream rng(0, StreamDomain::test, 0, 0);
  const auto cfg = config(unit_gaussian_law({1.0}), 2.0, 0.01, 0.01, false);
  const Vec2 next = apply_step({0, 0}, r, cfg, DemandProfile::linear(kBig, 0, 0), rng);
  EXPECT_NEAR(next.x, 0.01, 1e-15);
}

TEST(SignalCoverageVelocity, SymmetricCentersCancel) {
  const auto snap = snapshot_of({{0, 0}}, 2.0);
  const std::vector<TargetSite> targets{{{-0.7, 0}, 2.0, 0}, {{0.7, 0}, 2.0, 1}};
  const auto r = signal_coverage_velocity(snap, 0, targets, unit_gaussian_law({2.0, 2.0}));
  EXPECT_NEAR(r.v.norm(), 0.0, 1e-15);
}

TEST(SignalCoverageVelocity, NeighborsRepel) {
  const auto snap = snapshot_of({{0, 0}, {0.5, 0}}, 2.0);
  const auto r = signal_coverage_velocity(snap, 0, {}, unit_gaussian_law({}));
  // v points toward the neighbor; the step goes along -v, away from it.
  EXPECT_GT(r.v.x, 0.0);
  EXPECT_NEAR(r.v.x, gaussian_kernel_closed_form(0.5, 1.0), 1e-4);
}

TEST(ElectrostaticVelocity, NeighborAtDistanceTwo) {
  const auto snap = snapshot_of({{0, 0}, {2, 0}}, 3.0);
  const auto r = electrostatic_velocity(snap, 0, {});
  EXPECT_DOUBLE_EQ(r.v.x, 0.25);
  EXPECT_DOUBLE_EQ(r.v.y, 0.0);
  RngStream rng(0, StreamDomain::test, 0, 0);
  const auto cfg = config(ElectrostaticLaw{}, 3.0, 0.1, 0.1, false);
  EXPECT_NEAR(apply_step({0, 0}, r, cfg, empty_electrostatic(), rng).x, -0.1, 1e-15);
}

TEST(ElectrostaticVelocity, TargetDemandThreeAtDistanceOne) {
  const auto snap = snapshot_of({{0, 0}}, 3.0);
  const std::vector<TargetSite> targets{{{0, 1}, 3.0, 0}};
  const auto r = electrostatic_velocity(snap, 0, targets);
  EXPECT_NEAR(r.v.x, 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(r.v.y, -3.0);
}

TEST(ElectrostaticVelocity, NeighborJustBeyondRangeIgnored) {
  const auto snap = snapshot_of({{0, 0}, {1.0 + 1e-9, 0}}, 1.0);
  const auto r = electrostatic_velocity(snap, 0, {});
  EXPECT_TRUE(r.is_isolated);
  EXPECT_EQ(r.v, Vec2(0, 0));
}

TEST(ElectrostaticVelocity, CoincidentPairContributesNothing) {
  const auto snap = snapshot_of({{0.5, 0.5}, {0.5, 0.5}}, 1.0);
  for (std::size_t i : {0u, 1u}) {
    const auto r = electrostatic_velocity(snap, i, {});
    EXPECT_EQ(r.v, Vec2(0, 0));
    EXPECT_TRUE(r.v.finite());
  }
}

TEST(ScalarFieldVelocity, LinearFieldMovesUpGradient) {
  const Region unit({0, 0}, {1, 1});
  const auto profile = DemandProfile::linear(unit, 1, 2);
  const auto snap = snapshot_of({{0.5, 0.5}}, 0.1);
  const auto r = scalar_field_velocity(snap, 0, profile);
  EXPECT_EQ(r.v, Vec2(-1, -2));
  const auto cfg = config(ScalarFieldLaw{}, 0.1, 0.01, 0.01, false);
  RngStream rng(0, StreamDomain::test, 0, 0);
  const Vec2 step = apply_step({0.5, 0.5}, r, cfg, profile, rng) - Vec2{0.5, 0.5};
  EXPECT_NEAR(step.x, 0.01 / std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(step.y, 0.02 / std::sqrt(5.0), 1e-15);
}

TEST(ScalarFieldVelocity, ExponentialCenterIsStationary) {
  const Region unit({0, 0}, {1, 1});
  const auto profile = DemandProfile::exponential(unit, 50, 5, {0.5, 0.5});
  const auto r = scalar_field_velocity(snapshot_of({{0.5, 0.5}}, 0.1), 0, profile);
  EXPECT_EQ(r.v, Vec2(0, 0));
}

TEST(ScalarFieldVelocity, CoincidentAgentsInZeroField) {
  const Region unit({0, 0}, {1, 1});
  const auto profile = DemandProfile::linear(unit, 0, 0);
  const auto snap = snapshot_of({{0.3, 0.3}, {0.3, 0.3}}, 0.1);
  EXPECT_EQ(scalar_field_velocity(snap, 0, profile).v, Vec2(0, 0));
  EXPECT_EQ(scalar_field_velocity(snap, 1, profile).v, Vec2(0, 0));
}

TEST(ApplyStep, NormalizationArithmetic) {
  const auto cfg = config(ElectrostaticLaw{}, 1.0, 0.01, 0.01, false);
  RngStream rng(0, StreamDomain::test, 0, 0);
  const Vec2 next = apply_step({1, 1}, {{3, 4}, false}, cfg, empty_electrostatic(), rng);
  EXPECT_NEAR(next.x - 1, -0.006, 1e-15);
  EXPECT_NEAR(next.y - 1, -0.008, 1e-15);
}

TEST(ApplyStep, ZeroVelocityWithoutNoiseStays) {
  const auto cfg = config(ElectrostaticLaw{}, 1.0, 0.01, 0.02, false);
  RngStream rng(0, StreamDomain::test, 0, 0);
  EXPECT_EQ(apply_step({1, 1}, {{0, 0}, true}, cfg, empty_electrostatic(), rng), Vec2(1, 1));
}

TEST(ApplyStep, LeavingSupportStaysPut) {
  const Region unit({0, 0}, {1, 1});
  const auto cfg = config(ElectrostaticLaw{}, 1.0, 0.05, 0.05, false);
  RngStream rng(0, StreamDomain::test, 0, 0);
  const Vec2 p{0.99, 0.5};
  EXPECT_EQ(apply_step(p, {{-1, 0}, false}, cfg, empty_electrostatic(unit), rng), p);
}

TEST(ApplyStep, NoiseStaysWithinBound) {
  const auto cfg = config(ElectrostaticLaw{}, 1.0, 0.01, 0.03, true);
  const auto profile = empty_electrostatic();
  double max_noise = 0.0;
  for (std::uint64_t step = 0; step < 5000; ++step) {
    RngStream rng = RngStream::for_step(9, 0, step);
    const Vec2 d = apply_step({0, 0}, {{1, 0}, false}, cfg, profile, rng);
    ASSERT_LE(d.norm(), 0.03 * (1 + 1e-12));
    max_noise = std::max(max_noise, (d - Vec2{-0.01, 0}).norm());
  }
  // Disk of radius Delta - delta is actually explored.
  EXPECT_GT(max_noise, 0.019);
  EXPECT_LE(max_noise, 0.02 * (1 + 1e-12));
}

TEST(ApplyStep, PositiveScalingOfVelocityIsInvisible) {
  const auto cfg = config(ElectrostaticLaw{}, 1.0, 0.01, 0.01, false);
  RngStream rng(0, StreamDomain::test, 0, 0);
  const Vec2 v{0.3, -1.7};
  const Vec2 base = apply_step({0, 0}, {v, false}, cfg, empty_electrostatic(), rng);
  for (double c : {1e-6, 0.5, 3.0, 1e6}) {
    EXPECT_NEAR((apply_step({0, 0}, {c * v, false}, cfg, empty_electrostatic(), rng) - base).norm(), 0.0, 1e-15);
  }
}

TEST(Velocity, RotationEquivarianceForEachLaw) {
  const auto law = unit_gaussian_law({2.0, 1.0});
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    RngStream rng(trial, StreamDomain::test, 20, 0);
    std::vector<Vec2> ps;
    for (int i = 0; i < 6; ++i) ps.push_back(rng.next_in_disk(1.5));
    const std::vector<Vec2> cs{rng.next_in_disk(1.5), rng.next_in_disk(1.5)};
    const double angle = rng.next_uniform(0, 2 * M_PI);
    std::vector<Vec2> rps;
    for (Vec2 p : ps) rps.push_back(rotated(p, angle));
    const std::vector<TargetSite> sites{{cs[0], 2.0, 0}, {cs[1], 1.0, 1}};
    const std::vector<TargetSite> rsites{{rotated(cs[0], angle), 2.0, 0}, {rotated(cs[1], angle), 1.0, 1}};
    const auto snap = snapshot_of(ps, 2.0);
    const auto rsnap = snapshot_of(rps, 2.0);
    const auto field = DemandProfile::exponential(kBig, 3.0, 2.0, {0, 0});
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const Vec2 a = rotated(signal_coverage_velocity(snap, i, sites, law).v, angle);
      const Vec2 b = signal_coverage_velocity(rsnap, i, rsites, law).v;
      EXPECT_LT((a - b).norm(), 1e-9 * std::max(1.0, b.norm()));
      const Vec2 c = rotated(electrostatic_velocity(snap, i, sites).v, angle);
      const Vec2 d = electrostatic_velocity(rsnap, i, rsites).v;
      EXPECT_LT((c - d).norm(), 1e-9 * std::max(1.0, d.norm()));
      const Vec2 e = rotated(scalar_field_velocity(snap, i, field).v, angle);
      const Vec2 f = scalar_field_velocity(rsnap, i, field).v;
      EXPECT_LT((e - f).norm(), 1e-9 * std::max(1.0, f.norm()));
    }
  }
}

TEST(Velocity, DispatchMatchesLaw) {
  const auto snap = snapshot_of({{0, 0}, {2, 0}}, 3.0);
  const auto cfg = config(ElectrostaticLaw{}, 3.0, 0.01, 0.02, true);
  EXPECT_EQ(velocity(snap, 0, {}, cfg, empty_electrostatic()).v, electrostatic_velocity(snap, 0, {}).v);
}

TEST(Snapshot, NeighborsExcludeSelfSortedById) {
  const auto snap = snapshot_of({{0, 0}, {0.5, 0}, {0.1, 0.1}, {3, 3}}, 1.0);
  const auto ns = snap.neighbors_of(0);
  ASSERT_EQ(ns.size(), 2u);
  EXPECT_EQ(ns[0].id, 1u);
  EXPECT_EQ(ns[1].id, 2u);
}
