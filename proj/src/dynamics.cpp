#include "swarm/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "swarm/errors.hpp"

namespace swarm {

void DynamicsConfig::validate() const {
  if (!(sensing_range > 0.0) || !std::isfinite(sensing_range)) {
    throw ConfigError("sensing range V_A must be positive and finite");
  }
  if (!(delta > 0.0)) throw ConfigError("step length requires 0 < delta");
  if (!(delta <= Delta) || !std::isfinite(Delta)) throw ConfigError("step bound requires delta <= Delta");
}

Snapshot::Snapshot(std::vector<IndexedPoint> agents, double sensing_range)
    : agents_(std::move(agents)), sensing_range_(sensing_range), index_(agents_, sensing_range) {}

std::vector<Neighbor> Snapshot::neighbors_of(std::size_t i) const {
  const IndexedPoint& self = agents_[i];
  auto found = index_.neighbors_within(self.position, sensing_range_);
  std::erase_if(found, [&](const Neighbor& n) { return n.id == self.id; });
  // Canonical summation order keeps results independent of storage order.
  std::sort(found.begin(), found.end(), [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
  return found;
}

namespace {

/// Sum over neighbors of weight(r) * unit(p -> q); degenerate pairs contribute nothing.
template <class Weight>
Vec2 neighbor_sum(Vec2 p, const std::vector<Neighbor>& neighbors, Weight&& weight) {
  Vec2 sum;
  for (const auto& n : neighbors) {
    const auto dir = unit_toward(p, n.position);
    if (dir.is_degenerate) continue;
    sum += weight(n.distance) * dir.direction;
  }
  return sum;
}

double inverse_square(double r) {
  const double c = std::max(r, kMinElectrostaticDistance);
  return 1.0 / (c * c);
}

}  // namespace

ForceReport signal_coverage_velocity(const Snapshot& snap, std::size_t i,
                                     std::span<const TargetSite> targets,
                                     const SignalCoverageLaw& law) {
  const Vec2 p = snap.agents()[i].position;
  const auto neighbors = snap.neighbors_of(i);
  Vec2 v = neighbor_sum(p, neighbors, [&](double r) { return law.kernel.scaled(r); });
  bool sensed_target = false;
  for (const auto& t : targets) {
    const double r = distance(p, t.position);
    if (r > snap.sensing_range()) continue;
    sensed_target = true;
    const auto dir = unit_toward(p, t.position);
    if (dir.is_degenerate) continue;
    v -= law.target_kernels.at(t.kernel_slot).scaled(r) * dir.direction;
  }
  return {v, neighbors.empty() && !sensed_target};
}

ForceReport electrostatic_velocity(const Snapshot& snap, std::size_t i,
                                   std::span<const TargetSite> targets) {
  const Vec2 p = snap.agents()[i].position;
  const auto neighbors = snap.neighbors_of(i);
  Vec2 v = neighbor_sum(p, neighbors, inverse_square);
  bool sensed_target = false;
  for (const auto& t : targets) {
    const double r = distance(p, t.position);
    if (r > snap.sensing_range()) continue;
    sensed_target = true;
    const auto dir = unit_toward(p, t.position);
    if (dir.is_degenerate) continue;
    v -= (t.demand * inverse_square(r)) * dir.direction;
  }
  return {v, neighbors.empty() && !sensed_target};
}

ForceReport scalar_field_velocity(const Snapshot& snap, std::size_t i, const DemandProfile& profile) {
  const Vec2 p = snap.agents()[i].position;
  const auto neighbors = snap.neighbors_of(i);
  Vec2 v = neighbor_sum(p, neighbors, inverse_square);
  v -= profile.gradient(p).value;
  return {v, neighbors.empty() && v == Vec2{}};
}

ForceReport velocity(const Snapshot& snap, std::size_t i, std::span<const TargetSite> targets,
                     const DynamicsConfig& cfg, const DemandProfile& profile) {
  if (const auto* sc = std::get_if<SignalCoverageLaw>(&cfg.law)) {
    return signal_coverage_velocity(snap, i, targets, *sc);
  }
  if (std::holds_alternative<ElectrostaticLaw>(cfg.law)) {
    return electrostatic_velocity(snap, i, targets);
  }
  return scalar_field_velocity(snap, i, profile);
}

Vec2 apply_step(Vec2 p, const ForceReport& report, const DynamicsConfig& cfg,
                const DemandProfile& profile, RngStream& rng) {
  Vec2 candidate = p;
  const double len = report.v.norm();
  if (len > 0.0 && std::isfinite(len)) candidate -= (cfg.delta / len) * report.v;
  if (cfg.noise_enabled && cfg.Delta > cfg.delta) candidate += rng.next_in_disk(cfg.Delta - cfg.delta);
  if (!candidate.finite() || !profile.in_support(candidate)) return p;
  return candidate;
}

}  // namespace swarm
