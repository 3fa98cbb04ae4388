#pragma once

#include <span>
#include <variant>
#include <vector>

#include "swarm/demand.hpp"
#include "swarm/geometry.hpp"
#include "swarm/random.hpp"
#include "swarm/signal.hpp"
#include "swarm/spatial_index.hpp"

namespace swarm {

/// Pairwise kernels F and per-target kernels F_k (demand folded into demand_scale).
struct SignalCoverageLaw {
  KernelTable kernel;
  std::vector<KernelTable> target_kernels;
};

struct ElectrostaticLaw {};

struct ScalarFieldLaw {};

using ForceLaw = std::variant<SignalCoverageLaw, ElectrostaticLaw, ScalarFieldLaw>;

struct DynamicsConfig {
  ForceLaw law;
  double sensing_range = 0.0;  // V_A
  double delta = 0.0;          // deterministic step length
  double Delta = 0.0;          // per-step motion bound
  bool noise_enabled = true;

  /// Throws ConfigError unless 0 < delta <= Delta and V_A > 0.
  void validate() const;
};

/// The raw descent vector v_i before normalization.
struct ForceReport {
  Vec2 v;
  bool is_isolated = false;
};

/// A target as seen by the force laws.
struct TargetSite {
  Vec2 position;
  double demand = 1.0;
  std::size_t kernel_slot = 0;  // index into SignalCoverageLaw::target_kernels
};

/// Immutable time-t view of all agent positions plus a neighbor index of radius V_A.
class Snapshot {
 public:
  Snapshot(std::vector<IndexedPoint> agents, double sensing_range);

  std::span<const IndexedPoint> agents() const { return agents_; }
  double sensing_range() const { return sensing_range_; }
  const SpatialIndex& index() const { return index_; }

  /// Neighbors of agent slot i within V_A, excluding i itself, sorted by id.
  std::vector<Neighbor> neighbors_of(std::size_t i) const;

 private:
  std::vector<IndexedPoint> agents_;
  double sensing_range_;
  SpatialIndex index_;
};

/// v_i = sum_j F(r_ij) e_ij - sum_k F_k(r_ik) e_ik over neighbors and targets within V_A.
ForceReport signal_coverage_velocity(const Snapshot& snap, std::size_t i,
                                     std::span<const TargetSite> targets,
                                     const SignalCoverageLaw& law);

/// v_i = sum_j e_ij / r_ij^2 - sum_k n_k e_ik / r_ik^2 over neighbors and targets within V_A.
ForceReport electrostatic_velocity(const Snapshot& snap, std::size_t i,
                                   std::span<const TargetSite> targets);

/// v_i = sum_j e_ij / r_ij^2 - grad Phi(p_i).
ForceReport scalar_field_velocity(const Snapshot& snap, std::size_t i, const DemandProfile& profile);

/// Dispatches on cfg.law.
ForceReport velocity(const Snapshot& snap, std::size_t i, std::span<const TargetSite> targets,
                     const DynamicsConfig& cfg, const DemandProfile& profile);

/// One jump: p - delta v/|v| + noise, cancelled entirely if the candidate leaves the support.
Vec2 apply_step(Vec2 p, const ForceReport& report, const DynamicsConfig& cfg,
                const DemandProfile& profile, RngStream& rng);

}  // namespace swarm
