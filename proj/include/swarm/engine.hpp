#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "swarm/demand.hpp"
#include "swarm/dynamics.hpp"
#include "swarm/metrics.hpp"
#include "swarm/signal.hpp"

namespace swarm {

struct Agent {
  AgentId id = 0;
  Vec2 position;
};

struct Target {
  std::size_t id = 0;
  Vec2 position;
  int demand = 1;
  bool active = true;
  /// Own signal shape for non-identical signal coverage; agents' signal otherwise.
  std::optional<SignalFunction> signal;
  long long completed_step = -1;
};

enum class EventKind { target_completed };

struct Event {
  long long step = 0;
  EventKind kind = EventKind::target_completed;
  std::size_t target_id = 0;
  std::size_t count = 0;
};

std::string to_string(EventKind kind);

/// How the demand profile is derived from the world's targets.
struct SignalCoverageProfileSpec {
  SignalFunction agent_signal;
  double baseline = 1.0;
};
struct ElectrostaticProfileSpec {};
struct LinearFieldSpec {
  double a = 0.0;
  double b = 0.0;
  double baseline = 0.0;
};
struct ExponentialFieldSpec {
  double c = 1.0;
  double lambda = 1.0;
  Vec2 center;
  double baseline = 0.0;
};
using ProfileSpec =
    std::variant<SignalCoverageProfileSpec, ElectrostaticProfileSpec, LinearFieldSpec, ExponentialFieldSpec>;

/// Complete simulation state. Agents hold nothing but their position.
class World {
 public:
  World(Region region, std::vector<Agent> agents, std::vector<Target> targets, ProfileSpec profile_spec,
        DynamicsConfig dynamics, double completion_radius, bool targets_disappear, std::uint64_t seed,
        std::size_t grid_nx = 512, std::size_t grid_ny = 512);

  long long step() const { return step_; }
  const Region& region() const { return region_; }
  const std::vector<Agent>& agents() const { return agents_; }
  const std::vector<Target>& targets() const { return targets_; }
  const DemandProfile& profile() const { return profile_; }
  const ProfileSpec& profile_spec() const { return profile_spec_; }
  const DynamicsConfig& dynamics() const { return dynamics_; }
  double sensing_range() const { return dynamics_.sensing_range; }
  double completion_radius() const { return completion_radius_; }
  bool targets_disappear() const { return targets_disappear_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t grid_nx() const { return grid_nx_; }
  std::size_t grid_ny() const { return grid_ny_; }

  std::vector<Vec2> positions() const;
  std::vector<TargetSite> active_sites() const;
  /// Agents within the closed completion radius of target `index`.
  std::size_t count_near_target(std::size_t index) const;
  /// Grid used for squared-error telemetry (signal coverage only).
  std::optional<MetricsGrid> metrics_grid() const;

  /// Removes agents by id; unknown ids are ignored. Remaining agents keep their ids.
  void remove_agents(std::span<const AgentId> ids);

  /// Overwrites dynamic state, e.g. when resuming from a saved snapshot.
  void restore(long long step, std::vector<Agent> agents, const std::vector<Target>& targets);

 private:
  friend std::vector<Event> step_world(World& world);
  friend std::vector<Event> check_targets(World& world);

  void rebuild_profile();
  void validate_agents() const;

  Region region_;
  std::vector<Agent> agents_;
  std::vector<Target> targets_;
  ProfileSpec profile_spec_;
  DemandProfile profile_;
  DynamicsConfig dynamics_;
  double completion_radius_;
  bool targets_disappear_;
  std::uint64_t seed_;
  std::size_t grid_nx_;
  std::size_t grid_ny_;
  long long step_ = 0;
};

/// Advances one synchronous step: snapshot, forces, moves, then check_targets on the new
/// positions when targets disappear.
std::vector<Event> step_world(World& world);

/// Deactivates every active target with at least `demand` agents within the completion radius.
std::vector<Event> check_targets(World& world);

/// Squared error for signal coverage, the pair-potential error otherwise.
ErrorSample measure_error(const World& world);

/// Receives telemetry from run(); all calls happen on the caller's thread.
class RunObserver {
 public:
  virtual ~RunObserver() = default;
  virtual void on_sample(const World&, const ErrorSample&) {}
  virtual void on_event(const World&, const Event&) {}
  /// Called for the initial state and after every step.
  virtual void on_state(const World&) {}
};

/// CSV sinks: errors `step,G`, trajectory `step,agent_id,x,y`, events `step,target_id,kind,count`.
class CsvSink : public RunObserver {
 public:
  CsvSink(std::ostream* errors, std::ostream* trajectory, std::ostream* events);
  void on_sample(const World& world, const ErrorSample& sample) override;
  void on_event(const World& world, const Event& event) override;

 private:
  void check(std::ostream* os, long long step, const char* what) const;

  std::ostream* errors_;
  std::ostream* trajectory_;
  std::ostream* events_;
};

struct TargetStatus {
  std::size_t id = 0;
  int demand = 0;
  std::size_t count = 0;
  bool active = true;
  long long completed_step = -1;
};

struct RunSummary {
  long long final_step = 0;
  double final_G = 0.0;
  std::size_t samples = 0;
  std::size_t agent_count = 0;
  std::vector<TargetStatus> targets;
};

/// Advances `steps` times, sampling error and positions every `metrics_every` steps (including
/// t = 0; 0 disables sampling).
RunSummary run(World& world, long long steps, long long metrics_every,
               std::span<RunObserver* const> observers = {});

RunSummary summarize(const World& world);

/// Writes a decimal number with enough digits to round-trip.
std::string format_number(double v);

}  // namespace swarm
