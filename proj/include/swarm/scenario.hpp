#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swarm/engine.hpp"

namespace swarm {

enum class InitMode { point, uniform, explicit_list };
enum class LawKind { signal_coverage, electrostatic, scalar_field };
enum class FieldKind { linear, exponential };
enum class CutoffKind { half_sensing, none, value };

struct SignalSpec {
  std::string shape = "gaussian";  // "gaussian" or "tabulated"
  double lambda = 1.0;
  std::vector<std::pair<double, double>> samples;
  friend bool operator==(const SignalSpec&, const SignalSpec&) = default;
};

struct FieldSpec {
  FieldKind kind = FieldKind::linear;
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
  double lambda = 1.0;
  Vec2 center;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

struct TargetSpec {
  Vec2 position;
  int demand = 1;
  std::optional<double> lambda;  // own Gaussian signal; the agents' signal otherwise
  friend bool operator==(const TargetSpec&, const TargetSpec&) = default;
};

struct RandomTargetsSpec {
  std::vector<int> demands;
  double margin = 0.0;
  friend bool operator==(const RandomTargetsSpec&, const RandomTargetsSpec&) = default;
};

/// A fully materialized run description: every default is explicit after load_scenario.
struct Scenario {
  std::string name = "unnamed";
  Region region;

  std::size_t agent_count = 0;
  InitMode init = InitMode::uniform;
  Vec2 init_point;
  std::vector<Vec2> init_positions;

  double sensing_range = 0.0;
  double delta = 0.0;
  double Delta = 0.0;
  bool noise = true;
  std::string noise_sampling = "disk_uniform";

  LawKind law = LawKind::signal_coverage;
  SignalSpec signal;
  CutoffKind cutoff = CutoffKind::half_sensing;
  double cutoff_value = 0.0;  // V when cutoff == value
  bool hard_cutoff = false;
  std::optional<double> kernel_truncation;
  double kernel_grid_step = 0.0;
  int quad_resolution = 512;
  FieldSpec field;

  double baseline = 0.0;
  std::vector<TargetSpec> targets;
  std::optional<RandomTargetsSpec> random_targets;
  double completion_radius = 0.0;
  bool targets_disappear = false;
  std::uint64_t seed = 0;
  std::size_t grid_nx = 512;
  std::size_t grid_ny = 512;

  /// Signal cutoff V implied by the cutoff convention (kInfinity for none).
  double signal_cutoff() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parses and validates a JSON scenario, materializing defaults. Throws ConfigError naming the
/// offending key or constraint.
Scenario load_scenario(const std::string& text);
Scenario load_scenario_file(const std::string& path);

/// Re-checks every constraint; load_scenario calls this.
void validate_scenario(const Scenario& s);

/// Canonical JSON text (2-space indent) that load_scenario maps back to an equal Scenario.
std::string serialize_scenario(const Scenario& s);

/// The agents' signal function.
SignalFunction agent_signal(const Scenario& s);

/// Builds the initial world, deriving kernels through a process-wide cache.
World build_world(const Scenario& s);

/// JSON snapshot of a world: its scenario plus step, agent positions and target flags.
std::string save_state(const Scenario& s, const World& world);
/// Rebuilds the world from a snapshot; the returned scenario is the embedded one.
std::pair<Scenario, World> load_state(const std::string& text);

}  // namespace swarm
