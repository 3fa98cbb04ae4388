#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swarm/scenario.hpp"

namespace swarm::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

std::vector<int> criterion_ids();

/// Runs one criterion at its stated tolerances; throws ConfigError for an unknown id.
CriterionResult run_criterion(int id);

/// Electrostatic target assignment: 60 agents from the center, five random targets of demand 35.
Scenario assignment_scenario(std::uint64_t seed);
/// Disappearing targets: 50 agents from the center, targets of total demand 52.
Scenario completion_scenario(std::uint64_t seed);
/// One center of demand 1 and 30 uniform agents, Gaussian signals of the given lambda, noise off.
Scenario concentration_scenario(std::uint64_t seed, double lambda);
Scenario linear_field_scenario(std::uint64_t seed);
Scenario exponential_field_scenario(std::uint64_t seed);

/// Every active target has at least its demand within the completion radius.
bool all_targets_satisfied(const World& world);

double mean_distance_to(const World& world, Vec2 point);
Vec2 centroid(const World& world);

}  // namespace swarm::acceptance
