#pragma once

#include <cstdint>

#include "swarm/geometry.hpp"

namespace swarm {

/// Independent stream families derived from one scenario seed.
enum class StreamDomain : std::uint64_t {
  step_noise = 1,
  agent_init = 2,
  target_placement = 3,
  agent_removal = 4,
  test = 99,
};

/// Counter-based random stream. Draws depend only on (seed, domain, key, counter),
/// so results never depend on evaluation order or worker count.
class RngStream {
 public:
  RngStream(std::uint64_t seed, StreamDomain domain, std::uint64_t key, std::uint64_t counter);

  /// Stream used for agent `agent_id`'s noise at time step `step`.
  static RngStream for_step(std::uint64_t seed, std::uint64_t agent_id, std::uint64_t step) {
    return RngStream(seed, StreamDomain::step_noise, agent_id, step);
  }

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double next_unit();
  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }
  /// Uniform over the closed disk of the given radius (area-uniform).
  Vec2 next_in_disk(double radius);
  Vec2 next_in_region(const Region& r);

 private:
  std::uint64_t key_;
  std::uint64_t draws_ = 0;
};

std::uint64_t mix64(std::uint64_t z);

}  // namespace swarm
