#pragma once

#include <cstddef>
#include <string>

#include "swarm/engine.hpp"
#include "swarm/metrics.hpp"

namespace swarm {

/// Frame layout; width and height are at least 64 pixels.
struct FrameSpec {
  std::size_t width = 512;
  std::size_t height = 512;
  int glyph_radius = 2;
  bool sensing_disk = true;
  /// Value mapped to the ramp's terminal color; <= 0 means the field's own maximum.
  double scale = 0.0;
};

/// Scalar underlay for frames: Psi for signal coverage, Phi for scalar fields, and
/// sum_k n_k [r <= V_A] for the electrostatic law.
Field2D heat_field(const World& world, std::size_t nx, std::size_t ny);

/// Binary P6 image: white-to-red heat ramp, black agent dots, blue squares on active targets and
/// an optional sensing-range circle around the first agent.
std::string render_frame(const World& world, const Field2D& heat, const FrameSpec& spec);

}  // namespace swarm
