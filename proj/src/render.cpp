#include "swarm/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "swarm/errors.hpp"

namespace swarm {

namespace {

using Rgb = std::array<unsigned char, 3>;

constexpr Rgb kAgentColor{0, 0, 0};
constexpr Rgb kTargetColor{30, 60, 200};
constexpr Rgb kDiskColor{110, 110, 110};

Rgb ramp(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const auto fade = static_cast<unsigned char>(std::lround(255.0 * (1.0 - t)));
  return {static_cast<unsigned char>(std::lround(255.0 - 55.0 * t)), fade, fade};
}

class Canvas {
 public:
  Canvas(std::size_t w, std::size_t h) : w_(w), h_(h), px_(w * h) {}

  void set(long x, long y, Rgb c) {
    if (x < 0 || y < 0 || x >= static_cast<long>(w_) || y >= static_cast<long>(h_)) return;
    px_[static_cast<std::size_t>(y) * w_ + static_cast<std::size_t>(x)] = c;
  }
  void fill_disk(double cx, double cy, double r, Rgb c) {
    for (long y = std::lround(cy - r); y <= std::lround(cy + r); ++y) {
      for (long x = std::lround(cx - r); x <= std::lround(cx + r); ++x) {
        if (std::hypot(x - cx, y - cy) <= r) set(x, y, c);
      }
    }
  }
  void circle(double cx, double cy, double r, Rgb c) {
    const int n = std::max(16, static_cast<int>(8.0 * r));
    for (int k = 0; k < n; ++k) {
      const double a = 2.0 * M_PI * k / n;
      set(std::lround(cx + r * std::cos(a)), std::lround(cy + r * std::sin(a)), c);
    }
  }
  void square(double cx, double cy, long half, Rgb c) {
    const long x0 = std::lround(cx);
    const long y0 = std::lround(cy);
    for (long d = -half; d <= half; ++d) {
      set(x0 + d, y0 - half, c);
      set(x0 + d, y0 + half, c);
      set(x0 - half, y0 + d, c);
      set(x0 + half, y0 + d, c);
    }
  }
  std::vector<Rgb>& pixels() { return px_; }

 private:
  std::size_t w_;
  std::size_t h_;
  std::vector<Rgb> px_;
};

}  // namespace

Field2D heat_field(const World& world, std::size_t nx, std::size_t ny) {
  if (nx == 0 || ny == 0) throw ContractViolation("heat field needs a non-empty grid");
  if (auto grid = world.metrics_grid()) {
    grid->nx = nx;
    grid->ny = ny;
    const auto& sc = std::get<SignalCoverageProfileSpec>(world.profile_spec());
    return psi_field(world.profile(), world.positions(), sc.agent_signal, *grid);
  }
  const MetricsGrid grid{world.region(), nx, ny};
  Field2D field{grid, std::vector<double>(nx * ny, 0.0)};
  const bool electrostatic = std::holds_alternative<ElectrostaticProfileSpec>(world.profile_spec());
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const Vec2 p = grid.cell_center(ix, iy);
      double v = 0.0;
      if (electrostatic) {
        // Phi itself diverges at every center, so show the demand each point can sense.
        for (const Target& t : world.targets()) {
          if (t.active && distance(p, t.position) <= world.sensing_range()) v += t.demand;
        }
      } else {
        v = world.profile().value(p);
      }
      field.values[iy * nx + ix] = v;
    }
  }
  return field;
}

std::string render_frame(const World& world, const Field2D& heat, const FrameSpec& spec) {
  if (spec.width < 64 || spec.height < 64) throw ConfigError("frame size must be at least 64x64");
  if (heat.grid.nx == 0 || heat.grid.ny == 0 || heat.values.size() != heat.grid.nx * heat.grid.ny) {
    throw ContractViolation("render_frame needs a non-empty heat grid");
  }
  const double scale = spec.scale > 0.0 ? spec.scale : heat.max_value();
  const Region& box = heat.grid.bounds;
  const double sx = static_cast<double>(spec.width) / box.width();
  const double sy = static_cast<double>(spec.height) / box.height();
  auto to_px = [&](Vec2 p) { return Vec2{(p.x - box.min.x) * sx, (box.max.y - p.y) * sy}; };

  Canvas canvas(spec.width, spec.height);
  for (std::size_t y = 0; y < spec.height; ++y) {
    // Row 0 is the top of the image, i.e. the largest world y.
    const auto iy = heat.grid.ny - 1 - std::min(heat.grid.ny - 1, y * heat.grid.ny / spec.height);
    for (std::size_t x = 0; x < spec.width; ++x) {
      const auto ix = std::min(heat.grid.nx - 1, x * heat.grid.nx / spec.width);
      const double v = heat.at(ix, iy);
      canvas.set(static_cast<long>(x), static_cast<long>(y), ramp(scale > 0.0 ? v / scale : 0.0));
    }
  }
  for (const Target& t : world.targets()) {
    if (!t.active) continue;
    const Vec2 q = to_px(t.position);
    canvas.square(q.x, q.y, spec.glyph_radius + 3, kTargetColor);
  }
  if (spec.sensing_disk && !world.agents().empty()) {
    const Vec2 q = to_px(world.agents().front().position);
    canvas.circle(q.x, q.y, world.sensing_range() * sx, kDiskColor);
  }
  for (const Agent& a : world.agents()) {
    const Vec2 q = to_px(a.position);
    canvas.fill_disk(q.x, q.y, spec.glyph_radius, kAgentColor);
  }

  std::string out = "P6\n" + std::to_string(spec.width) + " " + std::to_string(spec.height) + "\n255\n";
  out.reserve(out.size() + 3 * spec.width * spec.height);
  for (const Rgb& c : canvas.pixels()) out.append(reinterpret_cast<const char*>(c.data()), 3);
  return out;
}

}  // namespace swarm
