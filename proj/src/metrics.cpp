#include "swarm/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "swarm/errors.hpp"
#include "swarm/parallel.hpp"

namespace swarm {

MetricsGrid make_metrics_grid(const Region& region, const SignalFunction& signal, double sensing_range,
                              std::size_t nx, std::size_t ny) {
  if (nx == 0 || ny == 0) throw ConfigError("metrics grid resolution must be positive");
  const double pad = std::max(signal.support_radius(), sensing_range);
  return {region.padded(pad), nx, ny};
}

double Field2D::max_value() const {
  if (values.empty()) return 0.0;
  return *std::max_element(values.begin(), values.end());
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 128;
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

Field2D psi_field(const DemandProfile& profile, std::span<const Vec2> positions,
                  const SignalFunction& signal, const MetricsGrid& grid) {
  if (grid.nx == 0 || grid.ny == 0) throw ContractViolation("psi_field on an empty grid");
  Field2D field{grid, std::vector<double>(grid.nx * grid.ny, 0.0)};

  // Sorted positions make the per-cell sums independent of agent labelling.
  std::vector<Vec2> sorted(positions.begin(), positions.end());
  std::sort(sorted.begin(), sorted.end(),
            [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });

  const double support = signal.support_radius();
  const double dx = grid.dx();
  const double dy = grid.dy();
  const auto nx = static_cast<long long>(grid.nx);

  parallel_for(
      grid.ny,
      [&](std::size_t row) {
        const auto iy = static_cast<long long>(row);
        const double y = grid.bounds.min.y + (static_cast<double>(iy) + 0.5) * dy;
        double* out = field.values.data() + row * grid.nx;
        for (long long ix = 0; ix < nx; ++ix) out[ix] = 0.0;
        for (const Vec2& p : sorted) {
          if (std::abs(y - p.y) > support) continue;
          const auto lo = std::max(0LL, static_cast<long long>(std::floor((p.x - support - grid.bounds.min.x) / dx)));
          const auto hi = std::min(nx - 1, static_cast<long long>(std::ceil((p.x + support - grid.bounds.min.x) / dx)));
          for (long long ix = lo; ix <= hi; ++ix) {
            const double x = grid.bounds.min.x + (static_cast<double>(ix) + 0.5) * dx;
            const double r = std::hypot(x - p.x, y - p.y);
            if (r <= support) out[ix] += signal.value(r);
          }
        }
        for (long long ix = 0; ix < nx; ++ix) {
          const double x = grid.bounds.min.x + (static_cast<double>(ix) + 0.5) * dx;
          const double diff = profile.value({x, y}) - out[ix];
          out[ix] = diff * diff;
        }
      },
      4);
  return field;
}

double total_error(const DemandProfile& profile, std::span<const Vec2> positions,
                   const SignalFunction& signal, const MetricsGrid& grid) {
  const Field2D psi = psi_field(profile, positions, signal, grid);
  return pairwise_sum(psi.values) * grid.cell_area();
}

double ar_total_error(std::span<const Vec2> positions, const DemandProfile& profile,
                      const PairPotential& H) {
  double pair = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      pair += H(distance(positions[i], positions[j]));
    }
  }
  double phi = 0.0;
  for (const Vec2& p : positions) phi += profile.value(p);
  // (1/2) over ordered pairs equals the unordered sum.
  return pair - phi;
}

Vec2 ar_gradient(std::span<const Vec2> positions, std::size_t i, const DemandProfile& profile,
                 const PairPotential& dH) {
  Vec2 g;
  for (std::size_t j = 0; j < positions.size(); ++j) {
    if (j == i) continue;
    const auto dir = unit_toward(positions[i], positions[j]);
    if (dir.is_degenerate) continue;
    g -= dH(distance(positions[i], positions[j])) * dir.direction;
  }
  g -= profile.gradient(positions[i]).value;
  return g;
}

PairPotential coulomb_pair_potential(double sensing_range) {
  return [sensing_range](double r) {
    if (r > sensing_range) return 0.0;
    return 1.0 / std::max(r, kMinElectrostaticDistance);
  };
}

}  // namespace swarm
