#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "swarm/demand.hpp"
#include "swarm/geometry.hpp"
#include "swarm/signal.hpp"

namespace swarm {

/// Uniform cell-centered sampling of a box.
struct MetricsGrid {
  Region bounds;
  std::size_t nx = 0;
  std::size_t ny = 0;

  double dx() const { return bounds.width() / static_cast<double>(nx); }
  double dy() const { return bounds.height() / static_cast<double>(ny); }
  double cell_area() const { return dx() * dy(); }
  Vec2 cell_center(std::size_t ix, std::size_t iy) const {
    return {bounds.min.x + (static_cast<double>(ix) + 0.5) * dx(),
            bounds.min.y + (static_cast<double>(iy) + 0.5) * dy()};
  }
};

/// Grid over the region padded by max(signal support radius, V_A).
MetricsGrid make_metrics_grid(const Region& region, const SignalFunction& signal, double sensing_range,
                              std::size_t nx, std::size_t ny);

/// Row-major (iy * nx + ix) scalar samples over a grid.
struct Field2D {
  MetricsGrid grid;
  std::vector<double> values;

  double at(std::size_t ix, std::size_t iy) const { return values[iy * grid.nx + ix]; }
  double max_value() const;
};

struct ErrorSample {
  long long step = 0;
  double G = 0.0;
  std::string law;
};

/// Psi = (Phi - sum_i f(|x - p_i|))^2 at every cell center.
Field2D psi_field(const DemandProfile& profile, std::span<const Vec2> positions,
                  const SignalFunction& signal, const MetricsGrid& grid);

/// Midpoint-rule integral of Psi over the grid.
double total_error(const DemandProfile& profile, std::span<const Vec2> positions,
                   const SignalFunction& signal, const MetricsGrid& grid);

using PairPotential = std::function<double(double)>;

/// (1/2) sum_{i != j} H(r_ij) - sum_i Phi(p_i).
double ar_total_error(std::span<const Vec2> positions, const DemandProfile& profile,
                      const PairPotential& H);

/// Exact gradient of ar_total_error with respect to agent i, given dH/dr:
/// -sum_{j != i} H'(r_ij) e_{i->j} - grad Phi(p_i).
Vec2 ar_gradient(std::span<const Vec2> positions, std::size_t i, const DemandProfile& profile,
                 const PairPotential& dH);

/// H(r) = 1/r for r <= V_A (r clamped below), 0 beyond: the repulsive Coulomb pair energy.
PairPotential coulomb_pair_potential(double sensing_range);

/// Fixed-order pairwise summation; bit-stable for a given input order.
double pairwise_sum(std::span<const double> values);

}  // namespace swarm
