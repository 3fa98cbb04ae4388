#pragma once

#include <functional>
#include <span>
#include <vector>

#include "swarm/geometry.hpp"
#include "swarm/signal.hpp"
#include "swarm/spatial_index.hpp"

namespace swarm {

/// Central-difference settings; h > 0.
struct FdSpec {
  double h = 1e-4;
};

using ConfigurationFunctional = std::function<double(std::span<const Vec2>)>;

/// ((G(q + h e_xi) - G(q - h e_xi)) / 2h, same for y_i).
Vec2 finite_diff_gradient(const ConfigurationFunctional& evaluate, std::span<const Vec2> q, std::size_t i,
                          const FdSpec& spec);

/// Midpoint rule on an n x n grid over box; n >= 2.
double brute_force_quadrature(const std::function<double(double, double)>& integrand, const Region& box,
                              int n);

/// The kernel integral at one radius, evaluated directly over [-half_width, half_width]^2 around
/// the agent with no symmetry folding or tabulation.
double brute_force_kernel(const SignalFunction& target, const SignalFunction& agent, double r,
                          double half_width, int n);

/// O(N) scan for points within closed distance r of p, sorted by id.
std::vector<Neighbor> brute_force_neighbors(std::span<const IndexedPoint> points, Vec2 p, double r);

}  // namespace swarm
