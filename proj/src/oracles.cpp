#include "swarm/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "swarm/errors.hpp"

namespace swarm {

Vec2 finite_diff_gradient(const ConfigurationFunctional& evaluate, std::span<const Vec2> q, std::size_t i,
                          const FdSpec& spec) {
  if (!(spec.h > 0.0)) throw ConfigError("finite difference step must be positive");
  if (i >= q.size()) throw ContractViolation("finite difference agent index out of range");
  std::vector<Vec2> work(q.begin(), q.end());
  auto partial = [&](Vec2 e) {
    work[i] = q[i] + spec.h * e;
    const double plus = evaluate(work);
    work[i] = q[i] - spec.h * e;
    const double minus = evaluate(work);
    work[i] = q[i];
    return (plus - minus) / (2.0 * spec.h);
  };
  return {partial({1.0, 0.0}), partial({0.0, 1.0})};
}

double brute_force_quadrature(const std::function<double(double, double)>& integrand, const Region& box,
                              int n) {
  if (n < 2) throw ConfigError("quadrature needs n >= 2");
  const double dx = box.width() / n;
  const double dy = box.height() / n;
  double total = 0.0;
  for (int iy = 0; iy < n; ++iy) {
    const double y = box.min.y + (iy + 0.5) * dy;
    double row = 0.0;
    for (int ix = 0; ix < n; ++ix) row += integrand(box.min.x + (ix + 0.5) * dx, y);
    total += row;
  }
  return total * dx * dy;
}

double brute_force_kernel(const SignalFunction& target, const SignalFunction& agent, double r,
                          double half_width, int n) {
  const Region box({-half_width, -half_width}, {half_width, half_width});
  return -brute_force_quadrature(
      [&](double x, double y) {
        const double rho = std::hypot(x, y);
        if (rho == 0.0) return 0.0;
        return target.value(std::hypot(x - r, y)) * agent.slope(rho) * x / rho;
      },
      box, n);
}

std::vector<Neighbor> brute_force_neighbors(std::span<const IndexedPoint> points, Vec2 p, double r) {
  std::vector<Neighbor> out;
  for (const IndexedPoint& q : points) {
    const double d = (q.position - p).norm();
    if (d <= r) out.push_back({q.id, q.position, d});
  }
  std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
  return out;
}

}  // namespace swarm
