#include "swarm/demand.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swarm/errors.hpp"

namespace swarm {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void require_demands(const std::vector<double>& demands, std::size_t centers) {
  if (demands.size() != centers) throw ConfigError("profile: one demand per center required");
  for (double n : demands) {
    if (!(n >= 1.0) || !std::isfinite(n)) {
      throw ConfigError("profile: every demand must be >= 1");
    }
  }
}

}  // namespace

DemandProfile DemandProfile::signal_sum(Region region, SignalSumProfile kind, double baseline) {
  require_demands(kind.demands, kind.centers.size());
  if (kind.signals.size() != kind.centers.size()) {
    throw ConfigError("profile: one signal per center required");
  }
  for (std::size_t k = 0; k < kind.centers.size(); ++k) {
    const auto& f = kind.signals[k];
    if (f.has_compact_support() && region.inset_distance(kind.centers[k]) < f.cutoff()) {
      throw ConfigError("profile: signal disk of center " + std::to_string(k) +
                        " is not contained in the region");
    }
    if (!region.contains(kind.centers[k])) {
      throw ConfigError("profile: center " + std::to_string(k) + " lies outside the region");
    }
  }
  return DemandProfile(region, baseline, std::move(kind));
}

DemandProfile DemandProfile::linear(Region region, double a, double b, double baseline) {
  return DemandProfile(region, baseline, LinearFieldProfile{a, b});
}

DemandProfile DemandProfile::exponential(Region region, double c, double lambda, Vec2 center,
                                         double baseline) {
  if (!(lambda > 0.0)) throw ConfigError("exponential field requires lambda > 0");
  return DemandProfile(region, baseline, ExponentialFieldProfile{c, lambda, center});
}

DemandProfile DemandProfile::electrostatic(Region region, ElectrostaticProfile kind) {
  require_demands(kind.demands, kind.centers.size());
  if (!(kind.sensing_range > 0.0)) throw ConfigError("electrostatic profile requires V_A > 0");
  return DemandProfile(region, 0.0, std::move(kind));
}

double DemandProfile::interior_value(Vec2 p) const {
  return std::visit(
      Overloaded{
          [&](const SignalSumProfile& k) {
            double sum = 0.0;
            for (std::size_t i = 0; i < k.centers.size(); ++i) {
              sum += k.demands[i] * k.signals[i].value(distance(p, k.centers[i]));
            }
            return sum;
          },
          [&](const LinearFieldProfile& k) { return k.a * p.x + k.b * p.y; },
          [&](const ExponentialFieldProfile& k) {
            return k.c * std::exp(-k.lambda * (p - k.center).norm_sq());
          },
          [&](const ElectrostaticProfile& k) {
            double sum = 0.0;
            for (std::size_t i = 0; i < k.centers.size(); ++i) {
              const double r = distance(p, k.centers[i]);
              if (r <= k.sensing_range) sum += k.demands[i] / std::max(r, kMinElectrostaticDistance);
            }
            return sum;
          },
      },
      kind_);
}

double DemandProfile::value(Vec2 p) const {
  if (!region_.contains(p)) return 0.0;
  return baseline_ + interior_value(p);
}

PhiGradient DemandProfile::gradient(Vec2 p) const {
  if (!region_.strictly_contains(p)) return {{0.0, 0.0}, true};
  const Vec2 g = std::visit(
      Overloaded{
          [&](const SignalSumProfile& k) {
            Vec2 sum;
            for (std::size_t i = 0; i < k.centers.size(); ++i) {
              // d/dp f(|p - c|) = f'(r) (p - c) / r
              const double r = distance(p, k.centers[i]);
              sum += (k.demands[i] * k.signals[i].slope_over_r(r)) * (p - k.centers[i]);
            }
            return sum;
          },
          [&](const LinearFieldProfile& k) { return Vec2{k.a, k.b}; },
          [&](const ExponentialFieldProfile& k) {
            const Vec2 d = p - k.center;
            return (-2.0 * k.lambda * k.c * std::exp(-k.lambda * d.norm_sq())) * d;
          },
          [&](const ElectrostaticProfile& k) {
            Vec2 sum;
            for (std::size_t i = 0; i < k.centers.size(); ++i) {
              const double r = distance(p, k.centers[i]);
              if (r > k.sensing_range || r < kMinElectrostaticDistance) continue;
              // grad (1/r) points toward the center with magnitude 1/r^2
              sum += (k.demands[i] / (r * r * r)) * (k.centers[i] - p);
            }
            return sum;
          },
      },
      kind_);
  return {g, false};
}

}  // namespace swarm
