#pragma once

#include <variant>
#include <vector>

#include "swarm/geometry.hpp"
#include "swarm/signal.hpp"

namespace swarm {

/// Distances below this are clamped in the 1/r electrostatic terms.
inline constexpr double kMinElectrostaticDistance = 1e-6;

/// Phi = baseline + sum_k demand_k * f_k(|p - c_k|).
struct SignalSumProfile {
  std::vector<Vec2> centers;
  std::vector<SignalFunction> signals;
  std::vector<double> demands;
};

/// Phi = baseline + a x + b y.
struct LinearFieldProfile {
  double a = 0.0;
  double b = 0.0;
};

/// Phi = baseline + c exp(-lambda |p - center|^2).
struct ExponentialFieldProfile {
  double c = 1.0;
  double lambda = 1.0;
  Vec2 center;
};

/// Phi = sum_k demand_k / |p - c_k| over centers within the sensing range.
struct ElectrostaticProfile {
  std::vector<Vec2> centers;
  std::vector<double> demands;
  double sensing_range = 0.0;
};

using ProfileKind =
    std::variant<SignalSumProfile, LinearFieldProfile, ExponentialFieldProfile, ElectrostaticProfile>;

struct PhiGradient {
  Vec2 value;
  bool on_boundary = false;
};

/// Demand profile: zero outside the region, kind-specific inside. Immutable once built.
class DemandProfile {
 public:
  /// Validates demands >= 1 and, for compact signals, that each signal disk lies in the region.
  static DemandProfile signal_sum(Region region, SignalSumProfile kind, double baseline = 1.0);
  static DemandProfile linear(Region region, double a, double b, double baseline = 0.0);
  static DemandProfile exponential(Region region, double c, double lambda, Vec2 center,
                                   double baseline = 0.0);
  static DemandProfile electrostatic(Region region, ElectrostaticProfile kind);

  const Region& region() const { return region_; }
  double baseline() const { return baseline_; }
  const ProfileKind& kind() const { return kind_; }

  double value(Vec2 p) const;
  /// Analytic gradient of the interior expression; zero with on_boundary set when p is not
  /// strictly inside the region.
  PhiGradient gradient(Vec2 p) const;
  bool in_support(Vec2 p) const { return region_.contains(p); }

 private:
  DemandProfile(Region region, double baseline, ProfileKind kind)
      : region_(region), baseline_(baseline), kind_(std::move(kind)) {}

  double interior_value(Vec2 p) const;

  Region region_;
  double baseline_ = 0.0;
  ProfileKind kind_;
};

inline double phi_value(const DemandProfile& profile, Vec2 p) { return profile.value(p); }
inline PhiGradient phi_gradient(const DemandProfile& profile, Vec2 p) { return profile.gradient(p); }
inline bool in_support(const DemandProfile& profile, Vec2 p) { return profile.in_support(p); }

}  // namespace swarm
