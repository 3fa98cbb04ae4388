#pragma once

#include <cmath>
#include <iosfwd>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace swarm {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Relative level below which an infinite-support signal is treated as zero when an integration
/// domain must be bounded.
inline constexpr double kNegligibleSignal = 1e-20;

/// Radial signal f(r), zero beyond the cutoff V.
class SignalFunction {
 public:
  enum class Shape { gaussian, tabulated };

  /// f(r) = exp(-lambda r^2) on [0, cutoff]. cutoff may be kInfinity.
  static SignalFunction gaussian(double lambda, double cutoff = kInfinity);
  /// Piecewise-linear f through (r, value) samples; samples must start at r = 0 with strictly
  /// increasing radii. The effective cutoff is min(cutoff, last sample radius).
  static SignalFunction tabulated(std::vector<std::pair<double, double>> samples,
                                  double cutoff = kInfinity);

  Shape shape() const { return shape_; }
  double lambda() const { return lambda_; }
  double cutoff() const { return cutoff_; }
  bool has_compact_support() const { return std::isfinite(cutoff_); }
  const std::vector<std::pair<double, double>>& samples() const { return samples_; }

  /// f(r); throws ContractViolation for r < 0.
  double value(double r) const;
  /// df/dr, zero beyond the cutoff (the jump at the cutoff is not represented). Tabulated shapes
  /// interpolate central-difference slopes at the samples, so the slope is continuous.
  double slope(double r) const;
  /// slope(r) / r, finite at r = 0.
  double slope_over_r(double r) const;

  /// Radius beyond which the signal is zero, or negligible for infinite support.
  double support_radius() const;

  friend bool operator==(const SignalFunction&, const SignalFunction&) = default;

 private:
  SignalFunction() = default;
  double interp_value(double r) const;
  double interp_slope(double r) const;

  Shape shape_ = Shape::gaussian;
  double lambda_ = 1.0;
  double cutoff_ = kInfinity;
  std::vector<std::pair<double, double>> samples_;
  std::vector<double> sample_slopes_;
};

double signal_value(const SignalFunction& f, double r);

/// Tabulated interaction kernel F on uniformly spaced nodes over [0, r_max].
struct KernelTable {
  double r_max = 0.0;
  double step = 0.0;
  std::vector<double> values;
  double demand_scale = 1.0;

  std::size_t node_count() const { return values.size(); }
  double node_radius(std::size_t i) const { return static_cast<double>(i) * step; }

  /// Linear interpolation of the table (not including demand_scale); zero beyond r_max.
  double lookup(double r) const;
  /// demand_scale * lookup(r).
  double scaled(double r) const { return demand_scale * lookup(r); }
};

struct KernelOptions {
  double grid_step = 0.0;
  int quad_resolution = 512;
  /// Required when either signal has infinite support.
  std::optional<double> truncation_radius;
  /// Zero the kernel beyond this radius (the crude cutoff for infinite-support signals).
  std::optional<double> hard_cutoff;
};

/// F(r) = -∬ f_target(|(x - r, y)|) f_agent'(|(x, y)|) x / |(x, y)| dx dy by midpoint quadrature.
/// With both arguments equal this is the agent-agent kernel; F >= 0 means attraction of the
/// agent toward the other signal's center.
KernelTable derive_cross_kernel(const SignalFunction& target, const SignalFunction& agent,
                                const KernelOptions& options);

KernelTable derive_kernel(const SignalFunction& f, const KernelOptions& options);

/// Closed-form kernel of the untruncated Gaussian: (pi / 2) r exp(-lambda r^2 / 2).
double gaussian_kernel_closed_form(double r, double lambda);

double kernel_lookup(const KernelTable& table, double r);

/// Text cache: header `kernel v1 <r_max> <node_count>` then `r,value` per node.
void write_kernel_cache(std::ostream& out, const KernelTable& table);
/// Throws ConfigError on malformed input.
KernelTable read_kernel_cache(std::istream& in);

}  // namespace swarm
