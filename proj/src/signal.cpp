#include "swarm/signal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "swarm/errors.hpp"
#include "swarm/parallel.hpp"

namespace swarm {

SignalFunction SignalFunction::gaussian(double lambda, double cutoff) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("gaussian signal requires lambda > 0");
  }
  if (!(cutoff >= 0.0)) throw ConfigError("signal cutoff must be >= 0");
  SignalFunction f;
  f.shape_ = Shape::gaussian;
  f.lambda_ = lambda;
  f.cutoff_ = cutoff;
  return f;
}

SignalFunction SignalFunction::tabulated(std::vector<std::pair<double, double>> samples,
                                         double cutoff) {
  if (samples.size() < 2) throw ConfigError("tabulated signal needs at least two samples");
  if (samples.front().first != 0.0) throw ConfigError("tabulated signal must start at r = 0");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [r, v] = samples[i];
    if (!std::isfinite(r) || !std::isfinite(v) || v < 0.0) {
      throw ConfigError("tabulated signal samples must be finite with value >= 0");
    }
    if (i > 0 && !(r > samples[i - 1].first)) {
      throw ConfigError("tabulated signal radii must be strictly increasing");
    }
  }
  if (!(cutoff >= 0.0)) throw ConfigError("signal cutoff must be >= 0");

  SignalFunction f;
  f.shape_ = Shape::tabulated;
  f.cutoff_ = std::min(cutoff, samples.back().first);
  f.samples_ = std::move(samples);

  // Central differences; the radial profile is flat at the origin by symmetry.
  const auto& s = f.samples_;
  const std::size_t n = s.size();
  f.sample_slopes_.assign(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    f.sample_slopes_[i] = (s[i + 1].second - s[i - 1].second) / (s[i + 1].first - s[i - 1].first);
  }
  f.sample_slopes_[n - 1] = (s[n - 1].second - s[n - 2].second) / (s[n - 1].first - s[n - 2].first);
  return f;
}

double SignalFunction::interp_value(double r) const {
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), r,
                                   [](double x, const auto& s) { return x < s.first; });
  if (it == samples_.end()) return r == samples_.back().first ? samples_.back().second : 0.0;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double t = (r - lo.first) / (hi.first - lo.first);
  return lo.second + t * (hi.second - lo.second);
}

double SignalFunction::interp_slope(double r) const {
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), r,
                                   [](double x, const auto& s) { return x < s.first; });
  if (it == samples_.end()) return r == samples_.back().first ? sample_slopes_.back() : 0.0;
  const std::size_t i = static_cast<std::size_t>(it - samples_.begin());
  const double t = (r - samples_[i - 1].first) / (samples_[i].first - samples_[i - 1].first);
  return sample_slopes_[i - 1] + t * (sample_slopes_[i] - sample_slopes_[i - 1]);
}

double SignalFunction::value(double r) const {
  if (r < 0.0) throw ContractViolation("signal evaluated at negative radius");
  if (r > cutoff_) return 0.0;
  if (shape_ == Shape::gaussian) return std::exp(-lambda_ * r * r);
  return interp_value(r);
}

double SignalFunction::slope(double r) const {
  if (r < 0.0) throw ContractViolation("signal evaluated at negative radius");
  if (r > cutoff_) return 0.0;
  if (shape_ == Shape::gaussian) return -2.0 * lambda_ * r * std::exp(-lambda_ * r * r);
  return interp_slope(r);
}

double SignalFunction::slope_over_r(double r) const {
  if (r < 0.0) throw ContractViolation("signal evaluated at negative radius");
  if (r > cutoff_) return 0.0;
  if (shape_ == Shape::gaussian) return -2.0 * lambda_ * std::exp(-lambda_ * r * r);
  if (r > 0.0) return interp_slope(r) / r;
  return sample_slopes_[1] / samples_[1].first;
}

double SignalFunction::support_radius() const {
  if (has_compact_support()) return cutoff_;
  // Only the gaussian shape can have infinite support.
  return std::sqrt(-std::log(kNegligibleSignal) / lambda_);
}

double signal_value(const SignalFunction& f, double r) { return f.value(r); }

double KernelTable::lookup(double r) const {
  if (r < 0.0) throw ContractViolation("kernel lookup at negative radius");
  if (values.empty() || r > r_max) return 0.0;
  const double pos = r / step;
  const auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= values.size()) return values.back();
  const double t = pos - static_cast<double>(i);
  if (t == 0.0) return values[i];
  return values[i] + t * (values[i + 1] - values[i]);
}

double kernel_lookup(const KernelTable& table, double r) { return table.lookup(r); }

namespace {

double cross_kernel_at(double r, const SignalFunction& target, const SignalFunction& agent,
                       int n) {
  const double r_t = target.support_radius();
  const double r_a = agent.support_radius();
  const bool clip_t = target.has_compact_support();
  const bool clip_a = agent.has_compact_support();
  // Infinite-support tails are never clipped on the side facing the other center: the integrand's
  // mass sits between 0 and r, so the box grows with r instead of vanishing beyond 2R.
  const double x_lo = clip_t ? std::max(-r_a, r - r_t) : -r_a;
  const double x_hi = clip_a ? std::min(r_a, r + r_t) : r + r_t;
  const double y_half = std::min(r_a, r_t);
  if (!(x_hi > x_lo)) return 0.0;

  const double hx = (x_hi - x_lo) / n;
  const double hy = 2.0 * y_half / n;
  // Integrand is even in y: integrate the upper half and double.
  const int ny = n / 2;
  double total = 0.0;
  for (int j = 0; j < ny; ++j) {
    const double y = (j + 0.5) * hy;
    double row = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = x_lo + (i + 0.5) * hx;
      const double rho = std::sqrt(x * x + y * y);
      if (clip_a && rho > r_a) continue;
      const double s = std::sqrt((x - r) * (x - r) + y * y);
      if (clip_t && s > r_t) continue;
      row += target.value(s) * agent.slope_over_r(rho) * x;
    }
    total += row;
  }
  return -2.0 * total * hx * hy;
}

}  // namespace

KernelTable derive_cross_kernel(const SignalFunction& target, const SignalFunction& agent,
                                const KernelOptions& options) {
  if (!(options.grid_step > 0.0)) throw ConfigError("kernel grid_step must be > 0");
  if (options.quad_resolution < 64) throw ConfigError("kernel quad_resolution must be >= 64");

  double r_max = 0.0;
  if (target.has_compact_support() && agent.has_compact_support()) {
    r_max = target.cutoff() + agent.cutoff();
    if (options.truncation_radius) r_max = std::min(r_max, *options.truncation_radius);
  } else {
    if (!options.truncation_radius) {
      throw ConfigError("infinite-support signal requires a kernel truncation radius");
    }
    r_max = *options.truncation_radius;
  }
  if (options.hard_cutoff) r_max = std::min(r_max, *options.hard_cutoff);
  if (!(r_max > 0.0) || !std::isfinite(r_max)) {
    throw ConfigError("kernel support radius must be positive and finite");
  }

  // Even resolution keeps the y half-grid aligned with the full midpoint grid.
  const int n = options.quad_resolution + (options.quad_resolution % 2);
  const auto intervals = static_cast<std::size_t>(std::ceil(r_max / options.grid_step - 1e-9));
  KernelTable table;
  table.r_max = r_max;
  table.step = r_max / static_cast<double>(std::max<std::size_t>(1, intervals));
  table.values.assign(std::max<std::size_t>(1, intervals) + 1, 0.0);

  parallel_for(
      table.values.size(),
      [&](std::size_t i) {
        // F(0) = 0: the integrand is odd in x at r = 0.
        if (i == 0) return;
        table.values[i] = cross_kernel_at(table.node_radius(i), target, agent, n);
      },
      8);
  return table;
}

KernelTable derive_kernel(const SignalFunction& f, const KernelOptions& options) {
  return derive_cross_kernel(f, f, options);
}

double gaussian_kernel_closed_form(double r, double lambda) {
  return 0.5 * std::numbers::pi * r * std::exp(-0.5 * lambda * r * r);
}

void write_kernel_cache(std::ostream& out, const KernelTable& table) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "kernel v1 %.17g %zu\n", table.r_max, table.node_count());
  out << buf;
  for (std::size_t i = 0; i < table.node_count(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", table.node_radius(i), table.values[i]);
    out << buf;
  }
}

KernelTable read_kernel_cache(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("kernel cache: missing header");
  std::istringstream header(line);
  std::string magic;
  std::string version;
  KernelTable table;
  std::size_t count = 0;
  if (!(header >> magic >> version >> table.r_max >> count) || magic != "kernel" ||
      version != "v1") {
    throw ConfigError("kernel cache: bad header '" + line + "'");
  }
  if (count < 2 || !(table.r_max > 0.0)) throw ConfigError("kernel cache: bad table size");
  table.values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) throw ConfigError("kernel cache: truncated at node " + std::to_string(i));
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError("kernel cache: malformed line '" + line + "'");
    try {
      table.values.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw ConfigError("kernel cache: malformed line '" + line + "'");
    }
  }
  table.step = table.r_max / static_cast<double>(count - 1);
  return table;
}

}  // namespace swarm
