#include "swarm/engine.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_set>

#include "swarm/errors.hpp"
#include "swarm/parallel.hpp"

namespace swarm {

std::string to_string(EventKind kind) {
  switch (kind) {
    case EventKind::target_completed:
      return "target_completed";
  }
  return "unknown";
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

bool law_matches(const ForceLaw& law, const ProfileSpec& spec) {
  if (std::holds_alternative<SignalCoverageLaw>(law)) {
    return std::holds_alternative<SignalCoverageProfileSpec>(spec);
  }
  if (std::holds_alternative<ElectrostaticLaw>(law)) {
    return std::holds_alternative<ElectrostaticProfileSpec>(spec);
  }
  return std::holds_alternative<LinearFieldSpec>(spec) || std::holds_alternative<ExponentialFieldSpec>(spec);
}

std::string law_name(const ForceLaw& law) {
  if (std::holds_alternative<SignalCoverageLaw>(law)) return "signal_coverage";
  if (std::holds_alternative<ElectrostaticLaw>(law)) return "electrostatic";
  return "scalar_field";
}

}  // namespace

World::World(Region region, std::vector<Agent> agents, std::vector<Target> targets, ProfileSpec profile_spec,
             DynamicsConfig dynamics, double completion_radius, bool targets_disappear, std::uint64_t seed,
             std::size_t grid_nx, std::size_t grid_ny)
    : region_(region),
      agents_(std::move(agents)),
      targets_(std::move(targets)),
      profile_spec_(std::move(profile_spec)),
      profile_(DemandProfile::linear(region, 0.0, 0.0)),
      dynamics_(std::move(dynamics)),
      completion_radius_(completion_radius),
      targets_disappear_(targets_disappear),
      seed_(seed),
      grid_nx_(grid_nx),
      grid_ny_(grid_ny) {
  dynamics_.validate();
  if (!law_matches(dynamics_.law, profile_spec_)) {
    throw ConfigError("force law does not match the demand profile kind");
  }
  if (!(completion_radius_ > 0.0)) throw ConfigError("completion radius must be positive");
  if (grid_nx_ == 0 || grid_ny_ == 0) throw ConfigError("metrics grid resolution must be positive");
  for (std::size_t k = 0; k < targets_.size(); ++k) {
    const Target& t = targets_[k];
    if (t.demand < 1) throw ConfigError("target " + std::to_string(k) + " demand must be >= 1");
    if (!region_.contains(t.position)) {
      throw ConfigError("target " + std::to_string(k) + " lies outside the region");
    }
  }
  if (const auto* sc = std::get_if<SignalCoverageLaw>(&dynamics_.law)) {
    if (sc->target_kernels.size() != targets_.size()) {
      throw ConfigError("signal coverage needs one target kernel per target");
    }
  }
  validate_agents();
  rebuild_profile();
}

void World::validate_agents() const {
  std::unordered_set<AgentId> seen;
  for (const Agent& a : agents_) {
    if (!seen.insert(a.id).second) throw ConfigError("duplicate agent id " + std::to_string(a.id));
    if (!a.position.finite() || !region_.contains(a.position)) {
      throw ConfigError("agent " + std::to_string(a.id) + " starts outside the region at " + to_string(a.position));
    }
  }
}

void World::rebuild_profile() {
  std::vector<Vec2> centers;
  std::vector<double> demands;
  std::vector<SignalFunction> signals;
  const auto* sc = std::get_if<SignalCoverageProfileSpec>(&profile_spec_);
  for (const Target& t : targets_) {
    if (!t.active) continue;
    centers.push_back(t.position);
    demands.push_back(t.demand);
    if (sc) signals.push_back(t.signal.value_or(sc->agent_signal));
  }
  if (sc) {
    profile_ = DemandProfile::signal_sum(region_, {std::move(centers), std::move(signals), std::move(demands)},
                                         sc->baseline);
  } else if (std::holds_alternative<ElectrostaticProfileSpec>(profile_spec_)) {
    profile_ = DemandProfile::electrostatic(
        region_, {std::move(centers), std::move(demands), dynamics_.sensing_range});
  } else if (const auto* lin = std::get_if<LinearFieldSpec>(&profile_spec_)) {
    profile_ = DemandProfile::linear(region_, lin->a, lin->b, lin->baseline);
  } else {
    const auto& ex = std::get<ExponentialFieldSpec>(profile_spec_);
    profile_ = DemandProfile::exponential(region_, ex.c, ex.lambda, ex.center, ex.baseline);
  }
}

std::vector<Vec2> World::positions() const {
  std::vector<Vec2> out;
  out.reserve(agents_.size());
  for (const Agent& a : agents_) out.push_back(a.position);
  return out;
}

std::vector<TargetSite> World::active_sites() const {
  std::vector<TargetSite> out;
  // Scalar fields carry no point targets.
  if (std::holds_alternative<ScalarFieldLaw>(dynamics_.law)) return out;
  for (std::size_t k = 0; k < targets_.size(); ++k) {
    if (!targets_[k].active) continue;
    out.push_back({targets_[k].position, static_cast<double>(targets_[k].demand), k});
  }
  return out;
}

std::size_t World::count_near_target(std::size_t index) const {
  const Vec2 c = targets_.at(index).position;
  std::size_t n = 0;
  for (const Agent& a : agents_) {
    if (distance(a.position, c) <= completion_radius_) ++n;
  }
  return n;
}

std::optional<MetricsGrid> World::metrics_grid() const {
  const auto* sc = std::get_if<SignalCoverageProfileSpec>(&profile_spec_);
  if (!sc) return std::nullopt;
  return make_metrics_grid(region_, sc->agent_signal, dynamics_.sensing_range, grid_nx_, grid_ny_);
}

void World::remove_agents(std::span<const AgentId> ids) {
  const std::unordered_set<AgentId> drop(ids.begin(), ids.end());
  std::erase_if(agents_, [&](const Agent& a) { return drop.contains(a.id); });
}

void World::restore(long long step, std::vector<Agent> agents, const std::vector<Target>& targets) {
  if (step < 0) throw ConfigError("saved step must be non-negative");
  if (targets.size() != targets_.size()) throw ConfigError("saved state has a different target count");
  std::swap(agents_, agents);
  try {
    validate_agents();
  } catch (...) {
    std::swap(agents_, agents);
    throw;
  }
  for (std::size_t k = 0; k < targets_.size(); ++k) {
    targets_[k].active = targets[k].active;
    targets_[k].completed_step = targets[k].completed_step;
  }
  step_ = step;
  rebuild_profile();
}

std::vector<Event> step_world(World& world) {
  std::vector<IndexedPoint> points;
  points.reserve(world.agents_.size());
  for (const Agent& a : world.agents_) points.push_back({a.id, a.position});
  const Snapshot snap(std::move(points), world.dynamics_.sensing_range);
  const auto sites = world.active_sites();

  std::vector<Vec2> next(world.agents_.size());
  parallel_for(world.agents_.size(), [&](std::size_t i) {
    const ForceReport report = velocity(snap, i, sites, world.dynamics_, world.profile_);
    auto rng = RngStream::for_step(world.seed_, world.agents_[i].id, static_cast<std::uint64_t>(world.step_));
    next[i] = apply_step(world.agents_[i].position, report, world.dynamics_, world.profile_, rng);
  });
  for (std::size_t i = 0; i < next.size(); ++i) world.agents_[i].position = next[i];
  ++world.step_;
  if (!world.targets_disappear_) return {};
  return check_targets(world);
}

std::vector<Event> check_targets(World& world) {
  std::vector<Event> events;
  for (std::size_t k = 0; k < world.targets_.size(); ++k) {
    const Target& t = world.targets_[k];
    if (!t.active) continue;
    const std::size_t count = world.count_near_target(k);
    if (count >= static_cast<std::size_t>(t.demand)) {
      events.push_back({world.step_, EventKind::target_completed, t.id, count});
    }
  }
  // All completions are decided on the same positions, then applied together.
  for (const Event& e : events) {
    auto it = std::find_if(world.targets_.begin(), world.targets_.end(),
                           [&](const Target& t) { return t.id == e.target_id; });
    it->completed_step = e.step;
    it->active = false;
  }
  if (!events.empty()) world.rebuild_profile();
  return events;
}

ErrorSample measure_error(const World& world) {
  ErrorSample sample{world.step(), 0.0, law_name(world.dynamics().law)};
  const auto positions = world.positions();
  if (const auto grid = world.metrics_grid()) {
    const auto& sc = std::get<SignalCoverageProfileSpec>(world.profile_spec());
    sample.G = total_error(world.profile(), positions, sc.agent_signal, *grid);
  } else {
    sample.G = ar_total_error(positions, world.profile(), coulomb_pair_potential(world.sensing_range()));
  }
  return sample;
}

CsvSink::CsvSink(std::ostream* errors, std::ostream* trajectory, std::ostream* events)
    : errors_(errors), trajectory_(trajectory), events_(events) {
  if (errors_) *errors_ << "step,G\n";
  if (trajectory_) *trajectory_ << "step,agent_id,x,y\n";
  if (events_) *events_ << "step,target_id,kind,count\n";
  check(errors_, 0, "errors");
  check(trajectory_, 0, "trajectory");
  check(events_, 0, "events");
}

void CsvSink::check(std::ostream* os, long long step, const char* what) const {
  if (os && !*os) {
    throw RuntimeError(std::string("failed writing ") + what + " output at step " + std::to_string(step));
  }
}

void CsvSink::on_sample(const World& world, const ErrorSample& sample) {
  if (errors_) {
    *errors_ << sample.step << ',' << format_number(sample.G) << '\n';
    check(errors_, sample.step, "errors");
  }
  if (trajectory_) {
    for (const Agent& a : world.agents()) {
      *trajectory_ << sample.step << ',' << a.id << ',' << format_number(a.position.x) << ','
                   << format_number(a.position.y) << '\n';
    }
    check(trajectory_, sample.step, "trajectory");
  }
}

void CsvSink::on_event(const World&, const Event& event) {
  if (!events_) return;
  *events_ << event.step << ',' << event.target_id << ',' << to_string(event.kind) << ',' << event.count
           << '\n';
  check(events_, event.step, "events");
}

RunSummary summarize(const World& world) {
  RunSummary s;
  s.final_step = world.step();
  s.agent_count = world.agents().size();
  for (std::size_t k = 0; k < world.targets().size(); ++k) {
    const Target& t = world.targets()[k];
    s.targets.push_back({t.id, t.demand, world.count_near_target(k), t.active, t.completed_step});
  }
  return s;
}

RunSummary run(World& world, long long steps, long long metrics_every, std::span<RunObserver* const> observers) {
  if (steps < 0) throw ConfigError("step count must be non-negative");
  if (metrics_every < 0) throw ConfigError("metrics interval must be non-negative");
  std::size_t samples = 0;
  double last_G = 0.0;
  long long last_sample_step = -1;

  auto sample = [&] {
    const ErrorSample s = measure_error(world);
    for (RunObserver* o : observers) o->on_sample(world, s);
    last_G = s.G;
    last_sample_step = s.step;
    ++samples;
  };
  auto due = [&] { return metrics_every > 0 && world.step() % metrics_every == 0; };

  for (RunObserver* o : observers) o->on_state(world);
  if (due()) sample();
  for (long long n = 0; n < steps; ++n) {
    for (const Event& e : step_world(world)) {
      for (RunObserver* o : observers) o->on_event(world, e);
    }
    for (RunObserver* o : observers) o->on_state(world);
    if (due()) sample();
  }

  RunSummary summary = summarize(world);
  summary.samples = samples;
  summary.final_G = last_sample_step == world.step() ? last_G : measure_error(world).G;
  return summary;
}

}  // namespace swarm
