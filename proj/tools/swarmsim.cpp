// swarmsim: command-line runner for swarm scenarios.
//
// Exit codes: 0 success, 1 invalid input (flags, scenario, constraints), 2 runtime failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "swarm/acceptance.hpp"
#include "swarm/errors.hpp"
#include "swarm/render.hpp"
#include "swarm/scenario.hpp"

namespace fs = std::filesystem;
using namespace swarm;

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::pair<std::size_t, std::size_t> parse_frame_size(const std::string& text) {
  unsigned long w = 0;
  unsigned long h = 0;
  char x = 0;
  std::istringstream in(text);
  if (!(in >> w >> x >> h) || (x != 'x' && x != 'X') || !in.eof() || w < 64 || h < 64) {
    throw ConfigError("--frame-size must look like WxH with W, H >= 64");
  }
  return {w, h};
}

/// Writes a P6 frame every `every` steps, normalized by the heat maximum at the first frame.
class FrameWriter : public RunObserver {
 public:
  FrameWriter(fs::path dir, long long every, FrameSpec spec) : dir_(std::move(dir)), every_(every), spec_(spec) {}

  void on_state(const World& world) override {
    if (world.step() % every_ != 0) return;
    const Field2D heat = heat_field(world, std::max<std::size_t>(1, spec_.width / 2),
                                    std::max<std::size_t>(1, spec_.height / 2));
    if (!scale_) scale_ = heat.max_value();
    FrameSpec spec = spec_;
    spec.scale = *scale_;
    char name[32];
    std::snprintf(name, sizeof name, "frame_%08lld.ppm", world.step());
    auto out = open_out(dir_ / name);
    const std::string bytes = render_frame(world, heat, spec);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw RuntimeError("failed writing frame at step " + std::to_string(world.step()));
  }

 private:
  fs::path dir_;
  long long every_;
  FrameSpec spec_;
  std::optional<double> scale_;
};

struct RunArgs {
  std::string scenario;
  std::string resume;
  std::string save_state;
  long long steps = 0;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  long long metrics_every = 10;
  long long frames_every = 0;
  std::string frame_size = "512x512";
};

int cmd_run(const RunArgs& args) {
  if (args.scenario.empty() == args.resume.empty()) {
    throw ConfigError("run needs exactly one of --scenario or --resume");
  }
  if (args.steps < 0) throw ConfigError("--steps must be non-negative");
  if (args.metrics_every < 0 || args.frames_every < 0) throw ConfigError("intervals must be non-negative");
  const auto [fw, fh] = parse_frame_size(args.frame_size);

  std::optional<Scenario> scenario;
  std::optional<World> world;
  if (!args.resume.empty()) {
    if (args.seed) throw ConfigError("--seed cannot change a resumed run");
    auto [s, w] = load_state(read_file(args.resume));
    scenario = std::move(s);
    world.emplace(std::move(w));
  } else {
    scenario = load_scenario_file(args.scenario);
    if (args.seed) scenario->seed = *args.seed;
    world.emplace(build_world(*scenario));
  }

  const fs::path dir(args.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw RuntimeError("cannot create output directory '" + dir.string() + "': " + ec.message());
  {
    auto out = open_out(dir / "scenario.json");
    out << serialize_scenario(*scenario);
  }
  auto errors = open_out(dir / "errors.csv");
  auto trajectory = open_out(dir / "trajectory.csv");
  auto events = open_out(dir / "events.csv");
  CsvSink sink(&errors, &trajectory, &events);
  std::vector<RunObserver*> observers{&sink};
  std::unique_ptr<FrameWriter> frames;
  if (args.frames_every > 0) {
    fs::create_directories(dir / "frames", ec);
    if (ec) throw RuntimeError("cannot create frames directory: " + ec.message());
    frames = std::make_unique<FrameWriter>(dir / "frames", args.frames_every, FrameSpec{fw, fh, 2, true, 0.0});
    observers.push_back(frames.get());
  }

  const RunSummary summary = run(*world, args.steps, args.metrics_every, observers);

  nlohmann::ordered_json doc;
  doc["scenario"] = scenario->name;
  doc["seed"] = scenario->seed;
  doc["steps"] = args.steps;
  doc["final_step"] = summary.final_step;
  doc["final_G"] = summary.final_G;
  doc["samples"] = summary.samples;
  doc["agent_count"] = summary.agent_count;
  doc["noise_sampling"] = scenario->noise_sampling;
  auto& targets = doc["targets"] = nlohmann::ordered_json::array();
  for (const TargetStatus& t : summary.targets) {
    targets.push_back({{"id", t.id},
                       {"demand", t.demand},
                       {"count", t.count},
                       {"active", t.active},
                       {"completed_step", t.completed_step}});
  }
  auto out = open_out(dir / "summary.json");
  out << doc.dump(2) << '\n';
  if (!args.save_state.empty()) {
    auto state = open_out(args.save_state);
    state << swarm::save_state(*scenario, *world);
  }
  for (std::ofstream* f : {&errors, &trajectory, &events, &out}) {
    f->flush();
    if (!*f) throw RuntimeError("failed flushing outputs at step " + std::to_string(world->step()));
  }
  return 0;
}

struct KernelArgs {
  double lambda = 1.0;
  std::string cutoff;
  std::string out;
  double grid_step = 0.0;
  int resolution = 512;
  double truncation = 0.0;
};

int cmd_derive_kernel(const KernelArgs& args) {
  double cutoff = kInfinity;
  if (args.cutoff != "none") {
    try {
      std::size_t used = 0;
      cutoff = std::stod(args.cutoff, &used);
      if (used != args.cutoff.size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw ConfigError("--cutoff must be a number or 'none'");
    }
    if (!(cutoff > 0.0)) throw ConfigError("--cutoff must be positive");
  }
  if (!(args.lambda > 0.0)) throw ConfigError("--lambda must be positive");
  const SignalFunction f = SignalFunction::gaussian(args.lambda, cutoff);
  KernelOptions opts;
  opts.quad_resolution = args.resolution;
  if (args.truncation > 0.0) {
    opts.truncation_radius = args.truncation;
  } else if (!f.has_compact_support()) {
    opts.truncation_radius = 8.0 / std::sqrt(args.lambda);
  }
  const double span = opts.truncation_radius ? *opts.truncation_radius : 2.0 * cutoff;
  opts.grid_step = args.grid_step > 0.0 ? args.grid_step : span / 512.0;
  const KernelTable table = derive_kernel(f, opts);
  auto out = open_out(args.out);
  write_kernel_cache(out, table);
  out.flush();
  if (!out) throw RuntimeError("failed writing kernel table");
  return 0;
}

int cmd_validate(const std::string& path) {
  const Scenario s = load_scenario_file(path);
  std::cout << "ok: " << s.name << '\n';
  return 0;
}

int cmd_validate_numerics(const std::vector<int>& ids) {
  bool all = true;
  for (int id : ids.empty() ? acceptance::criterion_ids() : ids) {
    const auto r = acceptance::run_criterion(id);
    std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name << "): " << r.detail
              << std::endl;
    all = all && r.passed;
  }
  return all ? 0 : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate oblivious agent swarms covering a demand profile."};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a scenario and write CSV, summary and frame outputs.");
  run->add_option("--scenario", run_args.scenario, "Scenario JSON file");
  run->add_option("--resume", run_args.resume, "Continue from a saved state instead of a scenario");
  run->add_option("--steps", run_args.steps, "Number of steps to simulate")->required();
  run->add_option("--seed", run_args.seed, "Override the scenario seed");
  run->add_option("--out", run_args.out, "Output directory")->capture_default_str();
  run->add_option("--metrics-every", run_args.metrics_every, "Sample G and positions every K steps (0: never)")
      ->capture_default_str();
  run->add_option("--frames-every", run_args.frames_every, "Write a P6 frame every K steps (0: never)")
      ->capture_default_str();
  run->add_option("--frame-size", run_args.frame_size, "Frame size WxH")->capture_default_str();
  run->add_option("--save-state", run_args.save_state, "Write a resumable state file after the run");

  KernelArgs kernel_args;
  auto* kernel = app.add_subcommand("derive-kernel", "Tabulate the interaction kernel of a Gaussian signal.");
  kernel->add_option("--lambda", kernel_args.lambda, "Gaussian decay rate")->required();
  kernel->add_option("--cutoff", kernel_args.cutoff, "Signal cutoff V, or 'none'")->required();
  kernel->add_option("--out", kernel_args.out, "Output table file")->required();
  kernel->add_option("--grid-step", kernel_args.grid_step, "Node spacing (default: table span / 512)");
  kernel->add_option("--resolution", kernel_args.resolution, "Quadrature points per axis")->capture_default_str();
  kernel->add_option("--truncation", kernel_args.truncation, "Table radius for infinite support");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Parse and check a scenario without running it.");
  validate->add_option("--scenario", validate_path, "Scenario JSON file")->required();

  std::vector<int> criteria;
  auto* numerics = app.add_subcommand("validate-numerics", "");
  numerics->group("");
  numerics->add_option("--criterion", criteria, "Acceptance criteria to run (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    if (*run) return cmd_run(run_args);
    if (*kernel) return cmd_derive_kernel(kernel_args);
    if (*validate) return cmd_validate(validate_path);
    if (*numerics) return cmd_validate_numerics(criteria);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
