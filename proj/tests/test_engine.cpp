#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

#include "swarm/engine.hpp"
#include "swarm/errors.hpp"
#include "swarm/random.hpp"

using namespace swarm;

namespace {

const Region kUnit({0, 0}, {1, 1});

DynamicsConfig electrostatic(double V_A, bool noise) {
  return {ElectrostaticLaw{}, V_A, V_A / 50, V_A / 25, noise};
}

std::vector<Agent> agents_at(const std::vector<Vec2>& ps) {
  std::vector<Agent> out;
  for (std::size_t i = 0; i < ps.size(); ++i) out.push_back({static_cast<AgentId>(i), ps[i]});
  return out;
}

World target_world(std::vector<Vec2> ps, std::vector<Target> targets, bool disappear = true) {
  return World(kUnit, agents_at(ps), std::move(targets), ElectrostaticProfileSpec{}, electrostatic(0.3, true), 0.05,
               disappear, 1);
}

World random_world(std::uint64_t seed, std::size_t n, bool noise = true) {
  RngStream rng(seed, StreamDomain::test, 40, 0);
  std::vector<Vec2> ps;
  for (std::size_t i = 0; i < n; ++i) ps.push_back(rng.next_in_region(kUnit));
  std::vector<Target> ts{{0, {0.3, 0.3}, 4}, {1, {0.7, 0.6}, 5}};
  return World(kUnit, agents_at(ps), ts, ElectrostaticProfileSpec{}, electrostatic(0.3, noise), 0.075, true, seed);
}

std::map<AgentId, Vec2> by_id(const World& w) {
  std::map<AgentId, Vec2> out;
  for (const Agent& a : w.agents()) out[a.id] = a.position;
  return out;
}

struct Recorder : RunObserver {
  std::vector<ErrorSample> samples;
  std::vector<Event> events;
  long long states = 0;
  void on_sample(const World&, const ErrorSample& s) override { samples.push_back(s); }
  void on_event(const World&, const Event& e) override { events.push_back(e); }
  void on_state(const World&) override { ++states; }
};

}  // namespace

TEST(World, RejectsInvalidSetups) {
  EXPECT_THROW(target_world({{1.5, 0.5}}, {}), ConfigError);
  EXPECT_THROW(World(kUnit, {{0, {0.5, 0.5}}, {0, {0.2, 0.2}}}, {}, ElectrostaticProfileSpec{}, electrostatic(0.3, true),
                     0.05, false, 0),
               ConfigError);
  EXPECT_THROW(target_world({{0.5, 0.5}}, {{0, {0.5, 0.5}, 0}}), ConfigError);
  EXPECT_THROW(target_world({{0.5, 0.5}}, {{0, {2, 0.5}, 1}}), ConfigError);
  EXPECT_THROW(World(kUnit, {}, {}, LinearFieldSpec{}, electrostatic(0.3, true), 0.05, false, 0), ConfigError);
  EXPECT_THROW(World(kUnit, {}, {}, ElectrostaticProfileSpec{}, electrostatic(0.3, true), 0.0, false, 0), ConfigError);
  EXPECT_THROW(World(kUnit, {}, {}, ElectrostaticProfileSpec{}, {ElectrostaticLaw{}, 0.3, 0.1, 0.05, true}, 0.05,
                     false, 0),
               ConfigError);
}

TEST(StepWorld, DistantIsolatedAgentsStayStill) {
  World w(kUnit, agents_at({{0.1, 0.1}, {0.9, 0.9}}), {}, ElectrostaticProfileSpec{}, electrostatic(0.3, false), 0.05,
          true, 0);
  const auto before = w.positions();
  for (int k = 0; k < 10; ++k) EXPECT_TRUE(step_world(w).empty());
  EXPECT_EQ(w.positions(), before);
  EXPECT_EQ(w.step(), 10);
}

TEST(StepWorld, EvaluationOrderDoesNotMatter) {
  World a = random_world(5, 40);
  RngStream rng(5, StreamDomain::test, 40, 0);
  std::vector<Agent> shuffled = a.agents();
  std::reverse(shuffled.begin(), shuffled.end());
  std::rotate(shuffled.begin(), shuffled.begin() + 7, shuffled.end());
  World b(kUnit, shuffled, a.targets(), ElectrostaticProfileSpec{}, a.dynamics(), a.completion_radius(), true, a.seed());
  for (int k = 0; k < 50; ++k) {
    step_world(a);
    step_world(b);
  }
  EXPECT_EQ(by_id(a), by_id(b));
}

TEST(StepWorld, SameSeedIsBitIdentical) {
  World a = random_world(8, 30);
  World b = random_world(8, 30);
  for (int k = 0; k < 200; ++k) {
    step_world(a);
    step_world(b);
    ASSERT_EQ(a.positions(), b.positions());
  }
}

TEST(StepWorld, TranslationCarriesTrajectories) {
  const Vec2 t{3.25, -1.5};
  const Region moved(kUnit.min + t, kUnit.max + t);
  World a = random_world(2, 20, false);
  std::vector<Agent> shifted = a.agents();
  for (Agent& ag : shifted) ag.position += t;
  std::vector<Target> ts = a.targets();
  for (Target& tg : ts) tg.position += t;
  World b(moved, shifted, ts, ElectrostaticProfileSpec{}, a.dynamics(), a.completion_radius(), true, a.seed());
  for (int k = 0; k < 300; ++k) {
    step_world(a);
    step_world(b);
  }
  for (std::size_t i = 0; i < a.agents().size(); ++i) {
    EXPECT_LT((b.agents()[i].position - t - a.agents()[i].position).norm(), 1e-9);
  }
}

TEST(StepWorld, StepBoundAndContainment) {
  World w = random_world(12, 50);
  const double Delta = w.dynamics().Delta;
  for (int k = 0; k < 2000; ++k) {
    const auto before = w.positions();
    step_world(w);
    const auto after = w.positions();
    for (std::size_t i = 0; i < after.size(); ++i) {
      ASSERT_LE(distance(before[i], after[i]), Delta * (1 + 1e-12));
      ASSERT_TRUE(kUnit.contains(after[i]));
    }
  }
}

TEST(CheckTargets, ExactDemandCompletes) {
  World w = target_world({{0.5, 0.5}, {0.52, 0.5}, {0.5, 0.53}, {0.1, 0.1}}, {{7, {0.5, 0.5}, 3}});
  const auto events = check_targets(w);
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].target_id, 7u);
  EXPECT_EQ(events[0].count, 3u);
  EXPECT_EQ(events[0].kind, EventKind::target_completed);
  EXPECT_FALSE(w.targets()[0].active);
  EXPECT_EQ(w.targets()[0].completed_step, 0);
  EXPECT_TRUE(w.active_sites().empty());
}

TEST(CheckTargets, ShortOfDemandStaysActive) {
  World w = target_world({{0.5, 0.5}, {0.52, 0.5}, {0.2, 0.2}}, {{0, {0.5, 0.5}, 3}});
  EXPECT_TRUE(check_targets(w).empty());
  EXPECT_TRUE(w.targets()[0].active);
}

TEST(CheckTargets, ClosedCompletionRadius) {
  std::vector<Agent> agents{{0, {0.75, 0.5}}, {1, {0.5, 0.2}}};
  World w(kUnit, agents, {{0, {0.5, 0.5}, 1}}, ElectrostaticProfileSpec{}, electrostatic(0.3, true), 0.25, true, 0);
  EXPECT_EQ(w.count_near_target(0), 1u);
}

TEST(CheckTargets, InactiveTargetIsIdempotent) {
  std::vector<Vec2> crowd(10, Vec2{0.5, 0.5});
  World w = target_world(crowd, {{0, {0.5, 0.5}, 2}});
  EXPECT_EQ(check_targets(w).size(), 1u);
  EXPECT_TRUE(check_targets(w).empty());
  EXPECT_TRUE(check_targets(w).empty());
}

TEST(CheckTargets, SimultaneousCompletionsAllHonored) {
  World w = target_world({{0.3, 0.3}, {0.7, 0.7}}, {{0, {0.3, 0.3}, 1}, {1, {0.7, 0.7}, 1}, {2, {0.5, 0.9}, 1}});
  EXPECT_EQ(check_targets(w).size(), 2u);
  EXPECT_TRUE(w.targets()[2].active);
}

TEST(Run, ElevenSamplesForHundredSteps) {
  World w = random_world(1, 10);
  Recorder rec;
  std::vector<RunObserver*> obs{&rec};
  const auto summary = run(w, 100, 10, obs);
  ASSERT_EQ(rec.samples.size(), 11u);
  EXPECT_EQ(summary.samples, 11u);
  EXPECT_EQ(rec.samples.front().step, 0);
  EXPECT_EQ(rec.samples.back().step, 100);
  EXPECT_EQ(rec.states, 101);
  EXPECT_EQ(summary.final_step, 100);
  EXPECT_EQ(summary.final_G, rec.samples.back().G);
}

TEST(Run, ZeroStepsLeavesWorldUnchanged) {
  World w = random_world(3, 10);
  const auto before = w.positions();
  const auto summary = run(w, 0, 10);
  EXPECT_EQ(w.positions(), before);
  EXPECT_EQ(summary.final_step, 0);
  EXPECT_EQ(summary.agent_count, 10u);
  EXPECT_EQ(summary.final_G, measure_error(w).G);
  ASSERT_EQ(summary.targets.size(), 2u);
  EXPECT_TRUE(summary.targets[0].active);
}

TEST(Run, FinalErrorMeasuredWhenLastStepUnsampled) {
  World w = random_world(3, 10);
  const auto summary = run(w, 25, 10);
  EXPECT_EQ(summary.samples, 3u);
  EXPECT_EQ(summary.final_G, measure_error(w).G);
}

TEST(Run, RejectsNegativeCounts) {
  World w = random_world(3, 4);
  EXPECT_THROW(run(w, -1, 10), ConfigError);
  EXPECT_THROW(run(w, 1, -1), ConfigError);
}

TEST(Run, CompletionsAreMonotoneAndEmittedOnce) {
  World w = random_world(21, 40);
  Recorder rec;
  std::vector<RunObserver*> obs{&rec};
  std::size_t completed = 0;
  for (int chunk = 0; chunk < 40; ++chunk) {
    run(w, 250, 0, obs);
    std::size_t now = 0;
    for (const Target& t : w.targets()) now += t.active ? 0 : 1;
    ASSERT_GE(now, completed);
    completed = now;
    ASSERT_EQ(w.agents().size(), 40u);
  }
  EXPECT_EQ(completed, 2u);
  ASSERT_EQ(rec.events.size(), 2u);
  EXPECT_NE(rec.events[0].target_id, rec.events[1].target_id);
  for (const Event& e : rec.events) EXPECT_EQ(w.targets()[e.target_id].completed_step, e.step);
}

TEST(RemoveAgents, KeepsIdsAndKeepsStepping) {
  World w = random_world(4, 10);
  const std::vector<AgentId> drop{2, 5, 99};
  w.remove_agents(drop);
  ASSERT_EQ(w.agents().size(), 8u);
  for (const Agent& a : w.agents()) EXPECT_TRUE(a.id != 2 && a.id != 5);
  EXPECT_EQ(w.agents()[2].id, 3u);
  EXPECT_NO_THROW(run(w, 50, 10));
  EXPECT_EQ(w.agents().size(), 8u);
}

TEST(Restore, ResumeMatchesUninterruptedRun) {
  World full = random_world(6, 25);
  World part = random_world(6, 25);
  run(full, 300, 0);
  run(part, 120, 0);
  World resumed = random_world(6, 25);
  resumed.restore(part.step(), part.agents(), part.targets());
  run(resumed, 180, 0);
  EXPECT_EQ(resumed.positions(), full.positions());
  EXPECT_EQ(resumed.step(), 300);
  for (std::size_t k = 0; k < full.targets().size(); ++k) {
    EXPECT_EQ(resumed.targets()[k].active, full.targets()[k].active);
    EXPECT_EQ(resumed.targets()[k].completed_step, full.targets()[k].completed_step);
  }
}

TEST(Restore, RejectsBadState) {
  World w = random_world(6, 5);
  EXPECT_THROW(w.restore(-1, w.agents(), w.targets()), ConfigError);
  EXPECT_THROW(w.restore(3, w.agents(), {}), ConfigError);
  EXPECT_THROW(w.restore(3, agents_at({{4, 4}}), w.targets()), ConfigError);
  EXPECT_EQ(w.agents().size(), 5u);
}

TEST(CsvSink, HeadersAndRows) {
  std::ostringstream errors, trajectory, events;
  CsvSink sink(&errors, &trajectory, &events);
  World w = target_world({{0.5, 0.5}, {0.2, 0.2}}, {{0, {0.5, 0.5}, 1}});
  std::vector<RunObserver*> obs{&sink};
  run(w, 2, 1, obs);
  EXPECT_EQ(errors.str().rfind("step,G\n0,", 0), 0u);
  EXPECT_EQ(trajectory.str().rfind("step,agent_id,x,y\n0,0,0.5,0.5\n0,1,0.2,0.2\n", 0), 0u);
  EXPECT_EQ(events.str(), "step,target_id,kind,count\n1,0,target_completed,1\n");
}

TEST(CsvSink, StreamFailureNamesStep) {
  std::ostringstream errors;
  World w = random_world(1, 3);
  CsvSink sink(&errors, nullptr, nullptr);
  std::vector<RunObserver*> obs{&sink};
  run(w, 4, 0, obs);
  errors.setstate(std::ios::badbit);
  try {
    run(w, 10, 5, obs);
    FAIL() << "expected a runtime error";
  } catch (const RuntimeError& e) {
    EXPECT_NE(std::string(e.what()).find("step 5"), std::string::npos) << e.what();
  }
}

TEST(FormatNumber, RoundTrips) {
  for (double v : {0.0, 0.1, 1.0 / 3.0, -2.5e-17, 123456.789}) EXPECT_EQ(std::stod(format_number(v)), v);
  EXPECT_EQ(format_number(0.5), "0.5");
}
