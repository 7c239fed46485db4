#include <doctest.h>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "thimac/simulator.hpp"
#include "thimac/validator.hpp"

using namespace thimac;
using namespace thimac::testing;
using K = StageKind;

namespace {

struct Loaded {
  Document doc;
  Analysis analysis;
};

Loaded load_for_simulation(const Document& source) {
  Document doc = source.model.notation == Notation::Simplified ? desugar_document(source) : source;
  Analysis a = analyze(doc);
  REQUIRE(a.ok());
  return {std::move(doc), std::move(a)};
}

Loaded load_for_simulation(const char* fixture) {
  return load_for_simulation(load_fixture(fixture));
}

const StaticModel& two_machines() {
  static StaticModel m = build_model(parse({"m.tm", R"(
    model m {
      thimac a { stages: create, process, release, transfer; things: "x", "y" }
      thimac b { stages: transfer, arrive, accept, process }
      flow f1: a.create -> a.release
      flow f2: a.release -> a.transfer
      flow f3: a.transfer -> b.transfer
      flow f4: b.transfer -> b.arrive
      flow f5: b.arrive -> b.accept
      flow f6: b.accept -> b.process
    }
  )"}).model);
  return m;
}

const AtStage& at(const SimState& s, InstanceId id) {
  return std::get<AtStage>(s.instances.at(id).location);
}

SimErrorKind error_kind(auto&& f) {
  try {
    f();
  } catch (const SimulationError& e) {
    return e.kind();
  }
  FAIL("expected a simulation error");
  return SimErrorKind::UnknownEvent;
}

}  // namespace

TEST_CASE("create draws labels from the thing side in order") {
  const auto& m = two_machines();
  SimState s = action_step({}, m, {"a", K::Create});
  s = action_step(std::move(s), m, {"a", K::Create});
  CHECK(s.instances[0].label == "x");
  CHECK(s.instances[1].label == "y");
  CHECK(error_kind([&] { action_step(s, m, {"a", K::Create}); }) == SimErrorKind::IllegalAction);
}

TEST_CASE("a thing moves through release, transfer, arrive and accept") {
  const auto& m = two_machines();
  SimState s = action_step({}, m, {"a", K::Create});
  s = action_step(std::move(s), m, {"a", K::Process}, 0);
  CHECK(s.instances[0].tags == std::vector<std::string>{"processed@a"});
  s = action_step(std::move(s), m, {"a", K::Release}, 0);
  s = action_step(std::move(s), m, {"a", K::Transfer}, 0);
  CHECK(at(s, 0).stage == StageRef{"a", K::Transfer});

  CHECK(error_kind([&] { action_step(s, m, {"b", K::Transfer}, 0); }) ==
        SimErrorKind::IllegalAction);
  s = action_step(std::move(s), m, {"b", K::Transfer}, 0, m.find_arc("f3"));
  CHECK(at(s, 0).stage == StageRef{"b", K::Transfer});
  auto hop = s.actions[s.actions.size() - 2];
  CHECK(std::get<InTransit>(hop.to).arc == "f3");

  CHECK(error_kind([&] { action_step(s, m, {"b", K::Accept}, 0); }) ==
        SimErrorKind::IllegalAction);
  s = action_step(std::move(s), m, {"b", K::Arrive}, 0);
  CHECK(error_kind([&] { action_step(s, m, {"b", K::Process}, 0); }) ==
        SimErrorKind::IllegalAction);
  s = action_step(std::move(s), m, {"b", K::Accept}, 0);
  s = action_step(std::move(s), m, {"b", K::Process}, 0);
  CHECK(at(s, 0).stage == StageRef{"b", K::Accept});
}

TEST_CASE("actions need an existing stage and a live thing") {
  const auto& m = two_machines();
  SimState s = action_step({}, m, {"a", K::Create});
  CHECK(error_kind([&] { action_step(s, m, {"a", K::Receive}, 0); }) ==
        SimErrorKind::IllegalAction);
  CHECK(error_kind([&] { action_step(s, m, {"a", K::Process}, 7); }) ==
        SimErrorKind::IllegalAction);
  s.instances[0].location = Retired{};
  CHECK(error_kind([&] { action_step(s, m, {"a", K::Process}, 0); }) ==
        SimErrorKind::IllegalAction);
}

TEST_CASE("firing an event requires it to be enabled") {
  auto l = load_for_simulation("airport.tm");
  const auto& b = l.analysis.chronology("B");
  SimState s;
  CHECK(error_kind([&] { fire_event(s, *l.analysis.model, l.analysis.subdiagrams, b, "E9"); }) ==
        SimErrorKind::NotEnabled);
  CHECK(error_kind([&] { fire_event(s, *l.analysis.model, l.analysis.subdiagrams, b, "E77"); }) ==
        SimErrorKind::UnknownEvent);
  s = fire_event(std::move(s), *l.analysis.model, l.analysis.subdiagrams, b, "E1");
  CHECK(error_kind([&] { fire_event(s, *l.analysis.model, l.analysis.subdiagrams, b, "E2"); }) ==
        SimErrorKind::NotEnabled);
  CHECK(s.log.occurrences.size() == 1);
  CHECK(s.live().size() == 2);
}

TEST_CASE("luggage that never reached the counter cannot be processed there") {
  Document doc = load_fixture("airport.tm");
  auto drop = [&](const std::string& arc) {
    std::erase_if(doc.model.arcs, [&](const ArcDecl& a) { return a.id == arc; });
    for (auto& s : doc.subdiagrams) std::erase(s.arcs, arc);
  };
  drop("l3");
  drop("c1");
  for (auto& s : doc.subdiagrams)
    if (s.id == "S3")
      std::erase_if(s.stages, [](const StageRef& r) { return r.thimac == "counter"; });
  auto a = analyze(doc);
  const auto& b = a.chronology("B");
  SimState s;
  for (const char* e : {"E1", "E3"}) s = fire_event(std::move(s), *a.model, a.subdiagrams, b, e);
  try {
    fire_event(s, *a.model, a.subdiagrams, b, "E4");
    FAIL("expected an illegal action");
  } catch (const SimulationError& e) {
    CHECK(e.kind() == SimErrorKind::IllegalAction);
    CHECK(e.stage() == StageRef{"counter", K::Process});
  }
}

TEST_CASE("a full airport run moves the passenger onto the plane") {
  auto l = load_for_simulation("airport.tm");
  auto r = run_simulation(*l.analysis.model, l.analysis.subdiagrams, l.analysis.chronology("B"),
                          Scripted{{{"start", "E1"}, {"branch", "E9"}}});
  CHECK(print_trace(r.trace) == "trace sim = [E1 @ 0, E3 @ 1, E4 @ 2, E5 @ 3, E8 @ 4, E9 @ 5, E13 @ 6, E14 @ 7]\n");
  const auto& passenger = r.state.instances.at(0);
  CHECK(passenger.label == "Passenger with luggage");
  CHECK(std::get<AtStage>(passenger.location).stage == StageRef{"plane", K::Receive});
  const auto& luggage = r.state.instances.at(1);
  CHECK(std::get<AtStage>(luggage.location).stage == StageRef{"counter", K::Receive});
  CHECK(luggage.tags == std::vector<std::string>{"processed@counter"});
  CHECK(r.state.instances.size() == 3);
  CHECK(r.state.instances[2].label == "Ticket");
}

TEST_CASE("scripted choices pick the branch and missing ones are reported") {
  auto l = load_for_simulation("airport.tm");
  const auto& a = l.analysis;
  auto t = simulate(*a.model, a.subdiagrams, a.chronology("B"),
                    Scripted{{{"start", "E2"}, {"branch", "E10"}}});
  CHECK(evaluate_trace(a.chronology("B"), t).summary() ==
        "TRUE run=[E2,E6,E7,E8,E10,E11,E12,E13,E14]");
  CHECK(error_kind([&] {
          simulate(*a.model, a.subdiagrams, a.chronology("B"), Scripted{{{"start", "E2"}}});
        }) == SimErrorKind::UnscriptedChoice);
}

TEST_CASE("simulated airport traces are true for 100 seeds") {
  auto l = load_for_simulation("airport.tm");
  const auto& a = l.analysis;
  const auto& b = a.chronology("B");
  std::set<std::vector<EventId>> seen;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto r = run_simulation(*a.model, a.subdiagrams, b, Seeded{seed});
    auto v = evaluate_trace(b, r.trace);
    CAPTURE(seed);
    CHECK(v.truth);
    seen.insert(v.run);
    for (std::size_t i = 0; i < r.trace.occurrences.size(); ++i)
      CHECK(r.trace.occurrences[i].time == static_cast<Timestamp>(i));
  }
  CHECK(seen.size() == 4);
}

TEST_CASE("simulation is deterministic for a seed") {
  auto l = load_for_simulation("airport.tm");
  const auto& a = l.analysis;
  for (std::uint64_t seed : {3u, 17u, 123456u}) {
    auto x = run_simulation(*a.model, a.subdiagrams, a.chronology("B"), Seeded{seed});
    auto y = run_simulation(*a.model, a.subdiagrams, a.chronology("B"), Seeded{seed});
    CHECK(x.trace == y.trace);
    CHECK(x.state.actions.size() == y.state.actions.size());
  }
}

TEST_CASE("things keep one location and retired things stay retired") {
  for (const char* name : {"airport.tm", "bread.tm", "green_cheese.tm", "zero_plus_zero.tm",
                           "liar.tm", "john_mary_v1.tm", "delta_cr.tm"}) {
    CAPTURE(name);
    auto l = load_for_simulation(name);
    const auto& a = l.analysis;
    const auto& b = a.chronologies.begin()->second;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto r = run_simulation(*a.model, a.subdiagrams, b, Seeded{seed});
      CHECK(evaluate_trace(b, r.trace).truth);
      std::map<InstanceId, Location> last;
      std::set<InstanceId> retired;
      for (const auto& act : r.state.actions) {
        CHECK_FALSE(retired.contains(act.instance));
        if (last.contains(act.instance)) CHECK(last[act.instance] == act.from);
        last[act.instance] = act.to;
        if (std::holds_alternative<Retired>(act.to)) retired.insert(act.instance);
      }
      for (const auto& inst : r.state.instances) CHECK(last.at(inst.id) == inst.location);
    }
  }
}

TEST_CASE("making something consumes what it is made of") {
  auto l = load_for_simulation("bread.tm");
  auto r = run_simulation(*l.analysis.model, l.analysis.subdiagrams, l.analysis.chronology("B"),
                          Seeded{0});
  std::map<std::string, Location> where;
  for (const auto& i : r.state.instances) where[i.label] = i.location;
  CHECK(std::holds_alternative<Retired>(where.at("Flour")));
  CHECK(std::holds_alternative<Retired>(where.at("Water")));
  CHECK(std::get<AtStage>(where.at("Bread")).stage == StageRef{"bread", K::Create});

  auto z = load_for_simulation("zero_plus_zero.tm");
  auto rz = run_simulation(*z.analysis.model, z.analysis.subdiagrams, z.analysis.chronology("B"),
                           Seeded{0});
  std::vector<std::string> retired, live;
  for (const auto& i : rz.state.instances)
    (std::holds_alternative<Retired>(i.location) ? retired : live).push_back(i.label);
  CHECK(retired == std::vector<std::string>{"0 (first)", "0 (second)"});
  CHECK(live == std::vector<std::string>{"One"});
}

TEST_CASE("the liar creates lies exactly once") {
  auto l = load_for_simulation("liar.tm");
  auto r = run_simulation(*l.analysis.model, l.analysis.subdiagrams, l.analysis.chronology("B"),
                          Seeded{1});
  REQUIRE(r.state.instances.size() == 2);
  CHECK(r.state.instances[1].label == "Lies");
  CHECK(r.state.instances[1].tags == std::vector<std::string>{"processed@lies"});
  CHECK(r.state.instances[0].tags == std::vector<std::string>{"processed@i", "processed@i"});
}

TEST_CASE("create-only worlds only ever create") {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    Document d = random_delta_cr_document(rng);
    auto a = analyze(d);
    REQUIRE(a.ok());
    auto r = run_simulation(*a.model, a.subdiagrams, a.chronology("B"), Seeded{uniform(rng, 0, 99)});
    CHECK(evaluate_trace(a.chronology("B"), r.trace).truth);
    for (const auto& act : r.state.actions) {
      CHECK(act.stage.kind == K::Create);
      CHECK(std::holds_alternative<Retired>(act.from));
    }
    for (const auto& inst : r.state.instances)
      CHECK(std::get<AtStage>(inst.location).stage.kind == K::Create);
  }
}

TEST_CASE("windows delay firing and expired windows deadlock") {
  Document d = parse({"w.tm", R"(
    model m { thimac a { stages: create } thimac b { stages: create } }
    subdiagram S { stages: a.create }
    subdiagram T { stages: b.create }
    event E1 = S
    event E2 = T window 4..6
    event E3 = S window 0..0
    event E4 = T window 0..0
    chronology Late { E1 -> E2 }
    chronology Dead { E3 -> E4 }
  )"});
  auto a = analyze(d);
  auto t = simulate(*a.model, a.subdiagrams, a.chronology("Late"), Seeded{0});
  CHECK(print_trace(t) == "trace sim_seed_0 = [E1 @ 0, E2 @ 4]\n");
  CHECK(evaluate_trace(a.chronology("Late"), t).truth);
  CHECK(error_kind([&] { simulate(*a.model, a.subdiagrams, a.chronology("Dead"), Seeded{0}); }) ==
        SimErrorKind::Deadlock);
}
