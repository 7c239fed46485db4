#include <doctest.h>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "thimac/batch.hpp"
#include "thimac/runs.hpp"

using namespace thimac;
using namespace thimac::testing;

TEST_CASE("parallel evaluation matches the serial reference") {
  Document doc = load_fixture("airport.tm");
  auto a = analyze(doc);
  const auto& b = a.chronology("B");
  Rng rng(1);
  std::vector<Trace> traces;
  for (int i = 0; i < 2000; ++i) {
    auto events = b.events();
    std::shuffle(events.begin(), events.end(), rng);
    events.resize(uniform(rng, 0, events.size()));
    traces.push_back(trace_of_run(events));
  }
  for (const auto& t : doc.traces) traces.push_back(t);
  CHECK(evaluate_all(b, traces) == evaluate_all_serial(b, traces));
  CHECK(evaluate_all(b, {}).empty());
}

TEST_CASE("parallel seeded simulation matches the serial reference") {
  auto a = analyze(load_fixture("airport.tm"));
  std::vector<std::uint64_t> seeds(64);
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = i * 7919;
  auto p = simulate_seeds(*a.model, a.subdiagrams, a.chronology("B"), seeds);
  auto s = simulate_seeds_serial(*a.model, a.subdiagrams, a.chronology("B"), seeds);
  CHECK(p == s);
  for (const auto& o : p) CHECK(o.trace.has_value());
}

TEST_CASE("failed simulations are captured per seed") {
  auto a = analyze(load_fixture("airport_variant.tm"));
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7};
  auto p = simulate_seeds(*a.model, a.subdiagrams, a.chronology("B"), seeds);
  CHECK(p == simulate_seeds_serial(*a.model, a.subdiagrams, a.chronology("B"), seeds));
  for (const auto& o : p) CHECK(o.trace.has_value() == o.error.empty());
}
