// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion.

#include <cstdio>
#include <functional>
#include <json.hpp>
#include <sstream>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"
#include "thimac/cli.hpp"
#include "thimac/isomorphism.hpp"
#include "thimac/runs.hpp"
#include "thimac/simulator.hpp"
#include "thimac/validator.hpp"

using namespace thimac;
using namespace thimac::testing;

namespace {

struct Failure {
  std::string why;
};

void require(bool ok, const std::string& why) {
  if (!ok) throw Failure{why};
}

struct CliResult {
  int status;
  std::string out, err;
  nlohmann::json block;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliResult r{run_cli(args, out, err), out.str(), err.str(), {}};
  auto begin = r.out.find("```json\n");
  if (begin != std::string::npos) {
    auto end = r.out.rfind("```");
    r.block = nlohmann::json::parse(r.out.substr(begin + 8, end - begin - 8));
  }
  return r;
}

Verdict verdict(const Document& doc, const std::string& chron, const std::string& trace) {
  auto a = analyze(doc);
  require(a.ok(), "document does not validate");
  const TraceDecl* t = doc.find_trace(trace);
  require(t != nullptr, "missing trace " + trace);
  return evaluate_trace(a.chronology(chron), *t);
}

std::string airport_fidelity() {
  auto r = cli({"check", fixture_path("airport.tm")});
  require(r.status == 0, "check exited " + std::to_string(r.status));
  require(r.block["errors"] == 0, "check reported errors");
  Document doc = load_fixture("airport.tm");
  require(doc.subdiagrams.size() == 14 && doc.events.size() == 14, "expected 14 parts and events");
  for (std::size_t i = 0; i < 14; ++i) {
    std::string n = std::to_string(i + 1);
    require(doc.subdiagrams[i].id == "S" + n, "subdiagram S" + n + " out of place");
    require(doc.events[i].id == "E" + n && doc.events[i].subdiagram == "S" + n,
            "event E" + n + " is not S" + n + " in time");
  }
  require(r.block["coverage"]["uncovered_stages"].empty() &&
              r.block["coverage"]["uncovered_arcs"].empty(),
          "coverage is not total");
  return "0 errors, 14 subdiagrams, 14 events, total coverage";
}

std::string run_count() {
  auto r = cli({"runs", fixture_path("airport.tm"), "--chronology", "B"});
  require(r.status == 0, "runs exited " + std::to_string(r.status));
  require(r.block["count"] == 4, "expected 4 runs, got " + r.block["count"].dump());
  Document doc = load_fixture("airport.tm");
  std::set<std::set<std::string>> printed;
  for (const auto& run : r.block["runs"]) printed.insert(run.get<std::set<std::string>>());
  require(printed == oracle_runs(oracle_of(doc.chronologies[0])), "runs differ from the oracle");
  std::set<std::pair<std::string, std::string>> kinds;
  for (const auto& run : printed) {
    std::string bags = run.contains("E1") ? "luggage" : "no-luggage";
    std::string route = run.contains("E9") ? "schengen" : "non-schengen";
    require(run.contains("E1") != run.contains("E2"), "run mixes passenger kinds");
    require(run.contains("E9") != run.contains("E10"), "run mixes routes");
    kinds.insert({bags, route});
  }
  require(kinds.size() == 4, "runs do not span luggage x route");
  return "4 runs = {luggage, no luggage} x {Schengen, non-Schengen}, equal to the oracle";
}

std::string t_schema() {
  Document doc = load_fixture("airport.tm");
  struct Case {
    const char* trace;
    const char* summary;
  };
  for (auto c : {Case{"schengen_luggage", "TRUE run=[E1,E3,E4,E5,E8,E9,E13,E14]"},
                 Case{"mixed_branch", "FALSE reason=ExclusivityViolation(branch:E9,E10)"},
                 Case{"swapped_order", "FALSE reason=OrderViolation(E3,E4)"},
                 Case{"empty", "FALSE reason=NotStarted"}}) {
    auto v = verdict(doc, "B", c.trace);
    require(v.summary() == c.summary, std::string(c.trace) + " gave " + v.summary());
    auto r = cli({"evaluate", fixture_path("airport.tm"), "--chronology", "B", "--trace", c.trace});
    require(r.status == (v.truth ? 0 : 1), std::string(c.trace) + " exit status");
  }
  return "TRUE / ExclusivityViolation / OrderViolation / NotStarted as expected";
}

std::string corpus() {
  struct Case {
    const char* file;
    const char* chron;
    const char* trace;
  };
  for (auto c : {Case{"green_cheese.tm", "G", "in_order"}, Case{"bread.tm", "B", "made"},
                 Case{"zero_plus_zero.tm", "B", "holds"}, Case{"john_mary_v1.tm", "B", "gave"},
                 Case{"john_mary_v2.tm", "B", "gave"}, Case{"telescope_1.tm", "B1", "seen"},
                 Case{"liar.tm", "B", "lying"}}) {
    require(verdict(load_fixture(c.file), c.chron, c.trace).truth,
            std::string(c.file) + " rejects " + c.trace);
  }
  Document t2 = load_fixture("telescope_2.tm");
  require(analyze(t2).ok(), "telescope_2 does not validate");
  require(evaluate_trace(analyze(t2).chronology("B2"), trace_of_run({"E2", "E3", "E1", "E4", "E5"}))
              .truth,
          "telescope_2 rejects its own reading");

  Document gc = load_fixture("green_cheese.tm");
  require(verdict(gc, "G", "reversed").summary() == "FALSE reason=OrderViolation(E1,E2)",
          "green cheese accepts [E2,E1]");

  Document liar = load_fixture("liar.tm");
  auto a = analyze(liar);
  const auto& b = a.chronology("B");
  require(enumerate_runs(b) == std::vector<std::vector<EventId>>{{"E1", "E2", "E3"}},
          "liar does not have exactly the run [E1,E2,E3]");
  const Verdict first = evaluate_trace(b, *liar.find_trace("lying"));
  for (int i = 0; i < 1000; ++i)
    require(evaluate_trace(b, *liar.find_trace("lying")) == first, "liar verdict changed");
  return "8 documents validate and evaluate; green cheese order holds; liar has one stable run";
}

std::string entailment() {
  auto jm = cli({"iso", fixture_path("john_mary_v1.tm"), fixture_path("john_mary_v2.tm")});
  require(jm.status == 0 && jm.block["isomorphic"] == true, "John/Mary readings differ");
  auto tel = cli({"iso", fixture_path("telescope_1.tm"), fixture_path("telescope_2.tm")});
  require(tel.status == 1 && tel.block["isomorphic"] == false, "telescope readings coincide");
  auto b1 = verdict(load_fixture("telescope_1.tm"), "B1", "seen");
  auto b2 = verdict(load_fixture("telescope_2.tm"), "B2", "seen");
  require(b1.truth && !b2.truth, "trace is not split by the two readings");
  return "John/Mary isomorphic; telescope readings not; trace TRUE under B1, " +
         b2.summary() + " under B2";
}

std::string desugaring() {
  auto simple = build_model(load_fixture("green_cheese.tm").model);
  auto result = desugar(simple);
  require(!has_errors(validate_static(result.model)), "desugared green cheese is invalid");
  require(models_isomorphic(result.model, build_model(load_fixture("green_cheese_full.tm").model))
              .isomorphic,
          "desugared green cheese differs from the full version");
  Rng rng(20240601);
  for (int i = 0; i < 200; ++i) {
    auto out = desugar(build_model(random_simplified_model(rng)));
    require(!has_errors(validate_static(out.model)), "random model " + std::to_string(i));
  }
  return "green cheese matches the full model; 200/200 random models validate";
}

std::string oracle_equivalence() {
  Rng rng(777);
  std::size_t checked = 0, exhaustive = 0;
  for (int i = 0; i < 200; ++i) {
    std::size_t n = uniform(rng, 1, 10);
    Document d = random_chronology_document(rng, n);
    auto a = analyze(d);
    require(a.ok(), "generated chronology invalid");
    const auto& b = a.chronology("B");
    auto o = oracle_of(d.chronologies[0]);
    auto judge = [&](const std::vector<std::string>& seq) {
      ++checked;
      require(evaluate_trace(b, trace_of_run(seq)).truth == oracle_accepts(o, seq),
              "disagreement on chronology " + std::to_string(i));
    };
    if (n <= 7) {
      ++exhaustive;
      for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::string> subset;
        for (std::size_t k = 0; k < n; ++k)
          if (mask >> k & 1) subset.push_back(b.event(k));
        do judge(subset);
        while (std::next_permutation(subset.begin(), subset.end()));
      }
    } else {
      for (const auto& run : oracle_runs(o)) {
        std::vector<std::string> seq;
        for (auto idx : b.topological_order())
          if (run.contains(b.event(idx))) seq.push_back(b.event(idx));
        judge(seq);
        std::reverse(seq.begin(), seq.end());
        judge(seq);
      }
      for (int k = 0; k < 3000; ++k) {
        auto events = b.events();
        std::shuffle(events.begin(), events.end(), rng);
        events.resize(uniform(rng, 0, n));
        judge(events);
      }
    }
  }
  return "200 chronologies (" + std::to_string(exhaustive) + " exhaustive), " +
         std::to_string(checked) + " traces agree";
}

std::string round_trips() {
  for (const char* name : kFixtures) {
    Document d = load_fixture(name);
    std::string text = print(d);
    require(parse({name, text}) == d && print(parse({name, text})) == text,
            std::string(name) + " does not round-trip");
  }
  Rng rng(1234);
  for (int i = 0; i < 500; ++i) {
    Document d = random_document(rng);
    require(parse({"gen.tm", print(d)}) == d, "generated document " + std::to_string(i));
  }
  Document airport = load_fixture("airport.tm");
  std::string source = read_source(fixture_path("airport.tm")).text;
  for (int seed = 0; seed < 100; ++seed) {
    auto r = cli({"simulate", fixture_path("airport.tm"), "--chronology", "B", "--seed",
                  std::to_string(seed)});
    require(r.status == 0, "simulation failed for seed " + std::to_string(seed));
    Document piped = parse({"piped.tm", source + r.out});
    auto v = evaluate_trace(analyze(piped).chronology("B"), piped.traces.back());
    require(v.truth, "seed " + std::to_string(seed) + ": " + v.summary());
  }
  return std::to_string(std::size(kFixtures)) +
         " fixtures and 500 generated documents round-trip; 100 simulated traces TRUE";
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<std::string()>> criteria[] = {
      {"airport fixture fidelity", airport_fidelity},
      {"run count", run_count},
      {"T-schema evaluation", t_schema},
      {"worked-example corpus", corpus},
      {"entailment and ambiguity", entailment},
      {"desugaring", desugaring},
      {"oracle equivalence", oracle_equivalence},
      {"round-trips", round_trips},
  };
  int failed = 0, index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    try {
      std::string detail = check();
      std::printf("PASS %d %s: %s\n", index, name, detail.c_str());
    } catch (const Failure& f) {
      ++failed;
      std::printf("FAIL %d %s: %s\n", index, name, f.why.c_str());
    } catch (const std::exception& e) {
      ++failed;
      std::printf("FAIL %d %s: exception: %s\n", index, name, e.what());
    }
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
