// Serial vs OpenMP batch kernels on the airport model.
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>

#include "thimac/analysis.hpp"
#include "thimac/batch.hpp"
#include "thimac/parser.hpp"

using namespace thimac;

template <class F>
double seconds(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int main(int argc, char** argv) {
  std::size_t n = argc > 1 ? std::stoul(argv[1]) : 200000;
  Document doc = parse(read_source(THIMAC_MODELS_DIR "/airport.tm"));
  Analysis a = analyze(doc);
  if (!a.ok()) {
    std::fprintf(stderr, "airport model does not validate\n");
    return 1;
  }
  const Chronology& chron = a.chronology("B");

  std::mt19937_64 rng(7);
  std::vector<Trace> traces;
  traces.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<EventId> events = chron.events();
    std::shuffle(events.begin(), events.end(), rng);
    events.resize(1 + rng() % events.size());
    Trace t{"t" + std::to_string(i), {}, {}};
    for (std::size_t k = 0; k < events.size(); ++k)
      t.occurrences.push_back({events[k], static_cast<Timestamp>(k)});
    traces.push_back(std::move(t));
  }

  std::vector<Verdict> serial, parallel;
  double ts = seconds([&] { serial = evaluate_all_serial(chron, traces); });
  double tp = seconds([&] { parallel = evaluate_all(chron, traces); });
  std::printf("evaluate  traces=%zu threads=%d serial=%.3fs parallel=%.3fs speedup=%.2f agree=%s\n",
              n, omp_get_max_threads(), ts, tp, ts / tp, serial == parallel ? "yes" : "no");

  std::vector<std::uint64_t> seeds(n / 20);
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = i;
  std::vector<SeedOutcome> s_out, p_out;
  ts = seconds([&] { s_out = simulate_seeds_serial(*a.model, a.subdiagrams, chron, seeds); });
  tp = seconds([&] { p_out = simulate_seeds(*a.model, a.subdiagrams, chron, seeds); });
  std::printf("simulate  seeds=%zu threads=%d serial=%.3fs parallel=%.3fs speedup=%.2f agree=%s\n",
              seeds.size(), omp_get_max_threads(), ts, tp, ts / tp, s_out == p_out ? "yes" : "no");
  return serial == parallel && s_out == p_out ? 0 : 1;
}
