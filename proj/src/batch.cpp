#include "thimac/batch.hpp"

namespace thimac {

namespace {

SeedOutcome simulate_one(const StaticModel& model, const std::vector<Subdiagram>& subdiagrams,
                         const Chronology& chronology, std::uint64_t seed) {
  SeedOutcome out{seed, std::nullopt, {}};
  try {
    out.trace = simulate(model, subdiagrams, chronology, Seeded{seed});
  } catch (const SimulationError& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

std::vector<Verdict> evaluate_all(const Chronology& chronology, const std::vector<Trace>& traces) {
  std::vector<Verdict> out(traces.size());
  const auto n = static_cast<std::ptrdiff_t>(traces.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = evaluate_trace(chronology, traces[i]);
  return out;
}

std::vector<Verdict> evaluate_all_serial(const Chronology& chronology,
                                         const std::vector<Trace>& traces) {
  std::vector<Verdict> out;
  out.reserve(traces.size());
  for (const auto& t : traces) out.push_back(evaluate_trace(chronology, t));
  return out;
}

std::vector<SeedOutcome> simulate_seeds(const StaticModel& model,
                                        const std::vector<Subdiagram>& subdiagrams,
                                        const Chronology& chronology,
                                        const std::vector<std::uint64_t>& seeds) {
  std::vector<SeedOutcome> out(seeds.size());
  const auto n = static_cast<std::ptrdiff_t>(seeds.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[i] = simulate_one(model, subdiagrams, chronology, seeds[i]);
  return out;
}

std::vector<SeedOutcome> simulate_seeds_serial(const StaticModel& model,
                                               const std::vector<Subdiagram>& subdiagrams,
                                               const Chronology& chronology,
                                               const std::vector<std::uint64_t>& seeds) {
  std::vector<SeedOutcome> out;
  out.reserve(seeds.size());
  for (auto seed : seeds) out.push_back(simulate_one(model, subdiagrams, chronology, seed));
  return out;
}

}  // namespace thimac
