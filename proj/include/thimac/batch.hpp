#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thimac/behavior.hpp"
#include "thimac/simulator.hpp"

namespace thimac {

/// Verdicts for many traces; element i judges traces[i]. Runs in parallel.
std::vector<Verdict> evaluate_all(const Chronology& chronology, const std::vector<Trace>& traces);
/// Single-threaded reference for evaluate_all.
std::vector<Verdict> evaluate_all_serial(const Chronology& chronology,
                                         const std::vector<Trace>& traces);

struct SeedOutcome {
  std::uint64_t seed = 0;
  std::optional<Trace> trace;  // absent when the simulation failed
  std::string error;
  friend bool operator==(const SeedOutcome&, const SeedOutcome&) = default;
};

/// One seeded simulation per seed. Runs in parallel.
std::vector<SeedOutcome> simulate_seeds(const StaticModel& model,
                                        const std::vector<Subdiagram>& subdiagrams,
                                        const Chronology& chronology,
                                        const std::vector<std::uint64_t>& seeds);
/// Single-threaded reference for simulate_seeds.
std::vector<SeedOutcome> simulate_seeds_serial(const StaticModel& model,
                                               const std::vector<Subdiagram>& subdiagrams,
                                               const Chronology& chronology,
                                               const std::vector<std::uint64_t>& seeds);

}  // namespace thimac
