#pragma once

#include <stdexcept>
#include <vector>

#include "thimac/behavior.hpp"

namespace thimac {

class BoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultRunBound = 1000;

/// Every complete run of the chronology, each as one canonical sequence
/// (the chronology's topological order restricted to the run). Runs are
/// sorted lexicographically by event index. Throws BoundExceeded when more
/// than `bound` runs exist and std::invalid_argument when the bound is below
/// the number of events.
std::vector<std::vector<EventId>> enumerate_runs(const Chronology& chronology,
                                                 std::size_t bound = kDefaultRunBound);

/// Consecutive timestamps 0, 1, 2, ... for a run.
Trace trace_of_run(const std::vector<EventId>& run, std::string id = "run");

}  // namespace thimac
