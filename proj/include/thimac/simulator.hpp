#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "thimac/behavior.hpp"
#include "thimac/eventize.hpp"
#include "thimac/model.hpp"

namespace thimac {

using InstanceId = std::size_t;

struct AtStage {
  StageRef stage;
  friend bool operator==(const AtStage&, const AtStage&) = default;
};
struct InTransit {
  ArcId arc;
  friend bool operator==(const InTransit&, const InTransit&) = default;
};
struct Retired {
  friend bool operator==(const Retired&, const Retired&) = default;
};
using Location = std::variant<AtStage, InTransit, Retired>;

std::string to_string(const Location& loc);

/// A thing moving through the machines. Exactly one location at a time.
struct ThingInstance {
  InstanceId id = 0;
  std::string label;
  Location location = Retired{};
  std::vector<std::string> tags;  // one per processing step
};

struct ActionRecord {
  std::size_t step = 0;
  StageRef stage;
  InstanceId instance = 0;
  Location from;
  Location to;
};

struct PendingTrigger {
  ArcId arc;
  StageRef source;
  StageRef target;
  std::vector<InstanceId> carriers;  // things at the source during the event
};

struct SimState {
  std::size_t step = 0;
  std::vector<ThingInstance> instances;  // indexed by id, retired ones kept
  Trace log;
  std::deque<PendingTrigger> pending;
  std::vector<ActionRecord> actions;
  std::set<EventId> forbidden;  // passed-over predecessors of fired events
  std::set<std::string> created_labels;

  std::vector<InstanceId> live() const;
  bool logged(std::string_view event) const { return truth_of_event(log, event); }
};

enum class SimErrorKind { IllegalAction, NotEnabled, Deadlock, UnscriptedChoice, UnknownEvent };

std::string_view to_string(SimErrorKind k);

class SimulationError : public std::runtime_error {
 public:
  SimulationError(SimErrorKind kind, std::string message, std::optional<StageRef> stage = {},
                  std::string event = {});

  SimErrorKind kind() const { return kind_; }
  const std::optional<StageRef>& stage() const { return stage_; }
  const std::string& event() const { return event_; }

 private:
  SimErrorKind kind_;
  std::optional<StageRef> stage_;
  std::string event_;
};

struct Seeded {
  std::uint64_t seed = 0;
};
/// Exclusive group name -> chosen event.
struct Scripted {
  std::map<std::string, EventId> choices;
};
using BranchPolicy = std::variant<Seeded, Scripted>;

/// Applies one generic action at `stage`. Create ignores `instance` and makes
/// a new thing; every other action moves or changes an existing one. A
/// cross-machine transfer must name the flow arc it travels along.
/// Throws SimulationError(IllegalAction).
SimState action_step(SimState state, const StaticModel& model, const StageRef& stage,
                     std::optional<InstanceId> instance = {}, const Arc* via = nullptr);

/// Fires one event: runs its subdiagram's actions in flow order, then its
/// queued triggers, and logs the event at the current step.
SimState fire_event(SimState state, const StaticModel& model,
                    const std::vector<Subdiagram>& subdiagrams, const Chronology& chronology,
                    std::string_view event);

/// Whether `event` may fire next in `state`.
bool enabled(const SimState& state, const Chronology& chronology, std::size_t event);

struct SimulationResult {
  Trace trace;
  SimState state;
};

/// Drives a complete run: pick a start event, then repeatedly discharge the
/// oldest logged event still lacking a successor. Choices follow the policy.
SimulationResult run_simulation(const StaticModel& model,
                                const std::vector<Subdiagram>& subdiagrams,
                                const Chronology& chronology, const BranchPolicy& policy);

Trace simulate(const StaticModel& model, const std::vector<Subdiagram>& subdiagrams,
               const Chronology& chronology, const BranchPolicy& policy);

}  // namespace thimac
