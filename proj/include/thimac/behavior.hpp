#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "thimac/document.hpp"
#include "thimac/eventize.hpp"

namespace thimac {

struct ExclusiveGroup {
  std::string name;
  std::vector<std::size_t> members;  // event indices
};

/// The behavioral model: a DAG of events with exclusive alternatives.
/// Events are indexed densely; index order is declaration order.
class Chronology {
 public:
  const std::string& id() const { return id_; }
  std::size_t size() const { return events_.size(); }
  const EventId& event(std::size_t i) const { return events_[i]; }
  const std::vector<EventId>& events() const { return events_; }
  std::optional<std::size_t> index_of(std::string_view id) const;

  const std::vector<std::size_t>& successors(std::size_t i) const { return succ_[i]; }
  const std::vector<std::size_t>& predecessors(std::size_t i) const { return pred_[i]; }
  const std::vector<ExclusiveGroup>& groups() const { return groups_; }
  const std::vector<std::size_t>& groups_of(std::size_t i) const { return groups_of_[i]; }
  bool is_start(std::size_t i) const { return start_[i]; }
  bool is_end(std::size_t i) const { return end_[i]; }
  const std::optional<TimeWindow>& window(std::size_t i) const { return windows_[i]; }
  const std::string& subdiagram(std::size_t i) const { return subdiagrams_[i]; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  std::vector<std::pair<EventId, EventId>> edges() const;

  /// Topological order; ties broken by index.
  const std::vector<std::size_t>& topological_order() const { return topo_; }

  /// i and j are distinct members of a common exclusive group.
  bool exclusive_with(std::size_t i, std::size_t j) const;

 private:
  friend Chronology build_chronology(const std::vector<Event>&, const ChronologyDecl&);

  std::string id_;
  std::vector<EventId> events_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> succ_, pred_;
  std::vector<ExclusiveGroup> groups_;
  std::vector<std::vector<std::size_t>> groups_of_;
  std::vector<bool> start_, end_;
  std::vector<std::optional<TimeWindow>> windows_;
  std::vector<std::string> subdiagrams_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> topo_;
};

/// Codes: E-CHRONO-CYCLE, E-CHRONO-UNKNOWN, E-CHRONO-EXCLUSIVE-EDGE,
/// E-CHRONO-GROUP.
class ChronologyError : public DiagnosticError {
 public:
  using DiagnosticError::DiagnosticError;
};

/// Validates the declaration against the known events. Start and end sets
/// default to events without predecessors and without successors.
Chronology build_chronology(const std::vector<Event>& events, const ChronologyDecl& decl);

/// A sequence of timestamped event occurrences.
using Trace = TraceDecl;

enum class ViolationKind {
  NotStarted,
  OrderViolation,
  ExclusivityViolation,
  MissingSuccessor,
  MissingPredecessor,
  UnknownEvent,
  WindowViolation,
  MalformedTrace,
};

std::string_view to_string(ViolationKind k);

struct Violation {
  ViolationKind kind = ViolationKind::NotStarted;
  std::vector<EventId> events;  // OrderViolation: (earlier, later) per the edge
  std::string group;            // ExclusivityViolation
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Truth assignment for one trace. Exactly one of `run` (when true) and
/// `violation` (when false) is populated.
struct Verdict {
  bool truth = false;
  std::vector<EventId> run;  // in trace order
  std::optional<Violation> violation;

  /// `TRUE run=[...]` or `FALSE reason=...`
  std::string summary() const;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// A trace makes the model true iff its occurrences realize a run of the
/// chronology: known events only, edges respected in order and time, at most
/// one member per exclusive group, a start event present, every non-start
/// event preceded and every non-end event followed by an occurred neighbour,
/// and each occurrence inside its event's window.
Verdict evaluate_trace(const Chronology& chronology, const Trace& trace);

/// Whether an event occurs in the trace.
bool truth_of_event(const Trace& trace, std::string_view event);

}  // namespace thimac
