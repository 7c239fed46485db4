#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thimac/model.hpp"

namespace thimac {

using Timestamp = std::int64_t;

struct TimeWindow {
  Timestamp begin = 0;
  Timestamp end = 0;

  bool contains(Timestamp t) const { return begin <= t && t <= end; }
  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

struct SubdiagramDecl {
  std::string id;
  std::string label;
  std::vector<StageRef> stages;
  std::vector<ArcId> arcs;
  SourceSpan span;

  friend bool operator==(const SubdiagramDecl&, const SubdiagramDecl&) = default;
};

struct EventDecl {
  EventId id;
  std::string label;  // optional description; empty when absent
  std::string subdiagram;
  std::optional<TimeWindow> window;
  SourceSpan span;

  friend bool operator==(const EventDecl&, const EventDecl&) = default;
};

struct ExclusiveDecl {
  std::string name;  // empty when unnamed
  std::vector<EventId> members;

  friend bool operator==(const ExclusiveDecl&, const ExclusiveDecl&) = default;
};

struct ChronologyDecl {
  std::string id;
  std::vector<EventId> events;  // explicit `events:` list, may be empty
  std::vector<std::pair<EventId, EventId>> edges;
  std::vector<ExclusiveDecl> exclusive;
  std::vector<EventId> start;  // empty: derived
  std::vector<EventId> end;    // empty: derived
  SourceSpan span;

  friend bool operator==(const ChronologyDecl&, const ChronologyDecl&) = default;
};

struct Occurrence {
  EventId event;
  Timestamp time = 0;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

struct TraceDecl {
  std::string id;
  std::vector<Occurrence> occurrences;
  SourceSpan span;

  friend bool operator==(const TraceDecl&, const TraceDecl&) = default;
};

/// One `.tm` file: a model followed by its subdiagrams, events,
/// chronologies and traces, in that order.
struct Document {
  ModelDecl model;
  std::vector<SubdiagramDecl> subdiagrams;
  std::vector<EventDecl> events;
  std::vector<ChronologyDecl> chronologies;
  std::vector<TraceDecl> traces;

  const ChronologyDecl* find_chronology(std::string_view id) const;
  const TraceDecl* find_trace(std::string_view id) const;

  friend bool operator==(const Document&, const Document&) = default;
};

}  // namespace thimac
