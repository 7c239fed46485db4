#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "thimac/document.hpp"
#include "thimac/model.hpp"

namespace thimac {

/// A named part of the static model: a potential locus of change.
struct Subdiagram {
  std::string id;
  std::string label;
  std::set<StageRef> stages;
  std::set<ArcId> arcs;
  SourceSpan span;
};

Subdiagram to_subdiagram(const SubdiagramDecl& decl);

/// A subdiagram paired with time.
struct Event {
  EventId id;
  std::string label;
  std::string subdiagram;
  std::optional<TimeWindow> window;
  SourceSpan span;
};

struct CoverageReport {
  std::vector<StageRef> uncovered_stages;
  std::vector<ArcId> uncovered_arcs;
  /// Stage refs ("t.kind") and arc ids appearing in more than one subdiagram.
  std::vector<std::string> multiply_covered;

  bool total() const { return uncovered_stages.empty() && uncovered_arcs.empty(); }
};

/// Empty iff every referenced element exists and every included flow arc has
/// both endpoints included. Trigger arcs may cross the boundary.
/// Codes: E-SUB-UNRESOLVED, E-SUB-CLOSURE.
std::vector<Diagnostic> check_subdiagram(const StaticModel& model, const Subdiagram& sub);

/// The whole model as a single subdiagram.
Subdiagram whole_model(const StaticModel& model, std::string id = "S");

CoverageReport coverage(const StaticModel& model, const std::vector<Subdiagram>& parts);

struct EventizeResult {
  std::vector<Event> events;  // only events that resolved
  std::vector<Diagnostic> diagnostics;
};

/// Codes: E-EVENT-UNRESOLVED, E-EVENT-WINDOW, E-DUPLICATE-ID, W-EVENT-SHARED.
EventizeResult eventize(const std::vector<Subdiagram>& subdiagrams,
                        const std::vector<EventDecl>& decls);

/// Plain-text table of a coverage report.
std::string format_coverage(const CoverageReport& report);

}  // namespace thimac
