#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thimac/behavior.hpp"
#include "thimac/eventize.hpp"
#include "thimac/model.hpp"

namespace thimac {

/// Everything derivable from a document, with every problem found on the way.
struct Analysis {
  std::optional<StaticModel> model;  // absent when the model does not build
  std::vector<Subdiagram> subdiagrams;
  std::vector<Event> events;
  std::map<std::string, Chronology> chronologies;  // only those that built
  std::optional<CoverageReport> coverage;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return model && !has_errors(diagnostics); }
  /// Throws std::invalid_argument naming the missing chronology.
  const Chronology& chronology(std::string_view id) const;
};

/// Builds and validates the model, checks subdiagrams, computes coverage,
/// eventizes and builds every chronology. Never throws on bad input.
Analysis analyze(const Document& doc);

}  // namespace thimac
