#include "thimac/analysis.hpp"

#include <stdexcept>

#include "thimac/validator.hpp"

namespace thimac {

namespace {

void append(std::vector<Diagnostic>& into, const std::vector<Diagnostic>& more) {
  into.insert(into.end(), more.begin(), more.end());
}

}  // namespace

const Chronology& Analysis::chronology(std::string_view id) const {
  auto it = chronologies.find(std::string(id));
  if (it == chronologies.end())
    throw std::invalid_argument("unknown chronology '" + std::string(id) + "'");
  return it->second;
}

Analysis analyze(const Document& doc) {
  Analysis a;
  try {
    a.model = build_model(doc.model);
  } catch (const BuildError& e) {
    append(a.diagnostics, e.diagnostics());
    sort_diagnostics(a.diagnostics);
    return a;
  }
  append(a.diagnostics, validate_static(*a.model));

  for (const auto& decl : doc.subdiagrams) {
    a.subdiagrams.push_back(to_subdiagram(decl));
    append(a.diagnostics, check_subdiagram(*a.model, a.subdiagrams.back()));
  }
  a.coverage = coverage(*a.model, a.subdiagrams);

  auto ev = eventize(a.subdiagrams, doc.events);
  a.events = std::move(ev.events);
  append(a.diagnostics, ev.diagnostics);

  for (const auto& decl : doc.chronologies) {
    try {
      a.chronologies.emplace(decl.id, build_chronology(a.events, decl));
    } catch (const ChronologyError& e) {
      append(a.diagnostics, e.diagnostics());
    }
  }
  sort_diagnostics(a.diagnostics);
  return a;
}

}  // namespace thimac
