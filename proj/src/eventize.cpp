#include "thimac/eventize.hpp"

#include <map>
#include <sstream>
#include <unordered_map>

namespace thimac {

Subdiagram to_subdiagram(const SubdiagramDecl& decl) {
  Subdiagram s;
  s.id = decl.id;
  s.label = decl.label;
  s.stages.insert(decl.stages.begin(), decl.stages.end());
  s.arcs.insert(decl.arcs.begin(), decl.arcs.end());
  s.span = decl.span;
  return s;
}

std::vector<Diagnostic> check_subdiagram(const StaticModel& model, const Subdiagram& sub) {
  std::vector<Diagnostic> out;
  auto report = [&](std::string code, std::string msg, std::string element) {
    out.push_back(Diagnostic{std::move(code), Severity::Error, sub.span, std::move(msg),
                             {sub.id, std::move(element)}});
  };
  for (const auto& s : sub.stages)
    if (!model.has_stage(s))
      report("E-SUB-UNRESOLVED",
             "subdiagram " + sub.id + " references stage " + to_string(s) + " absent from the model",
             to_string(s));
  for (const auto& id : sub.arcs) {
    const Arc* a = model.find_arc(id);
    if (!a) {
      report("E-SUB-UNRESOLVED",
             "subdiagram " + sub.id + " references arc " + id + " absent from the model", id);
      continue;
    }
    if (a->kind != ArcKind::Flow) continue;
    for (const auto* end : {&a->from, &a->to})
      if (!sub.stages.contains(*end))
        report("E-SUB-CLOSURE",
               "subdiagram " + sub.id + " includes flow " + id + " but not its endpoint " +
                   to_string(*end),
               id);
  }
  return out;
}

Subdiagram whole_model(const StaticModel& model, std::string id) {
  Subdiagram s;
  s.id = std::move(id);
  s.label = model.name();
  for (const auto& st : model.stages()) s.stages.insert(st);
  for (const auto& a : model.arcs()) s.arcs.insert(a.id);
  return s;
}

CoverageReport coverage(const StaticModel& model, const std::vector<Subdiagram>& parts) {
  std::map<StageRef, int> stage_hits;
  std::map<ArcId, int> arc_hits;
  for (const auto& p : parts) {
    for (const auto& s : p.stages) ++stage_hits[s];
    for (const auto& a : p.arcs) ++arc_hits[a];
  }
  CoverageReport r;
  for (const auto& s : model.stages()) {
    int n = stage_hits.contains(s) ? stage_hits[s] : 0;
    if (n == 0) r.uncovered_stages.push_back(s);
    if (n > 1) r.multiply_covered.push_back(to_string(s));
  }
  for (const auto& a : model.arcs()) {
    int n = arc_hits.contains(a.id) ? arc_hits[a.id] : 0;
    if (n == 0) r.uncovered_arcs.push_back(a.id);
    if (n > 1) r.multiply_covered.push_back(a.id);
  }
  return r;
}

EventizeResult eventize(const std::vector<Subdiagram>& subdiagrams,
                        const std::vector<EventDecl>& decls) {
  EventizeResult r;
  std::unordered_map<std::string, const Subdiagram*> subs;
  for (const auto& s : subdiagrams) subs.emplace(s.id, &s);
  std::map<std::string, std::vector<EventId>> users;
  std::set<EventId> seen;

  for (const auto& d : decls) {
    auto err = [&](std::string code, std::string msg, std::vector<std::string> els) {
      r.diagnostics.push_back(
          Diagnostic{std::move(code), Severity::Error, d.span, std::move(msg), std::move(els)});
    };
    if (!seen.insert(d.id).second) {
      err("E-DUPLICATE-ID", "duplicate event '" + d.id + "'", {d.id});
      continue;
    }
    if (!subs.contains(d.subdiagram)) {
      err("E-EVENT-UNRESOLVED", "event " + d.id + " names unknown subdiagram '" + d.subdiagram + "'",
          {d.id, d.subdiagram});
      continue;
    }
    if (d.window && d.window->begin > d.window->end) {
      err("E-EVENT-WINDOW",
          "event " + d.id + " window " + std::to_string(d.window->begin) + ".." +
              std::to_string(d.window->end) + " ends before it begins",
          {d.id});
      continue;
    }
    users[d.subdiagram].push_back(d.id);
    r.events.push_back(Event{d.id, d.label, d.subdiagram, d.window, d.span});
  }

  for (const auto& [sub, evs] : users) {
    if (evs.size() < 2) continue;
    std::string list;
    for (const auto& e : evs) list += (list.empty() ? "" : ", ") + e;
    const auto* s = subs.at(sub);
    r.diagnostics.push_back(Diagnostic{"W-EVENT-SHARED", Severity::Warning, s->span,
                                       "events " + list + " share subdiagram " + sub,
                                       {evs.front(), sub}});
  }
  sort_diagnostics(r.diagnostics);
  return r;
}

std::string format_coverage(const CoverageReport& report) {
  std::ostringstream os;
  os << "coverage: " << (report.total() ? "total" : "partial") << '\n';
  os << "  uncovered stages: " << report.uncovered_stages.size() << '\n';
  for (const auto& s : report.uncovered_stages) os << "    " << to_string(s) << '\n';
  os << "  uncovered arcs:   " << report.uncovered_arcs.size() << '\n';
  for (const auto& a : report.uncovered_arcs) os << "    " << a << '\n';
  os << "  shared elements:  " << report.multiply_covered.size() << '\n';
  return os.str();
}

}  // namespace thimac
