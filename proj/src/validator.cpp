#include "thimac/validator.hpp"

#include <set>

namespace thimac {

bool full_flow_legal(StageKind from, StageKind to, bool same_machine) {
  using K = StageKind;
  if (!same_machine) return from == K::Transfer && to == K::Transfer;
  switch (from) {
    case K::Create: return to == K::Process || to == K::Release;
    case K::Receive: return to == K::Process || to == K::Release;
    case K::Process: return to == K::Release;
    case K::Release: return to == K::Transfer;
    case K::Transfer: return to == K::Receive || to == K::Arrive;
    case K::Arrive: return to == K::Accept;
    case K::Accept: return to == K::Process || to == K::Release;
  }
  return false;
}

bool simplified_cross_flow_legal(StageKind from, StageKind to, StageSet target_stages) {
  using K = StageKind;
  if (from == K::Arrive) return false;  // arrival only feeds acceptance
  if ((to == K::Arrive || to == K::Accept) && target_stages.contains(K::Receive)) return false;
  if (to == K::Receive &&
      (target_stages.contains(K::Arrive) || target_stages.contains(K::Accept)))
    return false;
  return true;
}

namespace {

Diagnostic diag(std::string_view code, Severity sev, const SourceSpan& span, std::string msg,
                std::vector<std::string> elements) {
  return Diagnostic{std::string(code), sev, span, std::move(msg), std::move(elements)};
}

}  // namespace

std::vector<Diagnostic> validate_static(const StaticModel& model) {
  std::vector<Diagnostic> out;
  const bool simplified = model.notation() == Notation::Simplified;
  std::set<StageRef> touched;

  for (const auto& a : model.arcs()) {
    touched.insert(a.from);
    touched.insert(a.to);
    const std::string path = to_string(a.from) + " -> " + to_string(a.to);

    if (a.kind == ArcKind::Trigger) {
      if (a.from == a.to)
        out.push_back(diag(kTriggerSelf, Severity::Warning, a.span,
                           "trigger " + a.id + " (" + path + ") triggers its own stage", {a.id}));
      continue;
    }

    const bool same = a.from.thimac == a.to.thimac;
    if (a.to.kind == StageKind::Create && (same || !simplified)) {
      out.push_back(diag(kCreateInflow, Severity::Error, a.span,
                         "flow " + a.id + " (" + path +
                             ") enters a create stage; creation can only be triggered",
                         {a.id}));
      continue;
    }
    if (same || !simplified) {
      if (!full_flow_legal(a.from.kind, a.to.kind, same))
        out.push_back(diag(kFlowIllegal, Severity::Error, a.span,
                           "flow " + a.id + " (" + path + ") is not a legal stage connection",
                           {a.id}));
      continue;
    }
    if (full_flow_legal(a.from.kind, a.to.kind, false)) continue;
    const Thimac* target = model.find_thimac(a.to.thimac);
    if (!simplified_cross_flow_legal(a.from.kind, a.to.kind, target->stages))
      out.push_back(diag(kMode, Severity::Error, a.span,
                         "flow " + a.id + " (" + path +
                             ") has no expansion into full notation",
                         {a.id}));
  }

  for (const auto& s : model.stages()) {
    if (touched.contains(s)) continue;
    const Thimac* t = model.find_thimac(s.thimac);
    out.push_back(diag(kStageDangling, Severity::Warning, t->span,
                       "stage " + to_string(s) + " has no flow or trigger", {to_string(s)}));
  }

  sort_diagnostics(out);
  return out;
}

}  // namespace thimac
