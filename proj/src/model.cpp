#include "thimac/model.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <unordered_set>

namespace thimac {

std::string_view to_string(StageKind k) {
  switch (k) {
    case StageKind::Create: return "create";
    case StageKind::Process: return "process";
    case StageKind::Release: return "release";
    case StageKind::Transfer: return "transfer";
    case StageKind::Receive: return "receive";
    case StageKind::Arrive: return "arrive";
    case StageKind::Accept: return "accept";
  }
  return "?";
}

std::optional<StageKind> parse_stage_kind(std::string_view s) {
  for (auto k : kAllStageKinds)
    if (to_string(k) == s) return k;
  return std::nullopt;
}

std::string_view to_string(ArcKind k) { return k == ArcKind::Flow ? "flow" : "trigger"; }

std::string to_string(const StageRef& ref) {
  std::string out = ref.thimac;
  out += '.';
  out += to_string(ref.kind);
  return out;
}

std::size_t StageSet::size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<StageKind> StageSet::kinds() const {
  std::vector<StageKind> out;
  for (auto k : kAllStageKinds)
    if (contains(k)) out.push_back(k);
  return out;
}

const Thimac* StaticModel::find_thimac(std::string_view id) const {
  auto idx = thimac_index(id);
  return idx ? &thimacs_[*idx] : nullptr;
}

std::optional<std::size_t> StaticModel::thimac_index(std::string_view id) const {
  auto it = thimac_index_.find(std::string(id));
  if (it == thimac_index_.end()) return std::nullopt;
  return it->second;
}

const Arc* StaticModel::find_arc(std::string_view id) const {
  auto it = arc_index_.find(std::string(id));
  return it == arc_index_.end() ? nullptr : &arcs_[it->second];
}

StageLookup StaticModel::lookup(const StageRef& ref) const {
  StageLookup out;
  out.owner = find_thimac(ref.thimac);
  out.found = out.owner != nullptr && out.owner->stages.contains(ref.kind);
  return out;
}

std::vector<StageRef> StaticModel::stages() const {
  std::vector<StageRef> out;
  for (const auto& t : thimacs_)
    for (auto k : t.stages.kinds()) out.push_back({t.id, k});
  return out;
}

std::size_t StaticModel::stage_count() const {
  std::size_t n = 0;
  for (const auto& t : thimacs_) n += t.stages.size();
  return n;
}

namespace {

Diagnostic error(std::string code, const SourceSpan& span, std::string message,
                 std::vector<std::string> elements) {
  return Diagnostic{std::move(code), Severity::Error, span, std::move(message),
                    std::move(elements)};
}

}  // namespace

StaticModel build_model(const ModelDecl& decl) {
  std::vector<Diagnostic> errors;

  std::unordered_map<std::string, std::size_t> by_id;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < decl.thimacs.size(); ++i) {
    const auto& t = decl.thimacs[i];
    if (!seen.insert(t.id).second) {
      errors.push_back(error("E-DUPLICATE-ID", t.span, "duplicate identifier '" + t.id + "'", {t.id}));
      continue;
    }
    by_id.emplace(t.id, i);
  }
  for (const auto& a : decl.arcs)
    if (!seen.insert(a.id).second)
      errors.push_back(error("E-DUPLICATE-ID", a.span, "duplicate identifier '" + a.id + "'", {a.id}));

  for (const auto& t : decl.thimacs) {
    if (t.parent && !by_id.contains(*t.parent))
      errors.push_back(error("E-UNRESOLVED-REF", t.span,
                             "thimac '" + t.id + "' names unknown parent '" + *t.parent + "'",
                             {*t.parent, t.id}));
    StageSet set;
    for (auto k : t.stages) {
      if (set.contains(k))
        errors.push_back(error("E-DUPLICATE-STAGE", t.span,
                               "thimac '" + t.id + "' declares stage '" +
                                   std::string(to_string(k)) + "' twice",
                               {t.id}));
      set.insert(k);
    }
    bool arrive = set.contains(StageKind::Arrive), accept = set.contains(StageKind::Accept);
    if (arrive != accept || ((arrive || accept) && set.contains(StageKind::Receive)))
      errors.push_back(error("E-STAGE-REFINE", t.span,
                             "thimac '" + t.id +
                                 "': arrive and accept must appear together and only without receive",
                             {t.id}));
  }

  // Containment must be a forest: walk parent chains looking for a revisit.
  for (const auto& [id, start] : by_id) {
    std::unordered_set<std::size_t> chain{start};
    std::optional<ThimacId> p = decl.thimacs[start].parent;
    while (p) {
      auto it = by_id.find(*p);
      if (it == by_id.end()) break;
      if (!chain.insert(it->second).second) {
        if (it->second == start)
          errors.push_back(error("E-CONTAINMENT-CYCLE", decl.thimacs[start].span,
                                 "thimac '" + id + "' contains itself", {id}));
        break;
      }
      p = decl.thimacs[it->second].parent;
    }
  }

  auto resolve = [&](const ArcDecl& a, const StageRef& r) {
    auto it = by_id.find(r.thimac);
    if (it == by_id.end()) {
      errors.push_back(error("E-UNRESOLVED-REF", a.span,
                             "arc '" + a.id + "' references undeclared thimac '" + r.thimac + "'",
                             {r.thimac, a.id}));
      return;
    }
    const auto& kinds = decl.thimacs[it->second].stages;
    if (std::find(kinds.begin(), kinds.end(), r.kind) == kinds.end())
      errors.push_back(error("E-UNRESOLVED-REF", a.span,
                             "arc '" + a.id + "' references missing stage '" + to_string(r) + "'",
                             {to_string(r), a.id}));
  };
  for (const auto& a : decl.arcs) {
    resolve(a, a.from);
    resolve(a, a.to);
  }

  if (!errors.empty()) {
    sort_diagnostics(errors);
    throw BuildError(std::move(errors));
  }

  StaticModel m;
  m.name_ = decl.name;
  m.notation_ = decl.notation;

  std::unordered_map<std::string, std::vector<std::size_t>> kids;
  std::vector<std::size_t> root_decls;
  for (std::size_t i = 0; i < decl.thimacs.size(); ++i) {
    const auto& t = decl.thimacs[i];
    if (t.parent)
      kids[*t.parent].push_back(i);
    else
      root_decls.push_back(i);
  }

  std::function<void(std::size_t, std::optional<std::size_t>)> emit =
      [&](std::size_t di, std::optional<std::size_t> parent) {
        const auto& d = decl.thimacs[di];
        std::size_t idx = m.thimacs_.size();
        Thimac t;
        t.id = d.id;
        t.label = d.label;
        for (auto k : d.stages) t.stages.insert(k);
        t.memory = d.memory;
        t.things = d.things;
        t.parent = parent;
        t.span = d.span;
        m.thimacs_.push_back(std::move(t));
        m.thimac_index_.emplace(d.id, idx);
        if (parent)
          m.thimacs_[*parent].children.push_back(idx);
        else
          m.roots_.push_back(idx);
        if (auto it = kids.find(d.id); it != kids.end())
          for (auto c : it->second) emit(c, idx);
      };
  for (auto r : root_decls) emit(r, std::nullopt);

  for (const auto& a : decl.arcs) {
    m.arc_index_.emplace(a.id, m.arcs_.size());
    m.arcs_.push_back(Arc{a.id, a.kind, a.from, a.to, a.span});
  }
  return m;
}

ModelDecl to_decl(const StaticModel& model) {
  ModelDecl d;
  d.name = model.name();
  d.notation = model.notation();
  auto all = model.thimacs();
  for (const auto& t : all) {
    ThimacDecl td;
    td.id = t.id;
    td.label = t.label;
    if (t.parent) td.parent = all[*t.parent].id;
    td.stages = t.stages.kinds();
    td.memory = t.memory;
    td.things = t.things;
    td.span = t.span;
    d.thimacs.push_back(std::move(td));
  }
  for (const auto& a : model.arcs()) d.arcs.push_back(ArcDecl{a.id, a.kind, a.from, a.to, a.span});
  return d;
}

}  // namespace thimac
