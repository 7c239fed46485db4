#include <algorithm>
#include <unordered_set>

#include "thimac/validator.hpp"

namespace thimac {

namespace {

using K = StageKind;

// Stage path for one elided cross-machine flow.
std::vector<StageRef> chain_for(const Arc& a, StageSet target_stages) {
  std::vector<StageRef> path{a.from};
  const auto& x = a.from.thimac;
  const auto& y = a.to.thimac;
  const K s = a.from.kind, t = a.to.kind;

  if (s == K::Create || s == K::Process || s == K::Receive || s == K::Accept)
    path.push_back({x, K::Release});
  if (s != K::Transfer) path.push_back({x, K::Transfer});
  path.push_back({y, K::Transfer});
  if (t == K::Transfer) return path;

  const bool refined = target_stages.contains(K::Arrive) || target_stages.contains(K::Accept) ||
                       t == K::Arrive || t == K::Accept;
  std::vector<K> entry = refined ? std::vector<K>{K::Arrive, K::Accept} : std::vector<K>{K::Receive};
  for (auto k : entry) {
    path.push_back({y, k});
    if (k == t) return path;
  }
  path.push_back(a.to);
  return path;
}

}  // namespace

DesugarResult desugar(const StaticModel& model) {
  if (model.notation() != Notation::Simplified)
    throw DesugarError("model '" + model.name() + "' is already in full notation");
  if (has_errors(validate_static(model)))
    throw DesugarError("model '" + model.name() + "' does not validate in simplified notation");

  ModelDecl decl = to_decl(model);
  decl.notation = Notation::Full;

  std::unordered_set<std::string> ids;
  for (const auto& t : decl.thimacs) ids.insert(t.id);
  for (const auto& a : decl.arcs) ids.insert(a.id);

  auto add_stage = [&](const StageRef& r) {
    auto& t = *std::find_if(decl.thimacs.begin(), decl.thimacs.end(),
                            [&](const ThimacDecl& x) { return x.id == r.thimac; });
    if (std::find(t.stages.begin(), t.stages.end(), r.kind) == t.stages.end()) {
      t.stages.push_back(r.kind);
      std::sort(t.stages.begin(), t.stages.end());
    }
  };

  DesugarResult result;
  auto is_elided = [](const ArcDecl& a) {
    return a.kind == ArcKind::Flow && a.from.thimac != a.to.thimac &&
           !(a.from.kind == K::Transfer && a.to.kind == K::Transfer);
  };
  // Arcs that survive unchanged; chains reuse them where they coincide.
  std::vector<ArcDecl> kept;
  for (const auto& a : decl.arcs)
    if (!is_elided(a)) kept.push_back(a);

  std::vector<ArcDecl> out;
  for (const auto& a : decl.arcs) {
    if (!is_elided(a)) {
      out.push_back(a);
      continue;
    }
    const Arc& arc = *model.find_arc(a.id);
    auto path = chain_for(arc, model.find_thimac(arc.to.thimac)->stages);
    result.chain_stages[arc.id] = path;
    auto& exp = result.expansion[arc.id];
    int serial = 0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      add_stage(path[i]);
      add_stage(path[i + 1]);
      ArcKind kind =
          path[i + 1].kind == K::Create && i + 2 == path.size() ? ArcKind::Trigger : ArcKind::Flow;
      const ArcDecl* existing = nullptr;
      for (const auto* pool : {&kept, &out})
        for (const auto& x : *pool)
          if (!existing && x.kind == kind && x.from == path[i] && x.to == path[i + 1]) existing = &x;
      if (existing) {
        exp.push_back(existing->id);
        continue;
      }
      std::string id;
      do {
        id = arc.id + "_" + std::to_string(++serial);
      } while (ids.contains(id));
      ids.insert(id);
      out.push_back(ArcDecl{id, kind, path[i], path[i + 1], arc.span});
      exp.push_back(id);
    }
  }
  decl.arcs = std::move(out);
  result.model = build_model(decl);
  return result;
}

Document desugar_document(const Document& doc) {
  StaticModel simplified = build_model(doc.model);
  DesugarResult r = desugar(simplified);

  Document out = doc;
  ModelDecl full = to_decl(r.model);
  full.span = doc.model.span;
  out.model = std::move(full);

  for (auto& s : out.subdiagrams) {
    std::vector<ArcId> arcs;
    std::vector<StageRef> stages = s.stages;
    for (const auto& id : s.arcs) {
      auto it = r.expansion.find(id);
      if (it == r.expansion.end()) {
        arcs.push_back(id);
        continue;
      }
      for (const auto& x : it->second)
        if (std::find(arcs.begin(), arcs.end(), x) == arcs.end()) arcs.push_back(x);
      for (const auto& st : r.chain_stages.at(id))
        if (std::find(stages.begin(), stages.end(), st) == stages.end()) stages.push_back(st);
    }
    s.arcs = std::move(arcs);
    s.stages = std::move(stages);
  }
  return out;
}

}  // namespace thimac
