#include "thimac/simulator.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

namespace thimac {

namespace {

bool is_member_kind(StageKind k) {
  return k == StageKind::Create || k == StageKind::Receive || k == StageKind::Accept ||
         k == StageKind::Process;
}

const AtStage* at_stage(const ThingInstance& inst) { return std::get_if<AtStage>(&inst.location); }

/// The thing currently belongs to machine `m`.
bool member_of(const ThingInstance& inst, const ThimacId& m) {
  const auto* at = at_stage(inst);
  return at && at->stage.thimac == m && is_member_kind(at->stage.kind);
}

bool located_at(const ThingInstance& inst, const ThimacId& m, StageKind k) {
  const auto* at = at_stage(inst);
  return at && at->stage.thimac == m && at->stage.kind == k;
}

[[noreturn]] void illegal(const StageRef& stage, const std::string& why) {
  throw SimulationError(SimErrorKind::IllegalAction,
                        "illegal action at " + to_string(stage) + ": " + why, stage);
}

/// Things a stage would pick up when nothing is delivered to it.
std::vector<InstanceId> present_at(const SimState& s, const StageRef& stage) {
  std::vector<InstanceId> out;
  for (const auto& inst : s.instances) {
    bool here = false;
    switch (stage.kind) {
      case StageKind::Create:
      case StageKind::Process:
      case StageKind::Receive:
      case StageKind::Accept:
        here = member_of(inst, stage.thimac);
        break;
      case StageKind::Release:
      case StageKind::Transfer:
      case StageKind::Arrive:
        here = located_at(inst, stage.thimac, stage.kind);
        break;
    }
    if (here) out.push_back(inst.id);
  }
  return out;
}

/// Things satisfying the precondition of the action at `stage`.
std::vector<InstanceId> candidates_for(const SimState& s, const StageRef& stage) {
  std::vector<InstanceId> out;
  for (const auto& inst : s.instances) {
    bool ok = false;
    switch (stage.kind) {
      case StageKind::Create:
        break;
      case StageKind::Process:
      case StageKind::Release:
        ok = member_of(inst, stage.thimac);
        break;
      case StageKind::Transfer:
        ok = located_at(inst, stage.thimac, StageKind::Release);
        break;
      case StageKind::Receive:
      case StageKind::Arrive:
        ok = located_at(inst, stage.thimac, StageKind::Transfer);
        break;
      case StageKind::Accept:
        ok = located_at(inst, stage.thimac, StageKind::Arrive);
        break;
    }
    if (ok) out.push_back(inst.id);
  }
  return out;
}

std::string next_label(const SimState& s, const Thimac& t) {
  for (const auto& label : t.things)
    if (!s.created_labels.contains(label)) return label;
  if (!t.things.empty()) return {};
  const std::string& label = t.label.empty() ? t.id : t.label;
  return s.created_labels.contains(label) ? std::string{} : label;
}

}  // namespace

std::string to_string(const Location& loc) {
  if (const auto* at = std::get_if<AtStage>(&loc)) return to_string(at->stage);
  if (const auto* tr = std::get_if<InTransit>(&loc)) return "in-transit(" + tr->arc + ")";
  return "retired";
}

std::vector<InstanceId> SimState::live() const {
  std::vector<InstanceId> out;
  for (const auto& inst : instances)
    if (!std::holds_alternative<Retired>(inst.location)) out.push_back(inst.id);
  return out;
}

std::string_view to_string(SimErrorKind k) {
  switch (k) {
    case SimErrorKind::IllegalAction: return "IllegalAction";
    case SimErrorKind::NotEnabled: return "NotEnabled";
    case SimErrorKind::Deadlock: return "Deadlock";
    case SimErrorKind::UnscriptedChoice: return "UnscriptedChoice";
    case SimErrorKind::UnknownEvent: return "UnknownEvent";
  }
  return "?";
}

SimulationError::SimulationError(SimErrorKind kind, std::string message,
                                 std::optional<StageRef> stage, std::string event)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      stage_(std::move(stage)),
      event_(std::move(event)) {}

SimState action_step(SimState s, const StaticModel& model, const StageRef& stage,
                     std::optional<InstanceId> instance, const Arc* via) {
  auto found = model.lookup(stage);
  if (!found.found) illegal(stage, "no such stage");
  const Thimac& machine = *found.owner;

  auto record = [&](InstanceId id, Location from, Location to) {
    s.actions.push_back({s.step, stage, id, std::move(from), std::move(to)});
  };

  if (stage.kind == StageKind::Create) {
    std::string label = next_label(s, machine);
    if (label.empty()) illegal(stage, "every thing of " + machine.id + " already exists");
    ThingInstance inst{s.instances.size(), label, AtStage{stage}, {}};
    s.created_labels.insert(label);
    record(inst.id, Retired{}, inst.location);
    s.instances.push_back(std::move(inst));
    return s;
  }

  if (!instance || *instance >= s.instances.size()) illegal(stage, "no thing to act on");
  ThingInstance& inst = s.instances[*instance];
  if (std::holds_alternative<Retired>(inst.location))
    illegal(stage, "thing '" + inst.label + "' is retired");
  const Location before = inst.location;
  const ThimacId& m = stage.thimac;

  auto move_to = [&](StageKind k) {
    inst.location = AtStage{{m, k}};
    record(inst.id, before, inst.location);
  };

  switch (stage.kind) {
    case StageKind::Create:
      break;
    case StageKind::Process:
      if (!member_of(inst, m)) illegal(stage, "'" + inst.label + "' is not inside " + m);
      inst.tags.push_back("processed@" + m);
      record(inst.id, before, inst.location);
      break;
    case StageKind::Release:
      if (!member_of(inst, m)) illegal(stage, "'" + inst.label + "' is not inside " + m);
      move_to(StageKind::Release);
      break;
    case StageKind::Transfer: {
      if (located_at(inst, m, StageKind::Release)) {
        move_to(StageKind::Transfer);
        break;
      }
      const auto* at = at_stage(inst);
      bool hop = at && at->stage.kind == StageKind::Transfer && at->stage.thimac != m && via &&
                 via->kind == ArcKind::Flow && via->from == at->stage && via->to == stage;
      if (!hop) illegal(stage, "'" + inst.label + "' cannot be transferred here");
      Location transit = InTransit{via->id};
      record(inst.id, before, transit);
      inst.location = AtStage{stage};
      record(inst.id, transit, inst.location);
      break;
    }
    case StageKind::Receive:
    case StageKind::Arrive:
      if (!located_at(inst, m, StageKind::Transfer))
        illegal(stage, "'" + inst.label + "' is not at " + m + ".transfer");
      move_to(stage.kind);
      break;
    case StageKind::Accept:
      if (!located_at(inst, m, StageKind::Arrive))
        illegal(stage, "'" + inst.label + "' has not arrived at " + m);
      move_to(StageKind::Accept);
      break;
  }
  return s;
}

bool enabled(const SimState& s, const Chronology& chron, std::size_t i) {
  const EventId& id = chron.event(i);
  if (s.logged(id) || s.forbidden.contains(id)) return false;
  for (std::size_t g : chron.groups_of(i))
    for (std::size_t mate : chron.groups()[g].members)
      if (mate != i && s.logged(chron.event(mate))) return false;
  if (const auto& w = chron.window(i); w && static_cast<Timestamp>(s.step) > w->end) return false;
  if (chron.is_start(i)) return true;
  for (std::size_t p : chron.predecessors(i))
    if (s.logged(chron.event(p))) return true;
  return false;
}

SimState fire_event(SimState s, const StaticModel& model,
                    const std::vector<Subdiagram>& subdiagrams, const Chronology& chron,
                    std::string_view event) {
  auto idx = chron.index_of(event);
  if (!idx)
    throw SimulationError(SimErrorKind::UnknownEvent,
                          "event '" + std::string(event) + "' is not in the chronology", {},
                          std::string(event));
  if (!enabled(s, chron, *idx))
    throw SimulationError(SimErrorKind::NotEnabled,
                          "event '" + std::string(event) + "' is not enabled", {},
                          std::string(event));
  const auto& sub_id = chron.subdiagram(*idx);
  auto sub_it = std::find_if(subdiagrams.begin(), subdiagrams.end(),
                             [&](const Subdiagram& d) { return d.id == sub_id; });
  if (sub_it == subdiagrams.end())
    throw SimulationError(SimErrorKind::UnknownEvent, "subdiagram '" + sub_id + "' not found",
                          {}, std::string(event));
  const Subdiagram& sub = *sub_it;

  if (const auto& w = chron.window(*idx); w && static_cast<Timestamp>(s.step) < w->begin)
    s.step = static_cast<std::size_t>(w->begin);

  std::vector<const Arc*> flows, triggers;
  for (const Arc& a : model.arcs()) {
    if (!sub.arcs.contains(a.id)) continue;
    (a.kind == ArcKind::Flow ? flows : triggers).push_back(&a);
  }
  std::set<StageRef> trigger_targets;
  for (const Arc* t : triggers) trigger_targets.insert(t->to);

  // Stages in flow order; ties follow model order.
  std::vector<StageRef> order;
  {
    std::vector<StageRef> nodes;
    for (const auto& st : model.stages())
      if (sub.stages.contains(st)) nodes.push_back(st);
    std::map<StageRef, std::size_t> indeg;
    for (const auto& n : nodes) indeg[n] = 0;
    for (const Arc* f : flows) ++indeg[f->to];
    std::set<StageRef> done;
    while (order.size() < nodes.size()) {
      auto next = std::find_if(nodes.begin(), nodes.end(), [&](const StageRef& n) {
        return !done.contains(n) && indeg[n] == 0;
      });
      if (next == nodes.end())
        throw SimulationError(SimErrorKind::IllegalAction,
                              "flows of " + sub.id + " form a cycle", {}, std::string(event));
      done.insert(*next);
      order.push_back(*next);
      for (const Arc* f : flows)
        if (f->from == *next) --indeg[f->to];
    }
  }

  std::map<StageRef, std::vector<InstanceId>> tokens;
  std::map<StageRef, std::vector<std::pair<InstanceId, const Arc*>>> inbox;
  std::set<StageRef> created;

  auto create_at = [&](const StageRef& st) {
    s = action_step(std::move(s), model, st);
    created.insert(st);
    return s.instances.back().id;
  };

  for (const auto& st : order) {
    std::vector<const Arc*> in, out;
    for (const Arc* f : flows) {
      if (f->to == st) in.push_back(f);
      if (f->from == st) out.push_back(f);
    }
    std::vector<InstanceId>& here = tokens[st];
    if (in.empty() && out.empty()) {
      if (trigger_targets.contains(st)) continue;
      if (st.kind == StageKind::Create) {
        here.push_back(create_at(st));
      } else {
        here = candidates_for(s, st);
        if (here.empty()) illegal(st, "no thing is ready here");
        for (InstanceId id : here) s = action_step(std::move(s), model, st, id);
      }
    } else if (in.empty()) {
      here = present_at(s, st);
      if (here.empty() && st.kind == StageKind::Create) here.push_back(create_at(st));
    } else {
      const auto& delivered = inbox[st];
      if (delivered.empty()) illegal(st, "no thing reaches this stage");
      for (const auto& [id, arc] : delivered) {
        s = action_step(std::move(s), model, st, id, arc);
        here.push_back(id);
      }
    }
    if (!out.empty())
      for (InstanceId id : here) inbox[out.front()->to].emplace_back(id, out.front());
  }

  for (const Arc* t : triggers) s.pending.push_back({t->id, t->from, t->to, tokens[t->from]});
  while (!s.pending.empty()) {
    PendingTrigger trig = std::move(s.pending.front());
    s.pending.pop_front();
    if (trig.target.kind == StageKind::Create) {
      if (created.contains(trig.target)) continue;
      create_at(trig.target);
      if (trig.source.thimac == trig.target.thimac) {
        for (InstanceId id : trig.carriers) {
          auto& inst = s.instances[id];
          if (std::holds_alternative<Retired>(inst.location)) continue;
          Location before = inst.location;
          inst.location = Retired{};
          s.actions.push_back({s.step, trig.target, id, before, Retired{}});
        }
      }
    } else {
      auto ready = candidates_for(s, trig.target);
      if (ready.empty()) illegal(trig.target, "triggered with no thing ready");
      for (InstanceId id : ready) s = action_step(std::move(s), model, trig.target, id);
    }
  }

  s.log.occurrences.push_back({std::string(event), static_cast<Timestamp>(s.step)});
  ++s.step;
  for (std::size_t p : chron.predecessors(*idx))
    if (!s.logged(chron.event(p))) s.forbidden.insert(chron.event(p));
  return s;
}

namespace {

class Chooser {
 public:
  Chooser(const Chronology& chron, const BranchPolicy& policy) : chron_(chron), policy_(policy) {
    if (const auto* seeded = std::get_if<Seeded>(&policy)) rng_.seed(seeded->seed);
  }

  std::size_t pick(const std::vector<std::size_t>& options) {
    if (std::holds_alternative<Seeded>(policy_)) {
      if (options.size() == 1) return options.front();
      return options[rng_() % options.size()];
    }
    const auto& choices = std::get<Scripted>(policy_).choices;
    for (std::size_t o : options)
      for (std::size_t g : chron_.groups_of(o)) {
        auto it = choices.find(chron_.groups()[g].name);
        if (it != choices.end() && it->second == chron_.event(o)) return o;
      }
    if (options.size() == 1) return options.front();
    for (std::size_t o : options)
      for (std::size_t g : chron_.groups_of(o)) {
        const auto& members = chron_.groups()[g].members;
        bool rival = std::any_of(options.begin(), options.end(), [&](std::size_t p) {
          return p != o && std::find(members.begin(), members.end(), p) != members.end();
        });
        if (rival)
          throw SimulationError(SimErrorKind::UnscriptedChoice,
                                "no choice given for group '" + chron_.groups()[g].name + "'");
      }
    return options.front();
  }

 private:
  const Chronology& chron_;
  const BranchPolicy& policy_;
  std::mt19937_64 rng_;
};

}  // namespace

SimulationResult run_simulation(const StaticModel& model,
                                const std::vector<Subdiagram>& subdiagrams,
                                const Chronology& chron, const BranchPolicy& policy) {
  SimState s;
  if (const auto* seeded = std::get_if<Seeded>(&policy))
    s.log.id = "sim_seed_" + std::to_string(seeded->seed);
  else
    s.log.id = "sim";
  Chooser chooser(chron, policy);

  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < chron.size(); ++i)
    if (chron.is_start(i) && enabled(s, chron, i)) starts.push_back(i);
  if (starts.empty()) throw SimulationError(SimErrorKind::Deadlock, "no start event can fire");
  s = fire_event(std::move(s), model, subdiagrams, chron, chron.event(chooser.pick(starts)));

  for (;;) {
    std::optional<std::size_t> owed;
    for (const auto& occ : s.log.occurrences) {
      std::size_t i = *chron.index_of(occ.event);
      if (chron.is_end(i)) continue;
      const auto& succ = chron.successors(i);
      bool met = std::any_of(succ.begin(), succ.end(),
                             [&](std::size_t j) { return s.logged(chron.event(j)); });
      if (!met) {
        owed = i;
        break;
      }
    }
    if (!owed) break;
    std::vector<std::size_t> options;
    for (std::size_t j : chron.successors(*owed))
      if (enabled(s, chron, j)) options.push_back(j);
    if (options.empty())
      throw SimulationError(SimErrorKind::Deadlock,
                            "no successor of '" + chron.event(*owed) + "' can fire", {},
                            chron.event(*owed));
    s = fire_event(std::move(s), model, subdiagrams, chron, chron.event(chooser.pick(options)));
  }
  Trace trace = s.log;
  return {std::move(trace), std::move(s)};
}

Trace simulate(const StaticModel& model, const std::vector<Subdiagram>& subdiagrams,
               const Chronology& chron, const BranchPolicy& policy) {
  return run_simulation(model, subdiagrams, chron, policy).trace;
}

}  // namespace thimac
