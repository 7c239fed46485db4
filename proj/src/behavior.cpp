#include "thimac/behavior.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace thimac {

std::optional<std::size_t> Chronology::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<EventId, EventId>> Chronology::edges() const {
  std::vector<std::pair<EventId, EventId>> out;
  for (std::size_t i = 0; i < size(); ++i)
    for (auto j : succ_[i]) out.emplace_back(events_[i], events_[j]);
  return out;
}

bool Chronology::exclusive_with(std::size_t i, std::size_t j) const {
  if (i == j) return false;
  for (auto g : groups_of_[i]) {
    const auto& m = groups_[g].members;
    if (std::find(m.begin(), m.end(), j) != m.end()) return true;
  }
  return false;
}

std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::NotStarted: return "NotStarted";
    case ViolationKind::OrderViolation: return "OrderViolation";
    case ViolationKind::ExclusivityViolation: return "ExclusivityViolation";
    case ViolationKind::MissingSuccessor: return "MissingSuccessor";
    case ViolationKind::MissingPredecessor: return "MissingPredecessor";
    case ViolationKind::UnknownEvent: return "UnknownEvent";
    case ViolationKind::WindowViolation: return "WindowViolation";
    case ViolationKind::MalformedTrace: return "MalformedTrace";
  }
  return "?";
}

std::string Verdict::summary() const {
  std::ostringstream os;
  if (truth) {
    os << "TRUE run=[";
    for (std::size_t i = 0; i < run.size(); ++i) os << (i ? "," : "") << run[i];
    os << ']';
    return os.str();
  }
  os << "FALSE reason=" << to_string(violation->kind);
  if (violation->kind == ViolationKind::NotStarted) return os.str();
  os << '(';
  if (!violation->group.empty()) os << violation->group << ':';
  for (std::size_t i = 0; i < violation->events.size(); ++i)
    os << (i ? "," : "") << violation->events[i];
  os << ')';
  return os.str();
}

namespace {

Diagnostic chrono_error(const ChronologyDecl& d, std::string code, std::string msg,
                        std::vector<std::string> elements) {
  elements.insert(elements.begin(), d.id);
  return Diagnostic{std::move(code), Severity::Error, d.span, std::move(msg), std::move(elements)};
}

}  // namespace

Chronology build_chronology(const std::vector<Event>& events, const ChronologyDecl& decl) {
  std::vector<Diagnostic> errors;
  std::unordered_map<std::string, const Event*> known;
  for (const auto& e : events) known.emplace(e.id, &e);

  std::set<EventId> members;
  auto mention = [&](const EventId& id) {
    if (!known.contains(id)) {
      errors.push_back(chrono_error(decl, "E-CHRONO-UNKNOWN",
                                    "chronology " + decl.id + " mentions unknown event '" + id + "'",
                                    {id}));
      return;
    }
    members.insert(id);
  };
  for (const auto& e : decl.events) mention(e);
  for (const auto& [a, b] : decl.edges) {
    mention(a);
    mention(b);
  }
  for (const auto& g : decl.exclusive)
    for (const auto& m : g.members) mention(m);
  for (const auto& e : decl.start) mention(e);
  for (const auto& e : decl.end) mention(e);

  Chronology c;
  c.id_ = decl.id;
  for (const auto& e : events) {
    if (!members.contains(e.id) || c.index_.contains(e.id)) continue;
    c.index_.emplace(e.id, c.events_.size());
    c.events_.push_back(e.id);
    c.windows_.push_back(e.window);
    c.subdiagrams_.push_back(e.subdiagram);
    c.labels_.push_back(e.label);
  }
  const std::size_t n = c.events_.size();
  c.succ_.assign(n, {});
  c.pred_.assign(n, {});
  c.groups_of_.assign(n, {});

  for (const auto& [a, b] : decl.edges) {
    auto ia = c.index_of(a), ib = c.index_of(b);
    if (!ia || !ib) continue;
    if (*ia == *ib) {
      errors.push_back(chrono_error(decl, "E-CHRONO-CYCLE",
                                    "event " + a + " precedes itself", {a}));
      continue;
    }
    auto& s = c.succ_[*ia];
    if (std::find(s.begin(), s.end(), *ib) != s.end()) continue;
    s.push_back(*ib);
    c.pred_[*ib].push_back(*ia);
  }
  for (auto& s : c.succ_) std::sort(s.begin(), s.end());
  for (auto& p : c.pred_) std::sort(p.begin(), p.end());

  for (std::size_t gi = 0; gi < decl.exclusive.size(); ++gi) {
    const auto& g = decl.exclusive[gi];
    ExclusiveGroup grp;
    grp.name = g.name.empty() ? "group" + std::to_string(gi + 1) : g.name;
    for (const auto& m : g.members)
      if (auto i = c.index_of(m);
          i && std::find(grp.members.begin(), grp.members.end(), *i) == grp.members.end())
        grp.members.push_back(*i);
    if (grp.members.size() < 2) {
      errors.push_back(chrono_error(decl, "E-CHRONO-GROUP",
                                    "exclusive group " + grp.name + " needs two distinct events",
                                    {grp.name}));
      continue;
    }
    for (auto x : grp.members)
      for (auto y : grp.members)
        if (std::find(c.succ_[x].begin(), c.succ_[x].end(), y) != c.succ_[x].end())
          errors.push_back(chrono_error(
              decl, "E-CHRONO-EXCLUSIVE-EDGE",
              "exclusive group " + grp.name + " has an edge " + c.events_[x] + " -> " + c.events_[y],
              {c.events_[x], c.events_[y]}));
    std::size_t index = c.groups_.size();
    for (auto x : grp.members) c.groups_of_[x].push_back(index);
    c.groups_.push_back(std::move(grp));
  }

  // Kahn's algorithm, smallest index first.
  std::vector<std::size_t> indeg(n);
  for (std::size_t i = 0; i < n; ++i) indeg[i] = c.pred_[i].size();
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.insert(i);
  while (!ready.empty()) {
    std::size_t i = *ready.begin();
    ready.erase(ready.begin());
    c.topo_.push_back(i);
    for (auto j : c.succ_[i])
      if (--indeg[j] == 0) ready.insert(j);
  }
  if (c.topo_.size() != n) {
    // Walk predecessors inside the residue until a node repeats.
    std::size_t at = 0;
    while (indeg[at] == 0) ++at;
    std::vector<std::size_t> walk;
    std::vector<int> seen_at(n, -1);
    while (seen_at[at] < 0) {
      seen_at[at] = static_cast<int>(walk.size());
      walk.push_back(at);
      for (auto p : c.pred_[at])
        if (indeg[p] > 0) {
          at = p;
          break;
        }
    }
    std::vector<std::size_t> cycle(walk.begin() + seen_at[at], walk.end());
    std::reverse(cycle.begin(), cycle.end());
    std::string text;
    std::vector<std::string> ids;
    for (auto i : cycle) {
      text += c.events_[i] + " -> ";
      ids.push_back(c.events_[i]);
    }
    text += c.events_[cycle.front()];
    errors.push_back(chrono_error(decl, "E-CHRONO-CYCLE", "cycle " + text, ids));
  }

  c.start_.assign(n, false);
  c.end_.assign(n, false);
  if (decl.start.empty()) {
    for (std::size_t i = 0; i < n; ++i) c.start_[i] = c.pred_[i].empty();
  } else {
    for (const auto& e : decl.start)
      if (auto i = c.index_of(e)) c.start_[*i] = true;
  }
  if (decl.end.empty()) {
    for (std::size_t i = 0; i < n; ++i) c.end_[i] = c.succ_[i].empty();
  } else {
    for (const auto& e : decl.end)
      if (auto i = c.index_of(e)) c.end_[*i] = true;
  }

  if (!errors.empty()) throw ChronologyError(std::move(errors));
  return c;
}

Verdict evaluate_trace(const Chronology& c, const Trace& trace) {
  Verdict v;
  auto reject = [&](ViolationKind k, std::vector<EventId> evs, std::string group = {},
                    std::string detail = {}) {
    v.truth = false;
    v.violation = Violation{k, std::move(evs), std::move(group), std::move(detail)};
    return v;
  };
  if (trace.occurrences.empty()) return reject(ViolationKind::NotStarted, {});

  constexpr std::size_t none = static_cast<std::size_t>(-1);
  const std::size_t n = c.size();
  std::vector<std::size_t> position(n, none);
  std::vector<Timestamp> time(n, 0);
  std::vector<std::size_t> taken(c.groups().size(), none);
  std::vector<std::size_t> order;
  order.reserve(trace.occurrences.size());

  for (std::size_t k = 0; k < trace.occurrences.size(); ++k) {
    const auto& occ = trace.occurrences[k];
    auto idx = c.index_of(occ.event);
    if (!idx) return reject(ViolationKind::UnknownEvent, {occ.event});
    const std::size_t e = *idx;
    if (position[e] != none)
      return reject(ViolationKind::MalformedTrace, {occ.event}, {}, "event occurs twice");
    if (k > 0 && occ.time < trace.occurrences[k - 1].time)
      return reject(ViolationKind::MalformedTrace, {occ.event}, {}, "timestamp decreases");

    for (auto g : c.groups_of(e))
      if (taken[g] != none)
        return reject(ViolationKind::ExclusivityViolation, {c.event(taken[g]), occ.event},
                      c.groups()[g].name);
    for (auto s : c.successors(e))
      if (position[s] != none) return reject(ViolationKind::OrderViolation, {occ.event, c.event(s)});
    for (auto p : c.predecessors(e))
      if (position[p] != none && time[p] == occ.time)
        return reject(ViolationKind::OrderViolation, {c.event(p), occ.event}, {},
                      "ordered events share a timestamp");
    if (const auto& w = c.window(e); w && !w->contains(occ.time))
      return reject(ViolationKind::WindowViolation, {occ.event});

    position[e] = k;
    time[e] = occ.time;
    for (auto g : c.groups_of(e)) taken[g] = e;
    order.push_back(e);
  }

  bool started = std::any_of(order.begin(), order.end(), [&](auto e) { return c.is_start(e); });
  if (!started) return reject(ViolationKind::NotStarted, {});

  for (auto e : order) {
    auto occurred = [&](std::size_t x) { return position[x] != none; };
    const auto& preds = c.predecessors(e);
    if (!c.is_start(e) && std::none_of(preds.begin(), preds.end(), occurred))
      return reject(ViolationKind::MissingPredecessor, {c.event(e)});
    const auto& succs = c.successors(e);
    if (!c.is_end(e) && std::none_of(succs.begin(), succs.end(), occurred))
      return reject(ViolationKind::MissingSuccessor, {c.event(e)});
  }

  v.truth = true;
  for (auto e : order) v.run.push_back(c.event(e));
  return v;
}

bool truth_of_event(const Trace& trace, std::string_view event) {
  return std::any_of(trace.occurrences.begin(), trace.occurrences.end(),
                     [&](const Occurrence& o) { return o.event == event; });
}

}  // namespace thimac
