#include "thimac/runs.hpp"

#include <algorithm>

namespace thimac {

namespace {

class RunSearch {
 public:
  RunSearch(const Chronology& c, std::size_t bound)
      : c_(c), bound_(bound), included_(c.size(), false), rank_(c.size()) {
    const auto& topo = c.topological_order();
    for (std::size_t t = 0; t < topo.size(); ++t) rank_[topo[t]] = t;
  }

  std::vector<std::vector<std::size_t>> run() {
    if (c_.size() > 0) descend(0);
    std::sort(found_.begin(), found_.end());
    return found_;
  }

 private:
  void descend(std::size_t t) {
    const auto& topo = c_.topological_order();
    if (t == topo.size()) {
      record();
      return;
    }
    const std::size_t e = topo[t];
    if (can_include(e)) {
      included_[e] = true;
      descend(t + 1);
      included_[e] = false;
    }
    if (exclusion_keeps_hope(e, t)) descend(t + 1);
  }

  bool can_include(std::size_t e) const {
    for (auto g : c_.groups_of(e))
      for (auto m : c_.groups()[g].members)
        if (m != e && included_[m]) return false;
    if (c_.is_start(e)) return true;
    const auto& p = c_.predecessors(e);
    return std::any_of(p.begin(), p.end(), [&](auto x) { return included_[x]; });
  }

  // Excluding e must not strand an included predecessor whose last chance of
  // a successor was e.
  bool exclusion_keeps_hope(std::size_t e, std::size_t t) const {
    for (auto p : c_.predecessors(e)) {
      if (!included_[p] || c_.is_end(p)) continue;
      bool alive = false;
      for (auto s : c_.successors(p))
        if (s != e && (rank_[s] > t || included_[s])) alive = true;
      if (!alive) return false;
    }
    return true;
  }

  void record() {
    std::vector<std::size_t> seq;
    bool started = false;
    for (auto e : c_.topological_order()) {
      if (!included_[e]) continue;
      seq.push_back(e);
      started = started || c_.is_start(e);
      if (!c_.is_end(e)) {
        const auto& s = c_.successors(e);
        if (std::none_of(s.begin(), s.end(), [&](auto x) { return included_[x]; })) return;
      }
    }
    if (!started) return;
    found_.push_back(std::move(seq));
    if (found_.size() > bound_)
      throw BoundExceeded("chronology " + c_.id() + " has more than " + std::to_string(bound_) +
                          " runs");
  }

  const Chronology& c_;
  std::size_t bound_;
  std::vector<bool> included_;
  std::vector<std::size_t> rank_;
  std::vector<std::vector<std::size_t>> found_;
};

}  // namespace

std::vector<std::vector<EventId>> enumerate_runs(const Chronology& chronology, std::size_t bound) {
  if (bound < chronology.size())
    throw std::invalid_argument("run bound " + std::to_string(bound) +
                                " is below the number of events (" +
                                std::to_string(chronology.size()) + ")");
  std::vector<std::vector<EventId>> out;
  for (const auto& seq : RunSearch(chronology, bound).run()) {
    std::vector<EventId> ids;
    for (auto e : seq) ids.push_back(chronology.event(e));
    out.push_back(std::move(ids));
  }
  return out;
}

Trace trace_of_run(const std::vector<EventId>& run, std::string id) {
  Trace t;
  t.id = std::move(id);
  for (std::size_t i = 0; i < run.size(); ++i)
    t.occurrences.push_back({run[i], static_cast<Timestamp>(i)});
  return t;
}

}  // namespace thimac
