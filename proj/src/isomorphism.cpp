#include "thimac/isomorphism.hpp"

#include <algorithm>
#include <tuple>
#include <vector>

namespace thimac {

namespace {

// Arc endpoints by thimac index.
struct IArc {
  ArcKind kind;
  std::size_t from;
  StageKind from_kind;
  std::size_t to;
  StageKind to_kind;

  auto key() const { return std::tuple(kind, from, from_kind, to, to_kind); }
};

struct Shape {
  std::vector<std::size_t> parent;  // npos for roots
  std::vector<std::size_t> depth;
  std::vector<std::uint8_t> stages;
  std::vector<std::size_t> nchildren;
  std::vector<IArc> arcs;
  std::vector<std::vector<std::size_t>> incident;  // arc indices per thimac
  // Invariant per thimac, used to prune candidate pairs.
  std::vector<std::vector<std::size_t>> signature;
};

constexpr std::size_t npos = static_cast<std::size_t>(-1);

Shape shape_of(const StaticModel& m) {
  Shape s;
  auto ts = m.thimacs();
  std::size_t n = ts.size();
  s.parent.resize(n);
  s.depth.resize(n);
  s.stages.resize(n);
  s.nchildren.resize(n);
  s.incident.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.parent[i] = ts[i].parent.value_or(npos);
    s.depth[i] = ts[i].parent ? s.depth[*ts[i].parent] + 1 : 0;  // pre-order
    s.stages[i] = ts[i].stages.bits();
    s.nchildren[i] = ts[i].children.size();
  }
  for (const auto& a : m.arcs()) {
    IArc ia{a.kind, *m.thimac_index(a.from.thimac), a.from.kind, *m.thimac_index(a.to.thimac),
            a.to.kind};
    s.incident[ia.from].push_back(s.arcs.size());
    if (ia.to != ia.from) s.incident[ia.to].push_back(s.arcs.size());
    s.arcs.push_back(ia);
  }
  s.signature.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& sig = s.signature[i];
    sig = {s.depth[i], s.stages[i], s.nchildren[i]};
    std::vector<std::size_t> arc_sig;
    for (auto ai : s.incident[i]) {
      const auto& a = s.arcs[ai];
      std::size_t code = static_cast<std::size_t>(a.kind) * 64 +
                         static_cast<std::size_t>(a.from_kind) * 8 +
                         static_cast<std::size_t>(a.to_kind);
      code = code * 4 + (a.from == i ? 1 : 0) + (a.to == i ? 2 : 0);
      arc_sig.push_back(code);
    }
    std::sort(arc_sig.begin(), arc_sig.end());
    sig.insert(sig.end(), arc_sig.begin(), arc_sig.end());
  }
  return s;
}

class Matcher {
 public:
  Matcher(const Shape& a, const Shape& b) : a_(a), b_(b) {
    map_.assign(a.parent.size(), npos);
    used_.assign(b.parent.size(), false);
  }

  bool run() { return extend(0); }
  const std::vector<std::size_t>& mapping() const { return map_; }

 private:
  bool extend(std::size_t i) {
    if (i == map_.size()) return arcs_match();
    for (std::size_t j = 0; j < used_.size(); ++j) {
      if (used_[j] || a_.signature[i] != b_.signature[j]) continue;
      std::size_t pa = a_.parent[i], pb = b_.parent[j];
      // Pre-order guarantees the parent of i is already mapped.
      if ((pa == npos) != (pb == npos)) continue;
      if (pa != npos && map_[pa] != pb) continue;
      map_[i] = j;
      used_[j] = true;
      if (local_arcs_ok(i) && extend(i + 1)) return true;
      used_[j] = false;
      map_[i] = npos;
    }
    return false;
  }

  // Arcs of i whose other endpoint is already mapped must exist in b with
  // the same multiplicity.
  bool local_arcs_ok(std::size_t i) const {
    std::vector<std::tuple<ArcKind, std::size_t, StageKind, std::size_t, StageKind>> want, have;
    for (auto ai : a_.incident[i]) {
      const auto& x = a_.arcs[ai];
      if (map_[x.from] == npos || map_[x.to] == npos) continue;
      want.emplace_back(x.kind, map_[x.from], x.from_kind, map_[x.to], x.to_kind);
    }
    std::size_t j = map_[i];
    for (auto bi : b_.incident[j]) {
      const auto& y = b_.arcs[bi];
      if (!is_image(y.from) || !is_image(y.to)) continue;
      have.push_back(y.key());
    }
    std::sort(want.begin(), want.end());
    std::sort(have.begin(), have.end());
    return want == have;
  }

  bool is_image(std::size_t bj) const { return used_[bj]; }

  bool arcs_match() const {
    std::vector<std::tuple<ArcKind, std::size_t, StageKind, std::size_t, StageKind>> want, have;
    for (const auto& x : a_.arcs)
      want.emplace_back(x.kind, map_[x.from], x.from_kind, map_[x.to], x.to_kind);
    for (const auto& y : b_.arcs) have.push_back(y.key());
    std::sort(want.begin(), want.end());
    std::sort(have.begin(), have.end());
    return want == have;
  }

  const Shape& a_;
  const Shape& b_;
  std::vector<std::size_t> map_;
  std::vector<bool> used_;
};

}  // namespace

IsoResult models_isomorphic(const StaticModel& a, const StaticModel& b, std::size_t bound) {
  std::size_t na = a.thimacs().size(), nb = b.thimacs().size();
  if (na > bound || nb > bound)
    throw SizeLimitExceeded("model has " + std::to_string(std::max(na, nb)) +
                            " thimacs; isomorphism search is bounded at " + std::to_string(bound));
  IsoResult out;
  if (na != nb || a.arcs().size() != b.arcs().size()) return out;

  Shape sa = shape_of(a), sb = shape_of(b);
  Matcher m(sa, sb);
  if (!m.run()) return out;
  out.isomorphic = true;
  auto ta = a.thimacs(), tb = b.thimacs();
  for (std::size_t i = 0; i < na; ++i) out.mapping.emplace(ta[i].id, tb[m.mapping()[i]].id);
  return out;
}

}  // namespace thimac
