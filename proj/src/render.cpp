#include "thimac/render.hpp"

#include <map>
#include <sstream>

#include "thimac/behavior.hpp"
#include "thimac/eventize.hpp"
#include "thimac/model.hpp"

namespace thimac {

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + '"';
}

const char* kEmphasis = ", color=red, penwidth=2";

class DotWriter {
 public:
  DotWriter(const RenderOptions& opt) : opt_(opt) {}

  bool hot(const std::string& id) {
    if (!opt_.highlight.contains(id)) return false;
    used_.insert(id);
    return true;
  }
  std::string emphasis(const std::string& id) { return hot(id) ? kEmphasis : ""; }

  void check_highlights() const {
    for (const auto& id : opt_.highlight)
      if (!used_.contains(id)) throw UnknownHighlightId(id);
  }

  std::ostringstream out;

 private:
  const RenderOptions& opt_;
  std::set<std::string> used_;
};

void emit_cluster(DotWriter& w, const StaticModel& model, std::size_t index, bool nest,
                  int depth) {
  const Thimac& t = model.thimacs()[index];
  std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  w.out << pad << "subgraph " << quote("cluster_" + t.id) << " {\n";
  w.out << pad << "  label=" << quote(t.label.empty() ? t.id : t.label) << ";\n";
  if (w.hot(t.id)) w.out << pad << "  color=red; penwidth=2;\n";
  for (StageKind k : t.stages.kinds()) {
    std::string id = to_string(StageRef{t.id, k});
    w.out << pad << "  " << quote(id) << " [label=" << quote(to_string(k))
          << w.emphasis(id) << "];\n";
  }
  if (t.memory) w.out << pad << "  " << quote(t.id + ".memory") << " [label=\"memory\", shape=cylinder];\n";
  if (nest)
    for (std::size_t child : t.children) emit_cluster(w, model, child, nest, depth + 1);
  w.out << pad << "}\n";
}

void emit_static(DotWriter& w, const StaticModel& model, bool nest) {
  if (nest) {
    for (std::size_t r : model.roots()) emit_cluster(w, model, r, true, 1);
  } else {
    for (std::size_t i = 0; i < model.thimacs().size(); ++i) emit_cluster(w, model, i, false, 1);
  }
  for (const Arc& a : model.arcs()) {
    w.out << "  " << quote(to_string(a.from)) << " -> " << quote(to_string(a.to))
          << " [id=" << quote(a.id) << ", style=" << (a.kind == ArcKind::Flow ? "solid" : "dashed")
          << w.emphasis(a.id) << "];\n";
  }
}

void emit_overlay(DotWriter& w, const Document& doc) {
  std::map<std::string, std::vector<std::string>> events_of;
  for (const auto& e : doc.events) events_of[e.subdiagram].push_back(e.id);
  for (const auto& s : doc.subdiagrams) {
    std::string label = s.id;
    if (!s.label.empty()) label += ": " + s.label;
    bool lit = w.hot(s.id);
    for (const auto& e : events_of[s.id]) {
      lit = w.hot(e) || lit;
      label += "\n" + e;
    }
    w.out << "  " << quote(s.id) << " [shape=box, style=rounded, label=" << quote(label)
          << (lit ? kEmphasis : "") << "];\n";
    for (const auto& st : s.stages)
      w.out << "  " << quote(s.id) << " -> " << quote(to_string(st))
            << " [style=dotted, arrowhead=none];\n";
  }
}

void emit_behavior(DotWriter& w, const Chronology& chron) {
  for (std::size_t i = 0; i < chron.size(); ++i) {
    const auto& id = chron.event(i);
    std::string label = id;
    if (!chron.label(i).empty()) label += "\n" + chron.label(i);
    std::string groups;
    for (std::size_t g : chron.groups_of(i)) {
      if (!groups.empty()) groups += ",";
      groups += chron.groups()[g].name;
    }
    w.out << "  " << quote(id) << " [shape=ellipse, label=" << quote(label);
    if (!groups.empty()) w.out << ", xlabel=" << quote("xor:" + groups);
    if (chron.is_start(i)) w.out << ", peripheries=2";
    w.out << w.emphasis(id) << "];\n";
  }
  for (const auto& [from, to] : chron.edges())
    w.out << "  " << quote(from) << " -> " << quote(to) << ";\n";
  if (!chron.groups().empty()) {
    std::string legend;
    for (const auto& g : chron.groups()) {
      legend += g.name + ": ";
      for (std::size_t k = 0; k < g.members.size(); ++k)
        legend += (k ? " | " : "") + chron.event(g.members[k]);
      legend += "\n";
    }
    w.out << "  label=" << quote(legend) << ";\n";
  }
}

}  // namespace

std::optional<RenderLevel> parse_render_level(std::string_view s) {
  if (s == "static") return RenderLevel::Static;
  if (s == "overlay") return RenderLevel::Overlay;
  if (s == "behavior") return RenderLevel::Behavior;
  return std::nullopt;
}

std::string to_dot(const Document& doc, const RenderOptions& opt) {
  StaticModel model = build_model(doc.model);
  DotWriter w(opt);
  w.out << "digraph " << quote(model.name()) << " {\n";
  switch (opt.level) {
    case RenderLevel::Static:
      emit_static(w, model, opt.nest_clusters);
      break;
    case RenderLevel::Overlay:
      emit_static(w, model, opt.nest_clusters);
      emit_overlay(w, doc);
      break;
    case RenderLevel::Behavior: {
      if (doc.chronologies.empty()) break;
      const ChronologyDecl* decl =
          opt.chronology.empty() ? &doc.chronologies.front() : doc.find_chronology(opt.chronology);
      if (!decl) throw std::invalid_argument("unknown chronology '" + opt.chronology + "'");
      std::vector<Subdiagram> subs;
      for (const auto& s : doc.subdiagrams) subs.push_back(to_subdiagram(s));
      auto ev = eventize(subs, doc.events);
      emit_behavior(w, build_chronology(ev.events, *decl));
      break;
    }
  }
  w.out << "}\n";
  w.check_highlights();
  return w.out.str();
}

}  // namespace thimac
