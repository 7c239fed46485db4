#include <functional>
#include <sstream>
#include <unordered_map>

#include "thimac/parser.hpp"

namespace thimac {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

template <typename T, typename F>
void join(std::ostream& os, const std::vector<T>& items, std::string_view sep, F fmt) {
  bool first = true;
  for (const auto& x : items) {
    if (!first) os << sep;
    fmt(os, x);
    first = false;
  }
}

void print_model(std::ostream& os, const ModelDecl& m) {
  os << "model " << m.name;
  if (m.notation == Notation::Simplified) os << " simplified";
  os << " {\n";

  std::unordered_map<std::string, std::vector<std::size_t>> kids;
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < m.thimacs.size(); ++i) {
    if (m.thimacs[i].parent)
      kids[*m.thimacs[i].parent].push_back(i);
    else
      roots.push_back(i);
  }

  std::function<void(std::size_t, int)> thimac = [&](std::size_t i, int depth) {
    const auto& t = m.thimacs[i];
    std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    os << pad << "thimac " << t.id << ' ' << quote(t.label) << " {";
    auto it = kids.find(t.id);
    bool has_kids = it != kids.end();
    if (t.stages.empty() && !t.memory && t.things.empty() && !has_kids) {
      os << "}\n";
      return;
    }
    os << '\n';
    if (!t.stages.empty() || t.memory) {
      os << pad << "  stages: ";
      std::vector<std::string> words;
      for (auto k : t.stages) words.emplace_back(to_string(k));
      if (t.memory) words.emplace_back("memory");
      join(os, words, ", ", [](std::ostream& o, const std::string& w) { o << w; });
      os << ";\n";
    }
    if (!t.things.empty()) {
      os << pad << "  things: ";
      join(os, t.things, ", ", [](std::ostream& o, const std::string& s) { o << quote(s); });
      os << ";\n";
    }
    if (has_kids)
      for (auto c : it->second) thimac(c, depth + 1);
    os << pad << "}\n";
  };
  for (auto r : roots) thimac(r, 1);

  for (const auto& a : m.arcs)
    os << "  " << to_string(a.kind) << ' ' << a.id << ": " << to_string(a.from) << " -> "
       << to_string(a.to) << ";\n";
  os << "}\n";
}

void print_ids(std::ostream& os, const std::vector<std::string>& ids) {
  join(os, ids, ", ", [](std::ostream& o, const std::string& s) { o << s; });
}

}  // namespace

std::string print_trace(const TraceDecl& t) {
  std::ostringstream os;
  os << "trace " << t.id << " = [";
  join(os, t.occurrences, ", ",
       [](std::ostream& o, const Occurrence& x) { o << x.event << " @ " << x.time; });
  os << "]\n";
  return os.str();
}

std::string print(const Document& doc) {
  std::ostringstream os;
  print_model(os, doc.model);

  for (const auto& s : doc.subdiagrams) {
    os << "\nsubdiagram " << s.id << ' ' << quote(s.label) << " {\n";
    if (!s.stages.empty()) {
      os << "  stages: ";
      join(os, s.stages, ", ", [](std::ostream& o, const StageRef& r) { o << to_string(r); });
      os << ";\n";
    }
    if (!s.arcs.empty()) {
      os << "  arcs: ";
      print_ids(os, s.arcs);
      os << ";\n";
    }
    os << "}\n";
  }

  if (!doc.events.empty()) os << '\n';
  for (const auto& e : doc.events) {
    os << "event " << e.id;
    if (!e.label.empty()) os << ' ' << quote(e.label);
    os << " = " << e.subdiagram;
    if (e.window) os << " window " << e.window->begin << ".." << e.window->end;
    os << ";\n";
  }

  for (const auto& c : doc.chronologies) {
    os << "\nchronology " << c.id << " {\n";
    if (!c.events.empty()) {
      os << "  events: ";
      print_ids(os, c.events);
      os << ";\n";
    }
    for (const auto& [a, b] : c.edges) os << "  " << a << " -> " << b << ";\n";
    for (const auto& g : c.exclusive) {
      os << "  exclusive ";
      if (!g.name.empty()) os << g.name << ' ';
      os << "{ ";
      join(os, g.members, " | ", [](std::ostream& o, const std::string& s) { o << s; });
      os << " }\n";
    }
    if (!c.start.empty()) {
      os << "  start: ";
      print_ids(os, c.start);
      os << ";\n";
    }
    if (!c.end.empty()) {
      os << "  end: ";
      print_ids(os, c.end);
      os << ";\n";
    }
    os << "}\n";
  }

  if (!doc.traces.empty()) os << '\n';
  for (const auto& t : doc.traces) os << print_trace(t);
  return os.str();
}

}  // namespace thimac
