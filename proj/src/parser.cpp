#include "thimac/parser.hpp"

#include <charconv>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "lexer.hpp"

namespace thimac {

using detail::Tok;
using detail::Token;

const ChronologyDecl* Document::find_chronology(std::string_view id) const {
  for (const auto& c : chronologies)
    if (c.id == id) return &c;
  return nullptr;
}

const TraceDecl* Document::find_trace(std::string_view id) const {
  for (const auto& t : traces)
    if (t.id == id) return &t;
  return nullptr;
}

SourceFile read_source(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return SourceFile{path, ss.str()};
}

namespace {

constexpr int kMaxNesting = 256;

// Thrown internally on the first syntax error; converted to ParseError.
struct Abort {
  Diagnostic diag;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Document document() {
    Document doc;
    if (!is_word("model")) fail_expected({"'model'"});
    doc.model = model();

    int rank = 0;
    while (peek().kind != Tok::End) {
      if (is_word("model"))
        fail("E-DUP-SECTION", peek().span, "a document holds exactly one model section");
      int r = section_rank();
      if (r == 0) fail_expected({"'subdiagram'", "'event'", "'chronology'", "'trace'"});
      if (r < rank)
        fail("E-SYNTAX", peek().span,
             "'" + peek().text +
                 "' section out of order (expected model, subdiagrams, events, chronologies, traces)");
      rank = r;
      switch (r) {
        case 1: doc.subdiagrams.push_back(subdiagram()); break;
        case 2: doc.events.push_back(event()); break;
        case 3: doc.chronologies.push_back(chronology()); break;
        default: doc.traces.push_back(trace()); break;
      }
    }
    return doc;
  }

 private:
  // -- token helpers -------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }

  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  bool is_word(std::string_view w, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Ident && peek(ahead).text == w;
  }

  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }

  [[noreturn]] void fail(std::string code, const SourceSpan& span, std::string message) {
    throw Abort{Diagnostic{std::move(code), Severity::Error, span, std::move(message),
                           {"<syntax>"}}};
  }

  [[noreturn]] void fail_expected(std::initializer_list<std::string_view> expected) {
    const Token& t = peek();
    if (t.kind == Tok::Invalid) fail("E-SYNTAX", t.span, t.text);
    std::string msg = "expected ";
    bool first = true;
    for (auto e : expected) {
      if (!first) msg += " or ";
      msg += e;
      first = false;
    }
    msg += ", found ";
    if (t.kind == Tok::Ident)
      msg += "'" + t.text + "'";
    else if (t.kind == Tok::String)
      msg += "string";
    else if (t.kind == Tok::Integer)
      msg += "'" + t.text + "'";
    else
      msg += std::string(detail::describe(t.kind));
    fail("E-SYNTAX", t.span, msg);
  }

  Token expect(Tok k) {
    if (peek().kind != k) fail_expected({detail::describe(k)});
    return next();
  }

  void expect_word(std::string_view w) {
    if (!is_word(w)) {
      std::string q = "'" + std::string(w) + "'";
      fail_expected({q});
    }
    next();
  }

  std::string ident() { return expect(Tok::Ident).text; }

  Timestamp integer() {
    Token t = expect(Tok::Integer);
    Timestamp v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size())
      fail("E-SYNTAX", t.span, "integer '" + t.text + "' out of range");
    return v;
  }

  int section_rank() const {
    if (is_word("subdiagram")) return 1;
    if (is_word("event")) return 2;
    if (is_word("chronology")) return 3;
    if (is_word("trace")) return 4;
    return 0;
  }

  StageRef stage_ref() {
    StageRef r;
    r.thimac = ident();
    expect(Tok::Dot);
    Token k = expect(Tok::Ident);
    auto kind = parse_stage_kind(k.text);
    if (!kind) fail("E-SYNTAX", k.span, "unknown stage kind '" + k.text + "'");
    r.kind = *kind;
    return r;
  }

  template <typename F>
  void comma_list(F item) {
    item();
    while (accept(Tok::Comma)) item();
    accept(Tok::Semi);
  }

  // -- model ---------------------------------------------------------------

  ModelDecl model() {
    ModelDecl m;
    m.span = peek().span;
    expect_word("model");
    m.name = ident();
    if (is_word("simplified")) {
      next();
      m.notation = Notation::Simplified;
    }
    expect(Tok::LBrace);
    while (!accept(Tok::RBrace)) {
      if (is_word("thimac")) {
        thimac(m, std::nullopt, 1);
      } else if (is_word("flow") || is_word("trigger")) {
        m.arcs.push_back(arc());
      } else {
        fail_expected({"'thimac'", "'flow'", "'trigger'", "'}'"});
      }
    }
    return m;
  }

  void thimac(ModelDecl& m, const std::optional<ThimacId>& parent, int depth) {
    if (depth > kMaxNesting) fail("E-SYNTAX", peek().span, "thimac nesting too deep");
    ThimacDecl t;
    t.span = peek().span;
    expect_word("thimac");
    t.id = ident();
    if (peek().kind == Tok::String) t.label = next().text;
    t.parent = parent;
    expect(Tok::LBrace);
    std::size_t self = m.thimacs.size();
    m.thimacs.push_back(t);
    while (!accept(Tok::RBrace)) {
      if (is_word("stages") && peek(1).kind == Tok::Colon) {
        next();
        next();
        comma_list([&] {
          Token k = expect(Tok::Ident);
          if (k.text == "memory") {
            m.thimacs[self].memory = true;
            return;
          }
          auto kind = parse_stage_kind(k.text);
          if (!kind) fail("E-SYNTAX", k.span, "unknown stage kind '" + k.text + "'");
          m.thimacs[self].stages.push_back(*kind);
        });
      } else if (is_word("things") && peek(1).kind == Tok::Colon) {
        next();
        next();
        comma_list([&] { m.thimacs[self].things.push_back(expect(Tok::String).text); });
      } else if (is_word("thimac")) {
        thimac(m, m.thimacs[self].id, depth + 1);
      } else {
        fail_expected({"'stages:'", "'things:'", "'thimac'", "'}'"});
      }
    }
  }

  ArcDecl arc() {
    ArcDecl a;
    a.span = peek().span;
    a.kind = next().text == "flow" ? ArcKind::Flow : ArcKind::Trigger;
    a.id = ident();
    expect(Tok::Colon);
    a.from = stage_ref();
    expect(Tok::Arrow);
    a.to = stage_ref();
    accept(Tok::Semi);
    return a;
  }

  // -- decomposition and events ---------------------------------------------

  SubdiagramDecl subdiagram() {
    SubdiagramDecl s;
    s.span = peek().span;
    expect_word("subdiagram");
    s.id = ident();
    if (peek().kind == Tok::String) s.label = next().text;
    expect(Tok::LBrace);
    while (!accept(Tok::RBrace)) {
      if (is_word("stages") && peek(1).kind == Tok::Colon) {
        next();
        next();
        comma_list([&] { s.stages.push_back(stage_ref()); });
      } else if (is_word("arcs") && peek(1).kind == Tok::Colon) {
        next();
        next();
        comma_list([&] { s.arcs.push_back(ident()); });
      } else {
        fail_expected({"'stages:'", "'arcs:'", "'}'"});
      }
    }
    return s;
  }

  EventDecl event() {
    EventDecl e;
    e.span = peek().span;
    expect_word("event");
    e.id = ident();
    if (peek().kind == Tok::String) e.label = next().text;
    expect(Tok::Equals);
    e.subdiagram = ident();
    if (is_word("window")) {
      next();
      TimeWindow w;
      w.begin = integer();
      expect(Tok::DotDot);
      w.end = integer();
      e.window = w;
    }
    accept(Tok::Semi);
    return e;
  }

  // -- behavior ------------------------------------------------------------

  ChronologyDecl chronology() {
    ChronologyDecl c;
    c.span = peek().span;
    expect_word("chronology");
    c.id = ident();
    expect(Tok::LBrace);
    while (!accept(Tok::RBrace)) {
      bool list_head = peek(1).kind == Tok::Colon;
      if (list_head && is_word("events")) {
        next();
        next();
        comma_list([&] { c.events.push_back(ident()); });
      } else if (list_head && is_word("start")) {
        next();
        next();
        comma_list([&] { c.start.push_back(ident()); });
      } else if (list_head && is_word("end")) {
        next();
        next();
        comma_list([&] { c.end.push_back(ident()); });
      } else if (is_word("exclusive") &&
                 (peek(1).kind == Tok::LBrace ||
                  (peek(1).kind == Tok::Ident && peek(2).kind == Tok::LBrace))) {
        next();
        ExclusiveDecl g;
        if (peek().kind == Tok::Ident) g.name = next().text;
        expect(Tok::LBrace);
        g.members.push_back(ident());
        do {
          expect(Tok::Pipe);
          g.members.push_back(ident());
        } while (peek().kind == Tok::Pipe);
        expect(Tok::RBrace);
        accept(Tok::Semi);
        c.exclusive.push_back(std::move(g));
      } else if (peek().kind == Tok::Ident) {
        EventId from = ident();
        if (peek().kind != Tok::Arrow) fail_expected({"'->'"});
        while (accept(Tok::Arrow)) {
          EventId to = ident();
          c.edges.emplace_back(from, to);
          from = to;
        }
        accept(Tok::Semi);
      } else {
        fail_expected({"edge", "'exclusive'", "'events:'", "'start:'", "'end:'", "'}'"});
      }
    }
    return c;
  }

  TraceDecl trace() {
    TraceDecl t;
    t.span = peek().span;
    expect_word("trace");
    t.id = ident();
    expect(Tok::Equals);
    expect(Tok::LBracket);
    if (!accept(Tok::RBracket)) {
      do {
        Occurrence o;
        o.event = ident();
        expect(Tok::At);
        o.time = integer();
        t.occurrences.push_back(std::move(o));
      } while (accept(Tok::Comma));
      expect(Tok::RBracket);
    }
    accept(Tok::Semi);
    return t;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Document parse(const SourceFile& source) {
  try {
    Parser p(detail::tokenize(source.text, source.path));
    return p.document();
  } catch (Abort& a) {
    throw ParseError({std::move(a.diag)});
  }
}

}  // namespace thimac
