#include "lexer.hpp"

#include <cctype>

namespace thimac::detail {

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Integer: return "integer";
    case Tok::String: return "string";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::DotDot: return "'..'";
    case Tok::Arrow: return "'->'";
    case Tok::ReverseArrow: return "'<-'";
    case Tok::Equals: return "'='";
    case Tok::At: return "'@'";
    case Tok::Pipe: return "'|'";
    case Tok::Invalid: return "invalid token";
    case Tok::End: return "end of input";
  }
  return "?";
}

namespace {

class Lexer {
 public:
  Lexer(std::string_view in, const std::string& file) : in_(in), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      Token t;
      t.span = {file_, line_, col_};
      if (pos_ >= in_.size()) {
        t.kind = Tok::End;
        out.push_back(std::move(t));
        return out;
      }
      char c = in_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Ident;
        while (pos_ < in_.size() &&
               (std::isalnum(static_cast<unsigned char>(in_[pos_])) || in_[pos_] == '_'))
          t.text += take();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Tok::Integer;
        while (pos_ < in_.size() && std::isdigit(static_cast<unsigned char>(in_[pos_])))
          t.text += take();
      } else if (c == '"') {
        lex_string(t);
      } else {
        lex_punct(t);
      }
      bool stop = t.kind == Tok::Invalid;
      out.push_back(std::move(t));
      if (stop) {
        Token end;
        end.span = {file_, line_, col_};
        out.push_back(std::move(end));
        return out;
      }
    }
  }

 private:
  char take() {
    char c = in_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  bool starts_with(std::string_view s) const { return in_.substr(pos_, s.size()) == s; }

  void skip_trivia() {
    while (pos_ < in_.size()) {
      char c = in_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        take();
      } else if (c == '#' || starts_with("//")) {
        while (pos_ < in_.size() && in_[pos_] != '\n') take();
      } else {
        break;
      }
    }
  }

  void lex_string(Token& t) {
    take();  // opening quote
    t.kind = Tok::String;
    while (pos_ < in_.size()) {
      char c = take();
      if (c == '"') return;
      if (c == '\n') break;
      if (c == '\\') {
        if (pos_ >= in_.size()) break;
        char e = take();
        switch (e) {
          case '"': t.text += '"'; break;
          case '\\': t.text += '\\'; break;
          case 'n': t.text += '\n'; break;
          case 't': t.text += '\t'; break;
          default:
            t.kind = Tok::Invalid;
            t.text = std::string("unknown escape '\\") + e + "'";
            return;
        }
        continue;
      }
      t.text += c;
    }
    t.kind = Tok::Invalid;
    t.text = "unterminated string";
  }

  void lex_punct(Token& t) {
    struct P {
      std::string_view s;
      Tok k;
    };
    static constexpr P table[] = {
        {"->", Tok::Arrow}, {"<-", Tok::ReverseArrow}, {"..", Tok::DotDot}, {"{", Tok::LBrace},
        {"}", Tok::RBrace}, {"[", Tok::LBracket},      {"]", Tok::RBracket}, {";", Tok::Semi},
        {":", Tok::Colon},  {",", Tok::Comma},         {".", Tok::Dot},      {"=", Tok::Equals},
        {"@", Tok::At},     {"|", Tok::Pipe},
    };
    for (const auto& p : table) {
      if (starts_with(p.s)) {
        t.kind = p.k;
        t.text = std::string(p.s);
        for (std::size_t i = 0; i < p.s.size(); ++i) take();
        return;
      }
    }
    t.kind = Tok::Invalid;
    unsigned char c = static_cast<unsigned char>(in_[pos_]);
    if (std::isprint(c)) {
      t.text = std::string("unexpected character '") + static_cast<char>(c) + "'";
    } else {
      static const char* hex = "0123456789abcdef";
      t.text = std::string("unexpected byte 0x") + hex[c >> 4] + hex[c & 15];
    }
    take();
  }

  std::string_view in_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view input, const std::string& file) {
  return Lexer(input, file).run();
}

}  // namespace thimac::detail
