#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "thimac/diagnostic.hpp"

namespace thimac::detail {

enum class Tok {
  Ident,
  Integer,
  String,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Semi,
  Colon,
  Comma,
  Dot,
  DotDot,
  Arrow,
  ReverseArrow,
  Equals,
  At,
  Pipe,
  Invalid,
  End,
};

std::string_view describe(Tok t);

struct Token {
  Tok kind = Tok::End;
  std::string text;  // identifier, digits, or decoded string contents
  SourceSpan span;
};

/// Tokenizes the whole input. Lexical errors become Invalid tokens carrying a
/// message in `text`; the parser reports them at their span.
std::vector<Token> tokenize(std::string_view input, const std::string& file);

}  // namespace thimac::detail
