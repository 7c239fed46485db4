#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "thimac/document.hpp"

namespace thimac {

struct SourceFile {
  std::string path;
  std::string text;
};

/// Reads a file from disk. Throws std::runtime_error when unreadable.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws IoError when the file cannot be read.
SourceFile read_source(const std::string& path);

/// Syntax failure. Codes: E-SYNTAX, E-DUP-SECTION.
class ParseError : public DiagnosticError {
 public:
  using DiagnosticError::DiagnosticError;
};

/// Parses a whole document. Never crashes on arbitrary bytes: the result is
/// either a Document or a ParseError with at least one spanned diagnostic.
Document parse(const SourceFile& source);

/// Canonical text. parse(print(d)) == d for every well-formed document.
std::string print(const Document& doc);

std::string print_trace(const TraceDecl& trace);

}  // namespace thimac
