#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace thimac {

/// Location of a construct in a `.tm` source. Spans never take part in
/// structural equality: two documents that differ only in layout compare equal.
struct SourceSpan {
  std::string file;
  int line = 0;
  int column = 0;

  bool known() const { return line > 0; }
  friend bool operator==(const SourceSpan&, const SourceSpan&) { return true; }
};

enum class Severity { Error, Warning };

struct Diagnostic {
  std::string code;  // stable, e.g. "W-FLOW-ILLEGAL"
  Severity severity = Severity::Error;
  SourceSpan span;
  std::string message;
  std::vector<std::string> elements;  // offending element ids, never empty
};

/// `file:line:col: severity: CODE: message`
std::string format(const Diagnostic& d);
std::ostream& operator<<(std::ostream& os, const Diagnostic& d);

bool has_errors(const std::vector<Diagnostic>& diags);

/// Orders by (first element id, code) and drops nothing.
void sort_diagnostics(std::vector<Diagnostic>& diags);

/// Base for failures that carry one or more diagnostics.
class DiagnosticError : public std::runtime_error {
 public:
  explicit DiagnosticError(std::vector<Diagnostic> diags);
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }

 private:
  std::vector<Diagnostic> diags_;
};

}  // namespace thimac
