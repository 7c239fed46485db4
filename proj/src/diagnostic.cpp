#include "thimac/diagnostic.hpp"

#include <algorithm>
#include <sstream>

namespace thimac {

std::string format(const Diagnostic& d) {
  std::ostringstream os;
  os << (d.span.file.empty() ? "<input>" : d.span.file) << ':' << d.span.line << ':'
     << d.span.column << ": " << (d.severity == Severity::Error ? "error" : "warning") << ": "
     << d.code << ": " << d.message;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Diagnostic& d) { return os << format(d); }

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

void sort_diagnostics(std::vector<Diagnostic>& diags) {
  std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
    const std::string& ea = a.elements.empty() ? std::string() : a.elements.front();
    const std::string& eb = b.elements.empty() ? std::string() : b.elements.front();
    if (ea != eb) return ea < eb;
    return a.code < b.code;
  });
}

namespace {
std::string join_messages(const std::vector<Diagnostic>& diags) {
  std::string out;
  for (const auto& d : diags) {
    if (!out.empty()) out += '\n';
    out += format(d);
  }
  return out;
}
}  // namespace

DiagnosticError::DiagnosticError(std::vector<Diagnostic> diags)
    : std::runtime_error(join_messages(diags)), diags_(std::move(diags)) {}

}  // namespace thimac
