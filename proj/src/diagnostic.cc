#include "pddls/diagnostic.h"

#include <algorithm>

namespace pddls {

const char* severity_name(Severity severity) {
  switch (severity) {
    case Severity::kInfo:
      return "INFO";
    case Severity::kWarning:
      return "WARNING";
    case Severity::kError:
      return "ERROR";
  }
  return "INFO";
}

std::string format_diagnostic(const Diagnostic& diagnostic) {
  return std::string(severity_name(diagnostic.severity)) + "\t" + diagnostic.code + "\t" +
         diagnostic.message;
}

void write_diagnostics(std::ostream& os, const std::vector<Diagnostic>& diagnostics) {
  for (const Diagnostic& d : diagnostics) os << format_diagnostic(d) << "\n";
}

std::size_t count_severity(const std::vector<Diagnostic>& diagnostics, Severity severity) {
  return static_cast<std::size_t>(std::count_if(
      diagnostics.begin(), diagnostics.end(),
      [severity](const Diagnostic& d) { return d.severity == severity; }));
}

}  // namespace pddls
