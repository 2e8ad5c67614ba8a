#ifndef PDDLS_DIAGNOSTIC_H_
#define PDDLS_DIAGNOSTIC_H_

#include <ostream>
#include <string>
#include <vector>

namespace pddls {

enum class Severity { kInfo, kWarning, kError };

struct Diagnostic {
  Severity severity = Severity::kWarning;
  std::string code;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

const char* severity_name(Severity severity);

// LEVEL<TAB>CODE<TAB>message
std::string format_diagnostic(const Diagnostic& diagnostic);

void write_diagnostics(std::ostream& os, const std::vector<Diagnostic>& diagnostics);

std::size_t count_severity(const std::vector<Diagnostic>& diagnostics, Severity severity);

}  // namespace pddls

#endif  // PDDLS_DIAGNOSTIC_H_
