#ifndef PDDLS_SYNTAX_H_
#define PDDLS_SYNTAX_H_

#include <string>
#include <string_view>
#include <vector>

#include "pddls/ast.h"
#include "pddls/diagnostic.h"

namespace pddls {

// Parses a PDDLS domain or problem. Throws SyntaxError (with position) on
// unbalanced parentheses, malformed `:context` mappings, duplicate sections
// and constructs outside the supported grammar.
Document parse_document(std::string_view text);

// Reads and parses a file. Throws Error if it cannot be read.
Document load_document(const std::string& path);

// Renders `doc` as PDDL text. With `strip_semantics`, the `:context` block
// and the `:semantics` requirement are omitted, yielding plain PDDL.
std::string print_pddl(const Document& doc, bool strip_semantics);

// Static checks on a single document: undeclared variables (warning),
// predicate arity mismatches and unknown predicates (error), undeclared
// objects in init/goal (warning), IRIs bound by two terms (warning).
std::vector<Diagnostic> validate_document(const Document& doc);

// Cross-document checks for a problem against its domain: arity of init/goal
// atoms and objects that are neither problem objects nor domain constants.
std::vector<Diagnostic> validate_problem(const Document& problem, const Document& domain);

std::string to_string(const Formula& formula);

}  // namespace pddls

#endif  // PDDLS_SYNTAX_H_
