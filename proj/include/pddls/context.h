#ifndef PDDLS_CONTEXT_H_
#define PDDLS_CONTEXT_H_

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "pddls/ast.h"

namespace pddls {

// Every document implicitly binds this prefix.
inline constexpr std::string_view kPddlPrefix = "pddl";
inline constexpr std::string_view kPddlPrefixIri = "uri:pddl";

using JsonLd = nlohmann::ordered_json;

std::optional<std::string> expand(std::string_view term, const ContextMap& context);

// JSON-LD rendering of a document. Keys: "@context" first, then
// "pddl:domain" / "pddl:problem", "pddl:requirements", the remaining
// sections, "pddl:predicates" and finally "pddl:structure" (actions).
JsonLd to_jsonld(const Document& doc);

// Inverse of to_jsonld. Throws SchemaError naming the first offending key.
// A non-empty context implies the `:semantics` requirement, which is
// appended when missing.
Document from_jsonld(const JsonLd& json);

// 2-space indented, stable key order, trailing newline.
std::string dump_jsonld(const JsonLd& json);

// File name under a context directory that holds the remote context `iri`.
std::string context_file_name(std::string_view iri);

// Replaces a `(:context <URI>)` reference by the bindings stored in
// `context_dir`. Local bindings already present are kept and win.
// Throws ContextError when the file is missing or malformed.
void resolve_context_ref(Document& doc, const std::string& context_dir);

}  // namespace pddls

#endif  // PDDLS_CONTEXT_H_
