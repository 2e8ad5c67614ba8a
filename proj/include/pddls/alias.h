#ifndef PDDLS_ALIAS_H_
#define PDDLS_ALIAS_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pddls/ast.h"

namespace pddls {

// Global symbol table shared by the problem and every domain. Keys of
// `symbol_to_iri` are lower-cased symbols; `iri_to_symbol` keeps the
// spelling of the first symbol bound to each IRI.
struct TranslationState {
  std::map<std::string, std::pair<std::string, std::string>> symbol_to_iri;  // key -> (symbol, iri)
  std::map<std::string, std::string> iri_to_symbol;

  std::optional<std::string> iri_of(std::string_view symbol) const;
  std::optional<std::string> symbol_of(std::string_view iri) const;
};

struct DomainTranslation {
  std::string domain_id;
  std::vector<std::pair<std::string, std::string>> map;  // in context order

  std::optional<std::string> lookup(std::string_view symbol) const;
  bool is_identity() const;
};

struct CanonicalizationResult {
  TranslationState state;
  std::vector<DomainTranslation> translations;
};

// Builds one symbol translation map per domain so that context-bound symbols
// denoting the same IRI share one name and colliding names are freshened.
// Domains are processed in the given order. Throws ContextError if a single
// context binds one term twice.
CanonicalizationResult canonicalize(
    const ContextMap& problem_context,
    const std::vector<std::pair<std::string, ContextMap>>& domain_contexts);

inline std::vector<DomainTranslation> build_translation_maps(
    const ContextMap& problem_context,
    const std::vector<std::pair<std::string, ContextMap>>& domain_contexts) {
  return canonicalize(problem_context, domain_contexts).translations;
}

// Renames predicates, actions, constants and types of a domain according to
// `translation`. Variables are never touched. The context is rewritten to
// use the canonical symbols.
Document apply_translation(const Document& domain, const DomainTranslation& translation);

// One "t -> t'" line per entry.
std::string format_translation(const DomainTranslation& translation);

}  // namespace pddls

#endif  // PDDLS_ALIAS_H_
