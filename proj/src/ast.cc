#include "pddls/ast.h"

#include <algorithm>

#include "pddls/error.h"
#include "pddls/strings.h"

namespace pddls {

void ContextMap::bind(std::string term, std::string iri) {
  if (term.empty()) throw ContextError("empty term in context");
  if (iri.empty()) throw ContextError("term '" + term + "' bound to an empty IRI");
  if (iequals(term, "pddl")) throw ContextError("the 'pddl' prefix is reserved");
  if (lookup(term)) throw ContextError("term '" + term + "' bound twice");
  entries.push_back({std::move(term), std::move(iri)});
}

std::optional<std::string> ContextMap::lookup(std::string_view term) const {
  for (const Binding& b : entries) {
    if (iequals(b.term, term)) return b.iri;
  }
  return std::nullopt;
}

Formula Formula::atom(std::string name, std::vector<std::string> args) {
  Formula f;
  f.kind = Kind::kAtom;
  f.name = std::move(name);
  f.args = std::move(args);
  return f;
}

Formula Formula::negate(Formula inner) {
  Formula f;
  f.kind = Kind::kNot;
  f.children.push_back(std::move(inner));
  return f;
}

Formula Formula::conjunction(std::vector<Formula> parts) {
  Formula f;
  f.kind = Kind::kAnd;
  f.children = std::move(parts);
  return f;
}

const PredicateDecl* Document::find_predicate(std::string_view name) const {
  auto it = std::find_if(predicates.begin(), predicates.end(),
                         [&](const PredicateDecl& p) { return iequals(p.name, name); });
  return it == predicates.end() ? nullptr : &*it;
}

const ActionDef* Document::find_action(std::string_view name) const {
  auto it = std::find_if(actions.begin(), actions.end(),
                         [&](const ActionDef& a) { return iequals(a.name, name); });
  return it == actions.end() ? nullptr : &*it;
}

bool Document::has_requirement(std::string_view key) const {
  return std::any_of(requirements.begin(), requirements.end(),
                     [&](const std::string& r) { return iequals(r, key); });
}

}  // namespace pddls
