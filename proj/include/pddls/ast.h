#ifndef PDDLS_AST_H_
#define PDDLS_AST_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pddls/sexpr.h"

namespace pddls {

// Ordered term -> IRI bindings from a `:context` block.
struct ContextMap {
  struct Binding {
    std::string term;
    std::string iri;

    bool operator==(const Binding&) const = default;
  };

  std::vector<Binding> entries;

  // Appends a binding. Throws ContextError when `term` is already bound
  // (case-insensitively), when `iri` is empty, or when `term` is the
  // reserved `pddl` prefix.
  void bind(std::string term, std::string iri);

  // Bound IRI for `term` (case-insensitive), if any.
  std::optional<std::string> lookup(std::string_view term) const;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }

  bool operator==(const ContextMap&) const = default;
};

// Tagged formula tree over the supported subset: atoms, negation, conjunction.
struct Formula {
  enum class Kind { kAtom, kNot, kAnd };

  Kind kind = Kind::kAnd;
  std::string name;               // kAtom
  std::vector<std::string> args;  // kAtom
  std::vector<Formula> children;  // kNot: exactly one, kAnd: any number

  static Formula atom(std::string name, std::vector<std::string> args = {});
  static Formula negate(Formula inner);
  static Formula conjunction(std::vector<Formula> parts);

  bool is_atom() const { return kind == Kind::kAtom; }
  bool is_not() const { return kind == Kind::kNot; }
  bool is_and() const { return kind == Kind::kAnd; }

  bool operator==(const Formula&) const = default;
};

struct TypedSymbol {
  std::string name;
  std::string type;  // empty when untyped

  bool operator==(const TypedSymbol&) const = default;
};

struct PredicateDecl {
  std::string name;
  std::vector<TypedSymbol> params;

  std::size_t arity() const { return params.size(); }

  bool operator==(const PredicateDecl&) const = default;
};

struct ActionDef {
  std::string name;
  std::vector<TypedSymbol> parameters;
  std::optional<Formula> precondition;
  std::optional<Formula> effect;  // always a conjunction of literals once parsed

  bool operator==(const ActionDef&) const = default;
};

enum class DocumentKind { kDomain, kProblem };

struct Document {
  DocumentKind kind = DocumentKind::kDomain;
  std::string name;
  std::string domain_ref;  // problems only
  std::vector<std::string> requirements;
  ContextMap context;
  std::optional<std::string> context_ref;  // `(:context <URI>)` form
  std::vector<TypedSymbol> types;
  std::vector<TypedSymbol> constants;
  std::vector<PredicateDecl> predicates;
  std::optional<SExpr> functions;    // kept verbatim, not interpreted
  std::optional<SExpr> constraints;  // kept verbatim, not interpreted
  std::vector<ActionDef> actions;
  std::vector<TypedSymbol> objects;
  std::vector<Formula> init;
  std::optional<Formula> goal;

  bool is_domain() const { return kind == DocumentKind::kDomain; }
  bool is_problem() const { return kind == DocumentKind::kProblem; }

  const PredicateDecl* find_predicate(std::string_view name) const;
  const ActionDef* find_action(std::string_view name) const;
  bool has_requirement(std::string_view key) const;

  bool operator==(const Document&) const = default;
};

// Visits every atom in `f`, in document order.
template <typename Fn>
void for_each_atom(const Formula& f, Fn&& fn) {
  if (f.is_atom()) {
    fn(f);
    return;
  }
  for (const Formula& c : f.children) for_each_atom(c, fn);
}

template <typename Fn>
void for_each_atom(Formula& f, Fn&& fn) {
  if (f.is_atom()) {
    fn(f);
    return;
  }
  for (Formula& c : f.children) for_each_atom(c, fn);
}

inline bool is_variable(std::string_view symbol) { return !symbol.empty() && symbol[0] == '?'; }

}  // namespace pddls

#endif  // PDDLS_AST_H_
