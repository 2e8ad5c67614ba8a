#ifndef PDDLS_RESOLVER_H_
#define PDDLS_RESOLVER_H_

#include <compare>
#include <filesystem>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pddls/alias.h"
#include "pddls/ast.h"
#include "pddls/diagnostic.h"
#include "pddls/rdf.h"
#include "pddls/shacl.h"
#include "pddls/sparql.h"

namespace pddls {

// A role whose assertions are computed from the ontology: every pair in the
// evaluation of `body` becomes an assertion of `role`.
struct EstablishRule {
  Term role;
  std::variant<sparql::Query, shacl::Shape> body;

  bool is_sparql() const { return std::holds_alternative<sparql::Query>(body); }
};

struct DerivedFact {
  Term role;
  Term subject;
  Term object;

  bool operator==(const DerivedFact&) const = default;
  auto operator<=>(const DerivedFact&) const = default;
};

// Reads every `pddls:establishedWith` triple. Literal objects tagged
// `@sparql` (or untagged strings) are SPARQL bodies; IRI or blank objects
// name SHACL node shapes. Throws RuleError on unparsable bodies, SPARQL
// bodies not projecting exactly two variables, or missing shapes.
std::vector<EstablishRule> collect_rules(const Graph& graph);

// Ordered pairs a SHACL-bodied rule for `role` is tested on: individuals
// with an rdf:type, narrowed to instances of the role's rdfs:domain
// (first element) and rdfs:range (second element) when those are asserted.
std::set<shacl::Pair> candidate_pairs(const Graph& graph, const Term& role);

std::set<DerivedFact> establish(const EstablishRule& rule, const Graph& graph);

struct Interpretation {
  Graph graph;  // closed ontology plus derived role triples, closed again
  std::set<DerivedFact> derived;
};

// closure, one pass of every rule over the same closed graph, closure again.
// Rules never observe each other's output. With `closure` false both
// closure steps are skipped.
Interpretation interpret(const Graph& ontology, const std::vector<EstablishRule>& rules, bool closure = true);

struct ResolvedBundle {
  Document domain;   // canonicalized (and merged, for several domains)
  Document problem;  // with injected init atoms
  std::vector<DerivedFact> derived;
  std::vector<Formula> injected;
  std::vector<DomainTranslation> translations;
  std::vector<Diagnostic> diagnostics;
};

struct ResolveOptions {
  bool closure = true;
};

// Runs the full resolution: interpretation of the ontology, alias
// canonicalization over the problem and domain contexts, and injection of
// derived facts whose role and endpoints are bound to problem symbols.
// Facts that cannot be injected are reported as diagnostics. Throws
// ResolveError when the problem's domain is not supplied.
ResolvedBundle resolve(const Document& problem, const std::vector<Document>& domains, const Graph& ontology,
                       const ResolveOptions& options = {});

// Writes domain.pddl and problem.pddl as plain PDDL into `out_dir`.
std::pair<std::filesystem::path, std::filesystem::path> emit(const ResolvedBundle& bundle,
                                                             const std::filesystem::path& out_dir);

}  // namespace pddls

#endif  // PDDLS_RESOLVER_H_
