// Shared helpers for the test binaries: fixture access, random generators
// and reference implementations the library is checked against.
#ifndef PDDLS_TESTS_SUPPORT_TESTING_H_
#define PDDLS_TESTS_SUPPORT_TESTING_H_

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pddls/ast.h"
#include "pddls/planner.h"
#include "pddls/rdf.h"
#include "pddls/sparql.h"

namespace pddls::testing {

using Rng = std::mt19937_64;

std::string data_path(const std::string& relative);
std::string read_text(const std::string& path);
Document load_data_document(const std::string& relative);
// Union of data files, loaded the way the pipeline loads them.
Graph load_data_graphs(const std::vector<std::string>& relative);

// ---- generators -----------------------------------------------------------

// Random domain or problem within the supported grammar.
Document random_document(Rng& rng, DocumentKind kind);

// Inserts `;` comments and extra whitespace between tokens of PDDLS text.
std::string sprinkle_trivia(Rng& rng, const std::string& text);

// Random graph over varied IRIs, literals (escapes, language tags,
// datatypes) and blank nodes.
Graph random_graph(Rng& rng, std::size_t max_triples);

struct SparqlCase {
  Graph graph;
  std::string text;
};

// Graph of at most `max_triples` triples over a small vocabulary, and a
// SELECT query with 1-4 patterns, at most 4 variables and 0-2 filters.
SparqlCase random_sparql_case(Rng& rng, std::size_t max_triples);

struct ContextFamily {
  ContextMap problem;
  std::vector<std::pair<std::string, ContextMap>> domains;
};

// Problem context binding distinct IRIs, and 1-4 domain contexts drawing
// terms and IRIs from small shared pools so aliases and name collisions
// are frequent.
ContextFamily random_context_family(Rng& rng);

struct StripsInstance {
  Document domain;
  Document problem;
};

// At most `max_objects` objects and `max_actions` actions. Roughly half of
// the goals are produced by a random walk from the initial state. Draws
// whose reachable state space exceeds kMaxReachableStates are discarded.
inline constexpr std::size_t kMaxReachableStates = 2000;
StripsInstance random_strips_instance(Rng& rng, std::size_t max_objects, std::size_t max_actions);

// ---- reference implementations --------------------------------------------

// Every total assignment of the query's variables to terms of `graph`,
// kept when all patterns are triples of the graph and every filter holds.
sparql::ResultSet brute_force_select(const sparql::Query& query, const Graph& graph);

// Length of a shortest plan by iterative deepening over action sequences,
// or nothing once deepening stops reaching new states.
std::optional<std::size_t> shortest_plan_length(const State& init, const Formula& goal,
                                                const std::vector<GroundAction>& actions);

// Checks IRI preservation, the symbol/IRI biconditional and freshness of a
// canonicalization of `family`. Returns an explanation on failure.
std::optional<std::string> alias_property_violation(const ContextFamily& family);

}  // namespace pddls::testing

#endif  // PDDLS_TESTS_SUPPORT_TESTING_H_
