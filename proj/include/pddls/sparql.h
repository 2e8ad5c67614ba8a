#ifndef PDDLS_SPARQL_H_
#define PDDLS_SPARQL_H_

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "pddls/rdf.h"

namespace pddls::sparql {

struct Variable {
  std::string name;  // without the leading '?'

  bool operator==(const Variable&) const = default;
  auto operator<=>(const Variable&) const = default;
};

using PatternTerm = std::variant<Term, Variable>;

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;

  bool operator==(const TriplePattern&) const = default;
};

enum class CompareOp { kLess, kLessEqual, kEqual, kNotEqual, kGreaterEqual, kGreater };

struct Filter {
  PatternTerm left;
  CompareOp op = CompareOp::kEqual;
  PatternTerm right;

  bool operator==(const Filter&) const = default;
};

struct Query {
  std::vector<std::pair<std::string, std::string>> prefixes;
  std::vector<Variable> projected;
  std::vector<TriplePattern> patterns;
  std::vector<Filter> filters;
};

using Row = std::vector<Term>;
// Sorted, duplicate-free rows in projection order.
using ResultSet = std::set<Row>;

// SELECT [DISTINCT] over a basic graph pattern with FILTER comparisons.
// Throws SyntaxError, or UnsupportedFeatureError for OPTIONAL, UNION, MINUS,
// property paths, subqueries and other constructs outside the subset.
Query parse_query(std::string_view text);

ResultSet evaluate(const Query& query, const Graph& graph);

// Outcome of a FILTER comparison. kError covers type errors (order
// comparisons on non-numeric terms, numeric vs non-numeric, unbound
// variables); the candidate binding is then rejected.
enum class Truth { kFalse, kTrue, kError };
Truth compare_terms(const Term& left, CompareOp op, const Term& right);

std::string to_string(CompareOp op);

// One row per line, terms separated by tabs.
std::string format_results(const ResultSet& results);

}  // namespace pddls::sparql

#endif  // PDDLS_SPARQL_H_
