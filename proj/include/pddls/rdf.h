#ifndef PDDLS_RDF_H_
#define PDDLS_RDF_H_

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pddls {

struct Term {
  enum class Kind { kIri, kLiteral, kBlank };

  Kind kind = Kind::kIri;
  std::string value;     // IRI, lexical form, or blank node label
  std::string datatype;  // literals only
  std::string lang;      // lower-cased language tag, literals only

  static Term iri(std::string value);
  static Term literal(std::string lexical, std::string datatype = {}, std::string lang = {});
  static Term blank(std::string label);

  bool is_iri() const { return kind == Kind::kIri; }
  bool is_literal() const { return kind == Kind::kLiteral; }
  bool is_blank() const { return kind == Kind::kBlank; }

  bool operator==(const Term&) const = default;
  // Ordered by lexical form first so result listings sort by what users see.
  std::strong_ordering operator<=>(const Term& other) const;
};

// N-Triples style rendering: <iri>, "lex"^^<dt>, "lex"@lang, _:label.
std::string to_string(const Term& term);

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  bool operator==(const Triple&) const = default;
  std::strong_ordering operator<=>(const Triple& other) const;
};

// Exact decimal value parsed from an xsd:decimal / xsd:integer lexical form.
struct Decimal {
  bool negative = false;
  std::string integer;   // no leading zeros
  std::string fraction;  // no trailing zeros
};

std::optional<Decimal> parse_decimal(std::string_view lexical);
int compare(const Decimal& a, const Decimal& b);

// Numeric value of an integer- or decimal-typed literal.
std::optional<Decimal> numeric_value(const Term& term);

// Set of triples plus the prefix table seen while parsing. Equality compares
// triples only.
class Graph {
 public:
  // Returns false when the triple was already present. Throws Error for a
  // literal subject or a non-IRI predicate.
  bool insert(Triple triple);
  bool insert(Term s, Term p, Term o) { return insert(Triple{std::move(s), std::move(p), std::move(o)}); }
  void merge(const Graph& other);

  bool contains(const Triple& triple) const { return triples_.count(triple) > 0; }
  const std::set<Triple>& triples() const { return triples_; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }

  // Triples matching the given positions; nullopt matches anything.
  std::vector<Triple> match(const std::optional<Term>& s, const std::optional<Term>& p,
                            const std::optional<Term>& o) const;
  std::vector<Term> objects(const Term& s, const Term& p) const;
  std::vector<Term> subjects(const Term& p, const Term& o) const;

  const std::vector<std::pair<std::string, std::string>>& prefixes() const { return prefixes_; }
  void set_prefix(const std::string& name, const std::string& iri);

  bool operator==(const Graph& other) const { return triples_ == other.triples_; }

 private:
  std::set<Triple> triples_;
  std::vector<std::pair<std::string, std::string>> prefixes_;
};

struct TurtleOptions {
  std::optional<std::string> base;
  // Prepended to blank node labels so graphs parsed from different files
  // never share blank nodes.
  std::string blank_prefix;
};

// Turtle subset: @prefix/@base (and SPARQL-style PREFIX/BASE), `a`, `;` and
// `,` lists, IRIs, prefixed names, short and long string literals with
// language tags or datatypes, numbers, booleans, `_:` labels, `[...]`
// blank nodes and `( ... )` collections. Throws SyntaxError /
// UnknownPrefixError with a position.
Graph parse_turtle(std::string_view text, const TurtleOptions& options = {});
Graph parse_turtle(std::string_view text, std::optional<std::string> base);
Graph load_turtle(const std::string& path, const TurtleOptions& options = {});

// Prefix header followed by one statement per line, sorted.
std::string serialize_turtle(const Graph& graph);

// Least fixpoint of subClassOf transitivity (rdfs11) and type propagation
// (rdfs9).
Graph rdfs_closure(const Graph& graph);

// Resolves `reference` against `base` (scheme, authority, path and fragment
// handling only; no dot-segment removal).
std::string resolve_iri(std::string_view base, std::string_view reference);

}  // namespace pddls

#endif  // PDDLS_RDF_H_
