#include "pddls/rdf.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "pddls/error.h"
#include "pddls/vocab.h"
#include "rdf_lexer.h"

namespace pddls {

Term Term::iri(std::string value) {
  Term t;
  t.kind = Kind::kIri;
  t.value = std::move(value);
  return t;
}

Term Term::literal(std::string lexical, std::string datatype, std::string lang) {
  Term t;
  t.kind = Kind::kLiteral;
  t.value = std::move(lexical);
  if (!lang.empty()) {
    t.lang = std::move(lang);
    t.datatype = std::string(vocab::kRdfLangString);
  } else {
    t.datatype = datatype.empty() ? std::string(vocab::kXsdString) : std::move(datatype);
  }
  return t;
}

Term Term::blank(std::string label) {
  Term t;
  t.kind = Kind::kBlank;
  t.value = std::move(label);
  return t;
}

std::strong_ordering Term::operator<=>(const Term& other) const {
  if (auto c = value <=> other.value; c != 0) return c;
  if (auto c = static_cast<int>(kind) <=> static_cast<int>(other.kind); c != 0) return c;
  if (auto c = datatype <=> other.datatype; c != 0) return c;
  return lang <=> other.lang;
}

std::strong_ordering Triple::operator<=>(const Triple& other) const {
  if (auto c = subject <=> other.subject; c != 0) return c;
  if (auto c = predicate <=> other.predicate; c != 0) return c;
  return object <=> other.object;
}

namespace {

std::string escape_string(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string to_string(const Term& term) {
  switch (term.kind) {
    case Term::Kind::kIri:
      return "<" + term.value + ">";
    case Term::Kind::kBlank:
      return "_:" + term.value;
    case Term::Kind::kLiteral: {
      std::string out = "\"" + escape_string(term.value) + "\"";
      if (!term.lang.empty()) return out + "@" + term.lang;
      if (term.datatype != vocab::kXsdString) out += "^^<" + term.datatype + ">";
      return out;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Decimals

std::optional<Decimal> parse_decimal(std::string_view lexical) {
  Decimal d;
  std::size_t i = 0;
  if (i < lexical.size() && (lexical[i] == '+' || lexical[i] == '-')) {
    d.negative = lexical[i] == '-';
    ++i;
  }
  std::string integer;
  std::string fraction;
  while (i < lexical.size() && lexical[i] >= '0' && lexical[i] <= '9') integer.push_back(lexical[i++]);
  if (i < lexical.size() && lexical[i] == '.') {
    ++i;
    while (i < lexical.size() && lexical[i] >= '0' && lexical[i] <= '9') fraction.push_back(lexical[i++]);
  }
  if (i != lexical.size() || (integer.empty() && fraction.empty())) return std::nullopt;
  integer.erase(0, std::min(integer.find_first_not_of('0'), integer.size()));
  fraction.erase(fraction.find_last_not_of('0') + 1);
  d.integer = std::move(integer);
  d.fraction = std::move(fraction);
  if (d.integer.empty() && d.fraction.empty()) d.negative = false;
  return d;
}

int compare(const Decimal& a, const Decimal& b) {
  if (a.negative != b.negative) return a.negative ? -1 : 1;
  int magnitude = 0;
  if (a.integer.size() != b.integer.size()) {
    magnitude = a.integer.size() < b.integer.size() ? -1 : 1;
  } else if (int c = a.integer.compare(b.integer); c != 0) {
    magnitude = c < 0 ? -1 : 1;
  } else {
    const std::size_t n = std::max(a.fraction.size(), b.fraction.size());
    std::string fa = a.fraction + std::string(n - a.fraction.size(), '0');
    std::string fb = b.fraction + std::string(n - b.fraction.size(), '0');
    if (int c = fa.compare(fb); c != 0) magnitude = c < 0 ? -1 : 1;
  }
  return a.negative ? -magnitude : magnitude;
}

std::optional<Decimal> numeric_value(const Term& term) {
  if (!term.is_literal()) return std::nullopt;
  static const std::vector<std::string> kNumericTypes = [] {
    std::vector<std::string> out = {std::string(vocab::kXsdInteger), std::string(vocab::kXsdDecimal)};
    for (const char* t : {"int", "long", "short", "byte", "nonNegativeInteger", "positiveInteger",
                          "nonPositiveInteger", "negativeInteger", "unsignedInt", "unsignedLong",
                          "unsignedShort", "unsignedByte"}) {
      out.push_back(std::string(vocab::kXsd) + t);
    }
    return out;
  }();
  if (std::find(kNumericTypes.begin(), kNumericTypes.end(), term.datatype) == kNumericTypes.end()) {
    return std::nullopt;
  }
  auto d = parse_decimal(term.value);
  if (d && term.datatype != vocab::kXsdDecimal && !d->fraction.empty()) return std::nullopt;
  return d;
}

// ---------------------------------------------------------------------------
// Graph

bool Graph::insert(Triple triple) {
  if (triple.subject.is_literal()) throw Error("literal in subject position: " + to_string(triple.subject));
  if (!triple.predicate.is_iri()) throw Error("predicate must be an IRI: " + to_string(triple.predicate));
  return triples_.insert(std::move(triple)).second;
}

void Graph::merge(const Graph& other) {
  for (const Triple& t : other.triples_) triples_.insert(t);
  for (const auto& [name, iri] : other.prefixes_) set_prefix(name, iri);
}

std::vector<Triple> Graph::match(const std::optional<Term>& s, const std::optional<Term>& p,
                                 const std::optional<Term>& o) const {
  std::vector<Triple> out;
  auto accept = [&](const Triple& t) {
    return (!p || t.predicate == *p) && (!o || t.object == *o);
  };
  if (s) {
    Triple lo{*s, Term{}, Term{}};
    lo.predicate.value.clear();
    for (auto it = triples_.lower_bound(lo); it != triples_.end() && it->subject == *s; ++it) {
      if (accept(*it)) out.push_back(*it);
    }
    return out;
  }
  for (const Triple& t : triples_) {
    if (accept(t)) out.push_back(t);
  }
  return out;
}

std::vector<Term> Graph::objects(const Term& s, const Term& p) const {
  std::vector<Term> out;
  for (const Triple& t : match(s, p, std::nullopt)) out.push_back(t.object);
  return out;
}

std::vector<Term> Graph::subjects(const Term& p, const Term& o) const {
  std::vector<Term> out;
  for (const Triple& t : match(std::nullopt, p, o)) out.push_back(t.subject);
  return out;
}

void Graph::set_prefix(const std::string& name, const std::string& iri) {
  for (auto& [n, i] : prefixes_) {
    if (n == name) {
      i = iri;
      return;
    }
  }
  prefixes_.emplace_back(name, iri);
}

// ---------------------------------------------------------------------------
// IRI resolution

std::string resolve_iri(std::string_view base, std::string_view reference) {
  auto scheme_end = [](std::string_view s) -> std::size_t {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return std::string_view::npos;
    for (std::size_t i = 1; i < s.size(); ++i) {
      char c = s[i];
      if (c == ':') return i;
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.')) break;
    }
    return std::string_view::npos;
  };
  if (scheme_end(reference) != std::string_view::npos || base.empty()) return std::string(reference);
  std::string_view without_fragment = base.substr(0, base.find('#'));
  if (reference.empty()) return std::string(without_fragment);
  if (reference[0] == '#') return std::string(without_fragment) + std::string(reference);
  const std::size_t colon = scheme_end(base);
  const std::string_view scheme = colon == std::string_view::npos ? std::string_view{} : base.substr(0, colon + 1);
  if (reference.substr(0, 2) == "//") return std::string(scheme) + std::string(reference);
  const std::string_view rest = colon == std::string_view::npos ? base : base.substr(colon + 1);
  if (reference[0] == '/') {
    if (rest.substr(0, 2) == "//") {
      std::size_t slash = rest.find('/', 2);
      return std::string(scheme) + std::string(rest.substr(0, slash)) + std::string(reference);
    }
    return std::string(scheme) + std::string(reference);
  }
  std::string_view path = without_fragment.substr(0, without_fragment.find('?'));
  std::size_t last = path.rfind('/');
  std::string prefix = last == std::string_view::npos ? std::string(scheme) : std::string(path.substr(0, last + 1));
  return prefix + std::string(reference);
}

// ---------------------------------------------------------------------------
// Turtle reader

namespace {

class TurtleParser {
 public:
  TurtleParser(std::string_view text, const TurtleOptions& options)
      : lex_(text), base_(options.base.value_or("")), blank_prefix_(options.blank_prefix) {}

  Graph parse() {
    lex_.skip_ws();
    while (!lex_.at_end()) {
      statement();
      lex_.skip_ws();
    }
    return std::move(graph_);
  }

 private:
  void statement() {
    if (lex_.peek() == '@') {
      lex_.advance();
      if (lex_.consume_keyword("prefix")) {
        prefix_directive();
        lex_.skip_ws();
        lex_.expect('.', "after @prefix");
      } else if (lex_.consume_keyword("base")) {
        lex_.skip_ws();
        base_ = resolve_iri(base_, lex_.read_iriref());
        lex_.skip_ws();
        lex_.expect('.', "after @base");
      } else {
        lex_.fail("unknown directive");
      }
      return;
    }
    if (lex_.consume_keyword("PREFIX")) {
      prefix_directive();
      return;
    }
    if (lex_.consume_keyword("BASE")) {
      lex_.skip_ws();
      base_ = resolve_iri(base_, lex_.read_iriref());
      return;
    }
    triples();
    lex_.skip_ws();
    lex_.expect('.', "to end the statement");
  }

  void prefix_directive() {
    lex_.skip_ws();
    std::string name;
    while (!lex_.at_end() && lex_.peek() != ':') {
      char c = lex_.peek();
      if (!(detail::RdfLexer::is_name_char(c) || c == '.')) lex_.fail("invalid prefix name");
      name.push_back(c);
      lex_.advance();
    }
    lex_.expect(':', "after prefix name");
    lex_.skip_ws();
    std::string iri = resolve_iri(base_, lex_.read_iriref());
    prefixes_[name] = iri;
    graph_.set_prefix(name, iri);
  }

  void triples() {
    if (lex_.peek() == '[') {
      Term subject = blank_property_list();
      lex_.skip_ws();
      if (lex_.peek() != '.') predicate_object_list(subject);
      return;
    }
    Term subject = subject_term();
    lex_.skip_ws();
    predicate_object_list(subject);
  }

  Term subject_term() {
    char c = lex_.peek();
    if (c == '<') return Term::iri(resolve_iri(base_, lex_.read_iriref()));
    if (c == '_' && lex_.peek(1) == ':') return labeled_blank();
    if (c == '(') return collection();
    if (lex_.at_pname()) return prefixed_name();
    lex_.fail("expected a subject");
  }

  void predicate_object_list(const Term& subject) {
    for (;;) {
      lex_.skip_ws();
      Term predicate = verb();
      for (;;) {
        lex_.skip_ws();
        Term object = object_term();
        graph_.insert(subject, predicate, std::move(object));
        lex_.skip_ws();
        if (!lex_.consume(',')) break;
      }
      lex_.skip_ws();
      if (!lex_.consume(';')) return;
      // Repeated or trailing ';' are allowed.
      for (;;) {
        lex_.skip_ws();
        if (!lex_.consume(';')) break;
      }
      lex_.skip_ws();
      char c = lex_.peek();
      if (c == '.' || c == ']' || lex_.at_end()) return;
    }
  }

  Term verb() {
    if (lex_.peek() == 'a') {
      char next = lex_.peek(1);
      if (!(detail::RdfLexer::is_name_char(next) || next == ':' || next == '.')) {
        lex_.advance();
        return Term::iri(std::string(vocab::kRdfType));
      }
    }
    if (lex_.peek() == '<') return Term::iri(resolve_iri(base_, lex_.read_iriref()));
    if (lex_.at_pname()) return prefixed_name();
    lex_.fail("expected a predicate");
  }

  Term object_term() {
    char c = lex_.peek();
    if (c == '<') return Term::iri(resolve_iri(base_, lex_.read_iriref()));
    if (c == '_' && lex_.peek(1) == ':') return labeled_blank();
    if (c == '[') return blank_property_list();
    if (c == '(') return collection();
    if (c == '"' || c == '\'') return string_literal();
    if (lex_.at_number()) return lex_.read_number();
    if (lex_.consume_keyword("true")) return Term::literal("true", std::string(vocab::kXsdBoolean));
    if (lex_.consume_keyword("false")) return Term::literal("false", std::string(vocab::kXsdBoolean));
    if (lex_.at_pname()) return prefixed_name();
    lex_.fail("expected an object");
  }

  Term string_literal() {
    std::string lexical = lex_.read_string();
    if (lex_.consume('@')) return Term::literal(std::move(lexical), {}, lex_.read_langtag());
    if (lex_.peek() == '^' && lex_.peek(1) == '^') {
      lex_.advance(2);
      Term dt = lex_.peek() == '<' ? Term::iri(resolve_iri(base_, lex_.read_iriref())) : prefixed_name();
      return Term::literal(std::move(lexical), dt.value);
    }
    return Term::literal(std::move(lexical));
  }

  Term prefixed_name() {
    SourcePosition at = lex_.position();
    auto [prefix, local] = lex_.read_pname();
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) throw UnknownPrefixError(prefix, at);
    return Term::iri(it->second + local);
  }

  Term labeled_blank() {
    lex_.advance(2);
    std::string label = lex_.read_label();
    if (label.empty()) lex_.fail("empty blank node label");
    return Term::blank(blank_prefix_ + label);
  }

  Term fresh_blank() { return Term::blank(blank_prefix_ + "genid" + std::to_string(next_blank_++)); }

  Term blank_property_list() {
    lex_.expect('[', "to open a blank node");
    Term node = fresh_blank();
    lex_.skip_ws();
    if (!lex_.consume(']')) {
      predicate_object_list(node);
      lex_.skip_ws();
      lex_.expect(']', "to close the blank node");
    }
    return node;
  }

  Term collection() {
    lex_.expect('(', "to open a collection");
    std::vector<Term> items;
    for (;;) {
      lex_.skip_ws();
      if (lex_.at_end()) lex_.fail("unterminated collection");
      if (lex_.consume(')')) break;
      items.push_back(object_term());
    }
    Term head = Term::iri(std::string(vocab::kRdfNil));
    const Term first = Term::iri(std::string(vocab::kRdfFirst));
    const Term rest = Term::iri(std::string(vocab::kRdfRest));
    std::vector<Term> cells;
    for (std::size_t i = 0; i < items.size(); ++i) cells.push_back(fresh_blank());
    for (std::size_t i = items.size(); i-- > 0;) {
      graph_.insert(cells[i], first, items[i]);
      graph_.insert(cells[i], rest, head);
      head = cells[i];
    }
    return head;
  }

  detail::RdfLexer lex_;
  std::string base_;
  std::string blank_prefix_;
  std::map<std::string, std::string> prefixes_;
  std::size_t next_blank_ = 0;
  Graph graph_;
};

}  // namespace

Graph parse_turtle(std::string_view text, const TurtleOptions& options) {
  return TurtleParser(text, options).parse();
}

Graph parse_turtle(std::string_view text, std::optional<std::string> base) {
  TurtleOptions options;
  options.base = std::move(base);
  return parse_turtle(text, options);
}

Graph load_turtle(const std::string& path, const TurtleOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_turtle(ss.str(), options);
  } catch (const SyntaxError& err) {
    throw SyntaxError(path + ": " + err.detail(), err.position());
  }
}

// ---------------------------------------------------------------------------
// Turtle writer

namespace {

bool safe_local(std::string_view local) {
  if (local.empty()) return false;
  auto ok = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
  };
  if (local.front() == '-') return false;
  return std::all_of(local.begin(), local.end(), ok);
}

class TurtleWriter {
 public:
  explicit TurtleWriter(const Graph& graph) : graph_(graph) {}

  std::string write() {
    std::string out;
    for (const auto& [name, iri] : graph_.prefixes()) {
      out += "@prefix " + name + ": <" + iri + "> .\n";
    }
    if (!graph_.prefixes().empty() && !graph_.empty()) out += "\n";
    for (const Triple& t : graph_.triples()) {
      out += term(t.subject) + " ";
      out += t.predicate.value == vocab::kRdfType ? "a" : term(t.predicate);
      out += " " + term(t.object) + " .\n";
    }
    return out;
  }

 private:
  std::string iri(const std::string& value) const {
    const std::pair<std::string, std::string>* best = nullptr;
    for (const auto& p : graph_.prefixes()) {
      if (value.size() > p.second.size() && value.compare(0, p.second.size(), p.second) == 0 &&
          safe_local(std::string_view(value).substr(p.second.size()))) {
        if (!best || p.second.size() > best->second.size()) best = &p;
      }
    }
    if (best) return best->first + ":" + value.substr(best->second.size());
    return "<" + value + ">";
  }

  std::string term(const Term& t) const {
    switch (t.kind) {
      case Term::Kind::kIri:
        return iri(t.value);
      case Term::Kind::kBlank:
        return "_:" + t.value;
      case Term::Kind::kLiteral:
        break;
    }
    if (t.datatype == vocab::kXsdInteger || t.datatype == vocab::kXsdDecimal) {
      auto d = parse_decimal(t.value);
      const bool has_dot = t.value.find('.') != std::string::npos;
      const bool dot_ok = t.datatype == vocab::kXsdDecimal ? has_dot && t.value.back() != '.' : !has_dot;
      if (d && dot_ok && !t.value.empty() && t.value.front() != '.' &&
          !(t.value.size() > 1 && (t.value[0] == '+' || t.value[0] == '-') && t.value[1] == '.')) {
        return t.value;
      }
    }
    if (t.datatype == vocab::kXsdBoolean && (t.value == "true" || t.value == "false")) return t.value;
    std::string out = "\"" + escape_string(t.value) + "\"";
    if (!t.lang.empty()) return out + "@" + t.lang;
    if (t.datatype != vocab::kXsdString) out += "^^" + iri(t.datatype);
    return out;
  }

  const Graph& graph_;
};

}  // namespace

std::string serialize_turtle(const Graph& graph) { return TurtleWriter(graph).write(); }

// ---------------------------------------------------------------------------
// RDFS closure

Graph rdfs_closure(const Graph& graph) {
  Graph out = graph;
  const Term sub_class = Term::iri(std::string(vocab::kRdfsSubClassOf));
  const Term type = Term::iri(std::string(vocab::kRdfType));
  for (bool changed = true; changed;) {
    changed = false;
    std::multimap<Term, Term> supers;
    for (const Triple& t : out.match(std::nullopt, sub_class, std::nullopt)) supers.emplace(t.subject, t.object);
    std::vector<Triple> derived;
    for (const auto& [a, b] : supers) {
      auto [lo, hi] = supers.equal_range(b);
      for (auto it = lo; it != hi; ++it) derived.push_back({a, sub_class, it->second});
    }
    for (const Triple& t : out.match(std::nullopt, type, std::nullopt)) {
      auto [lo, hi] = supers.equal_range(t.object);
      for (auto it = lo; it != hi; ++it) derived.push_back({t.subject, type, it->second});
    }
    for (Triple& t : derived) {
      if (t.subject.is_literal()) continue;
      if (out.insert(std::move(t))) changed = true;
    }
  }
  return out;
}

}  // namespace pddls
