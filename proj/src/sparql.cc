#include "pddls/sparql.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

#include "pddls/error.h"
#include "pddls/vocab.h"
#include "rdf_lexer.h"

namespace pddls::sparql {

namespace {

class QueryParser {
 public:
  explicit QueryParser(std::string_view text) : lex_(text) {}

  Query parse() {
    prologue();
    if (lex_.at_keyword("CONSTRUCT") || lex_.at_keyword("ASK") || lex_.at_keyword("DESCRIBE")) {
      unsupported("query forms other than SELECT");
    }
    if (!lex_.consume_keyword("SELECT")) lex_.fail("expected SELECT");
    lex_.skip_ws();
    if (!lex_.consume_keyword("DISTINCT")) lex_.consume_keyword("REDUCED");
    lex_.skip_ws();
    if (lex_.peek() == '*') unsupported("SELECT *");
    while (lex_.peek() == '?' || lex_.peek() == '$') {
      query_.projected.push_back(variable());
      lex_.skip_ws();
    }
    if (lex_.peek() == '(') unsupported("projection expressions");
    if (query_.projected.empty()) lex_.fail("expected at least one projected variable");
    if (lex_.at_keyword("FROM")) unsupported("FROM");
    lex_.consume_keyword("WHERE");
    lex_.skip_ws();
    group();
    lex_.skip_ws();
    for (const char* kw : {"ORDER", "LIMIT", "OFFSET", "GROUP", "HAVING", "VALUES"}) {
      if (lex_.at_keyword(kw)) unsupported(kw);
    }
    if (!lex_.at_end()) lex_.fail("unexpected content after the query");
    check_projection();
    return std::move(query_);
  }

 private:
  [[noreturn]] void unsupported(const std::string& what) {
    throw UnsupportedFeatureError("unsupported SPARQL feature: " + what + " (at " +
                                  std::to_string(lex_.position().line) + ":" +
                                  std::to_string(lex_.position().column) + ")");
  }

  void prologue() {
    for (;;) {
      lex_.skip_ws();
      if (lex_.consume_keyword("PREFIX")) {
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
        query_.prefixes.emplace_back(name, iri);
      } else if (lex_.consume_keyword("BASE")) {
        lex_.skip_ws();
        base_ = resolve_iri(base_, lex_.read_iriref());
      } else {
        return;
      }
    }
  }

  Variable variable() {
    lex_.advance();  // '?' or '$'
    std::string name = lex_.read_label();
    if (name.empty()) lex_.fail("empty variable name");
    return Variable{std::move(name)};
  }

  void group() {
    lex_.expect('{', "to open the WHERE clause");
    for (;;) {
      lex_.skip_ws();
      if (lex_.at_end()) lex_.fail("unterminated group pattern");
      if (lex_.consume('}')) return;
      if (lex_.consume('.')) continue;
      if (lex_.peek() == '{') unsupported("nested group patterns and subqueries");
      for (const char* kw : {"OPTIONAL", "UNION", "MINUS", "GRAPH", "SERVICE", "BIND", "VALUES", "SELECT"}) {
        if (lex_.at_keyword(kw)) unsupported(kw);
      }
      if (lex_.consume_keyword("FILTER")) {
        filter();
        continue;
      }
      triples_block();
    }
  }

  void filter() {
    lex_.skip_ws();
    if (lex_.peek() != '(') unsupported("FILTER function calls");
    conjunction();
  }

  // '(' comparison ('&&' comparison)* ')', where a comparison may itself be
  // parenthesized.
  void conjunction() {
    lex_.expect('(', "in FILTER");
    for (;;) {
      lex_.skip_ws();
      if (lex_.peek() == '(') {
        conjunction();
      } else {
        comparison();
      }
      lex_.skip_ws();
      if (lex_.peek() == '&' && lex_.peek(1) == '&') {
        lex_.advance(2);
        continue;
      }
      if (lex_.peek() == '|' && lex_.peek(1) == '|') unsupported("'||' in FILTER");
      lex_.expect(')', "to close FILTER expression");
      return;
    }
  }

  void comparison() {
    if (lex_.peek() == '!') unsupported("'!' in FILTER");
    Filter f;
    f.left = operand();
    lex_.skip_ws();
    char a = lex_.peek();
    char b = lex_.peek(1);
    if (a == '<' && b == '=') {
      f.op = CompareOp::kLessEqual;
      lex_.advance(2);
    } else if (a == '>' && b == '=') {
      f.op = CompareOp::kGreaterEqual;
      lex_.advance(2);
    } else if (a == '!' && b == '=') {
      f.op = CompareOp::kNotEqual;
      lex_.advance(2);
    } else if (a == '<') {
      f.op = CompareOp::kLess;
      lex_.advance();
    } else if (a == '>') {
      f.op = CompareOp::kGreater;
      lex_.advance();
    } else if (a == '=') {
      f.op = CompareOp::kEqual;
      lex_.advance();
    } else if (a == ')' || a == '&') {
      unsupported("non-comparison FILTER expressions");
    } else {
      lex_.fail("expected a comparison operator");
    }
    lex_.skip_ws();
    f.right = operand();
    query_.filters.push_back(std::move(f));
  }

  PatternTerm operand() {
    char c = lex_.peek();
    if (c == '?' || c == '$') return variable();
    if (c == '<') return Term::iri(resolve_iri(base_, lex_.read_iriref()));
    if (c == '"' || c == '\'') return literal();
    if (lex_.at_number()) return lex_.read_number();
    if (lex_.consume_keyword("true")) return Term::literal("true", std::string(vocab::kXsdBoolean));
    if (lex_.consume_keyword("false")) return Term::literal("false", std::string(vocab::kXsdBoolean));
    if (lex_.at_pname()) return prefixed_name();
    if (std::isalpha(static_cast<unsigned char>(c))) unsupported("FILTER function calls");
    lex_.fail("expected a FILTER operand");
  }

  void triples_block() {
    PatternTerm subject = node("subject");
    for (;;) {
      lex_.skip_ws();
      PatternTerm predicate = verb();
      for (;;) {
        lex_.skip_ws();
        PatternTerm object = node("object");
        query_.patterns.push_back({subject, predicate, std::move(object)});
        lex_.skip_ws();
        if (!lex_.consume(',')) break;
      }
      lex_.skip_ws();
      if (!lex_.consume(';')) break;
      lex_.skip_ws();
      while (lex_.consume(';')) lex_.skip_ws();
      char c = lex_.peek();
      if (c == '.' || c == '}') break;
    }
  }

  PatternTerm verb() {
    char c = lex_.peek();
    if (c == '^' || c == '!' || c == '(') unsupported("property paths");
    PatternTerm p;
    if (c == '?' || c == '$') {
      p = variable();
    } else if (c == 'a' && !(detail::RdfLexer::is_name_char(lex_.peek(1)) || lex_.peek(1) == ':')) {
      lex_.advance();
      p = Term::iri(std::string(vocab::kRdfType));
    } else if (c == '<') {
      p = Term::iri(resolve_iri(base_, lex_.read_iriref()));
    } else if (lex_.at_pname()) {
      p = prefixed_name();
    } else {
      lex_.fail("expected a predicate");
    }
    char n = lex_.peek();
    if (n == '/' || n == '|' || n == '*' || n == '+' || (n == '?' && !detail::RdfLexer::is_name_char(lex_.peek(1)))) {
      unsupported("property paths");
    }
    return p;
  }

  PatternTerm node(const char* role) {
    char c = lex_.peek();
    if (c == '?' || c == '$') return variable();
    if (c == '<') return Term::iri(resolve_iri(base_, lex_.read_iriref()));
    if (c == '[' || (c == '_' && lex_.peek(1) == ':')) unsupported("blank nodes in patterns");
    if (c == '(') unsupported("collections in patterns");
    if (c == '"' || c == '\'') return literal();
    if (lex_.at_number()) return lex_.read_number();
    if (lex_.consume_keyword("true")) return Term::literal("true", std::string(vocab::kXsdBoolean));
    if (lex_.consume_keyword("false")) return Term::literal("false", std::string(vocab::kXsdBoolean));
    if (lex_.at_pname()) return prefixed_name();
    lex_.fail(std::string("expected a ") + role);
  }

  Term literal() {
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

  void check_projection() {
    for (const Variable& v : query_.projected) {
      bool found = false;
      for (const TriplePattern& tp : query_.patterns) {
        for (const PatternTerm* pt : {&tp.subject, &tp.predicate, &tp.object}) {
          if (const auto* var = std::get_if<Variable>(pt); var && *var == v) found = true;
        }
      }
      if (!found) throw SyntaxError("projected variable ?" + v.name + " does not occur in the pattern", {});
    }
  }

  detail::RdfLexer lex_;
  std::string base_;
  std::map<std::string, std::string> prefixes_;
  Query query_;
};

// Compiled form used by the evaluator: variables replaced by slot indices.
struct Slot {
  int var = -1;  // -1 when constant
  Term constant;
};

struct CompiledPattern {
  Slot s, p, o;
};

struct CompiledFilter {
  Slot left, right;
  CompareOp op;
};

class Evaluator {
 public:
  Evaluator(const Query& q, const Graph& g) : query_(q), graph_(g) {}

  ResultSet run() {
    for (const TriplePattern& tp : query_.patterns) {
      patterns_.push_back({slot(tp.subject), slot(tp.predicate), slot(tp.object)});
    }
    for (const Filter& f : query_.filters) filters_.push_back({slot(f.left), slot(f.right), f.op});
    for (const Variable& v : query_.projected) projection_.push_back(slot(v).var);

    order_patterns();

    bindings_.assign(vars_.size(), std::nullopt);
    // Filters over constants only, or over variables no pattern binds.
    for (std::size_t i = 0; i < filters_.size(); ++i) {
      if (filter_step_[i] == kNever) return {};
      if (filter_step_[i] == kBeforeAll && !passes(filters_[i])) return {};
    }
    join(0);
    return std::move(results_);
  }

 private:
  static constexpr std::size_t kBeforeAll = static_cast<std::size_t>(-1);
  static constexpr std::size_t kNever = static_cast<std::size_t>(-2);

  Slot slot(const PatternTerm& pt) {
    if (const auto* v = std::get_if<Variable>(&pt)) return Slot{var_index(v->name), {}};
    return Slot{-1, std::get<Term>(pt)};
  }

  int var_index(const std::string& name) {
    auto [it, inserted] = var_ids_.emplace(name, static_cast<int>(vars_.size()));
    if (inserted) vars_.push_back(name);
    return it->second;
  }

  // Greedy most-selective-first ordering: at each step take the pattern with
  // the most positions fixed by constants or previously bound variables.
  void order_patterns() {
    std::vector<bool> bound(vars_.size(), false);
    std::vector<bool> used(patterns_.size(), false);
    std::vector<CompiledPattern> ordered;
    for (std::size_t step = 0; step < patterns_.size(); ++step) {
      int best = -1;
      int best_score = -1;
      for (std::size_t i = 0; i < patterns_.size(); ++i) {
        if (used[i]) continue;
        int score = 0;
        for (const Slot* s : {&patterns_[i].s, &patterns_[i].p, &patterns_[i].o}) {
          if (s->var < 0 || bound[s->var]) ++score;
        }
        if (score > best_score) {
          best_score = score;
          best = static_cast<int>(i);
        }
      }
      used[best] = true;
      for (const Slot* s : {&patterns_[best].s, &patterns_[best].p, &patterns_[best].o}) {
        if (s->var >= 0) bound[s->var] = true;
      }
      ordered.push_back(patterns_[best]);
    }
    patterns_ = std::move(ordered);

    std::vector<std::size_t> first_bound(vars_.size(), kNever);
    for (std::size_t step = 0; step < patterns_.size(); ++step) {
      for (const Slot* s : {&patterns_[step].s, &patterns_[step].p, &patterns_[step].o}) {
        if (s->var >= 0 && first_bound[s->var] == kNever) first_bound[s->var] = step;
      }
    }
    for (const CompiledFilter& f : filters_) {
      std::size_t step = kBeforeAll;
      for (const Slot* s : {&f.left, &f.right}) {
        if (s->var < 0) continue;
        std::size_t b = first_bound[s->var];
        if (b == kNever) {
          step = kNever;
          break;
        }
        if (step == kBeforeAll || b > step) step = b;
      }
      filter_step_.push_back(step);
    }
  }

  const Term& value(const Slot& s) const { return s.var < 0 ? s.constant : *bindings_[s.var]; }

  bool passes(const CompiledFilter& f) const {
    return compare_terms(value(f.left), f.op, value(f.right)) == Truth::kTrue;
  }

  std::optional<Term> fixed(const Slot& s) const {
    if (s.var < 0) return s.constant;
    return bindings_[s.var];
  }

  // Binds `s` to `t`; false on conflict. Records newly bound slots in `newly`.
  bool unify(const Slot& s, const Term& t, std::vector<int>& newly) {
    if (s.var < 0) return s.constant == t;
    if (bindings_[s.var]) return *bindings_[s.var] == t;
    bindings_[s.var] = t;
    newly.push_back(s.var);
    return true;
  }

  void join(std::size_t step) {
    if (step == patterns_.size()) {
      Row row;
      for (int v : projection_) row.push_back(*bindings_[v]);
      results_.insert(std::move(row));
      return;
    }
    const CompiledPattern& cp = patterns_[step];
    std::optional<Term> s = fixed(cp.s);
    std::optional<Term> p = fixed(cp.p);
    std::optional<Term> o = fixed(cp.o);
    if ((s && s->is_literal()) || (p && !p->is_iri())) return;
    for (const Triple& t : graph_.match(s, p, o)) {
      std::vector<int> newly;
      bool ok = unify(cp.s, t.subject, newly) && unify(cp.p, t.predicate, newly) &&
                unify(cp.o, t.object, newly);
      if (ok) {
        for (std::size_t i = 0; i < filters_.size() && ok; ++i) {
          if (filter_step_[i] == step) ok = passes(filters_[i]);
        }
      }
      if (ok) join(step + 1);
      for (int v : newly) bindings_[v].reset();
    }
  }

  const Query& query_;
  const Graph& graph_;
  std::map<std::string, int> var_ids_;
  std::vector<std::string> vars_;
  std::vector<CompiledPattern> patterns_;
  std::vector<CompiledFilter> filters_;
  std::vector<std::size_t> filter_step_;
  std::vector<int> projection_;
  std::vector<std::optional<Term>> bindings_;
  ResultSet results_;
};

}  // namespace

Query parse_query(std::string_view text) { return QueryParser(text).parse(); }

ResultSet evaluate(const Query& query, const Graph& graph) { return Evaluator(query, graph).run(); }

Truth compare_terms(const Term& left, CompareOp op, const Term& right) {
  auto to_truth = [](bool b) { return b ? Truth::kTrue : Truth::kFalse; };
  std::optional<Decimal> a = numeric_value(left);
  std::optional<Decimal> b = numeric_value(right);
  if (a && b) {
    int c = compare(*a, *b);
    switch (op) {
      case CompareOp::kLess: return to_truth(c < 0);
      case CompareOp::kLessEqual: return to_truth(c <= 0);
      case CompareOp::kEqual: return to_truth(c == 0);
      case CompareOp::kNotEqual: return to_truth(c != 0);
      case CompareOp::kGreaterEqual: return to_truth(c >= 0);
      case CompareOp::kGreater: return to_truth(c > 0);
    }
  }
  if (a || b) return Truth::kError;
  if (op == CompareOp::kEqual) return to_truth(left == right);
  if (op == CompareOp::kNotEqual) return to_truth(left != right);
  return Truth::kError;
}

std::string to_string(CompareOp op) {
  switch (op) {
    case CompareOp::kLess: return "<";
    case CompareOp::kLessEqual: return "<=";
    case CompareOp::kEqual: return "=";
    case CompareOp::kNotEqual: return "!=";
    case CompareOp::kGreaterEqual: return ">=";
    case CompareOp::kGreater: return ">";
  }
  return "=";
}

std::string format_results(const ResultSet& results) {
  std::string out;
  for (const Row& row : results) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += '\t';
      out += pddls::to_string(row[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace pddls::sparql
