#include "pddls/syntax.h"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "pddls/error.h"
#include "pddls/strings.h"

namespace pddls {

namespace {

[[noreturn]] void fail(const SExpr& at, const std::string& message) {
  throw SyntaxError(message, at.position);
}

const std::string& expect_atom(const SExpr& e, const char* what) {
  if (!e.is_atom()) fail(e, std::string("expected ") + what + ", found a list");
  return e.text;
}

std::vector<TypedSymbol> parse_typed_list(const std::vector<SExpr>& items, std::size_t begin) {
  std::vector<TypedSymbol> out;
  std::size_t untyped_from = 0;
  for (std::size_t i = begin; i < items.size(); ++i) {
    const SExpr& item = items[i];
    if (item.is_atom() && item.text == "-") {
      if (i + 1 >= items.size()) fail(item, "type expected after '-'");
      const SExpr& type = items[i + 1];
      if (type.is_list()) {
        fail(type, "unsupported type expression '" + to_string(type) + "'");
      }
      if (untyped_from == out.size()) fail(item, "'-' without preceding symbols");
      for (std::size_t k = untyped_from; k < out.size(); ++k) out[k].type = type.text;
      untyped_from = out.size();
      ++i;
      continue;
    }
    out.push_back({expect_atom(item, "symbol"), ""});
  }
  return out;
}

void check_parameters(const std::vector<TypedSymbol>& params, const SExpr& at) {
  std::set<std::string> seen;
  for (const TypedSymbol& p : params) {
    if (!is_variable(p.name)) fail(at, "parameter '" + p.name + "' must start with '?'");
    if (!seen.insert(to_lower(p.name)).second) fail(at, "duplicate parameter '" + p.name + "'");
  }
}

Formula parse_formula(const SExpr& e);

// Flattens nested conjunctions and removes double negation. Negation over a
// conjunction has no equivalent in the supported subset.
Formula normalize(Formula f, const SExpr& at) {
  if (f.is_atom()) return f;
  if (f.is_not()) {
    Formula inner = normalize(std::move(f.children.front()), at);
    if (inner.is_not()) return std::move(inner.children.front());
    if (inner.is_and()) fail(at, "negated conjunction is not supported");
    return Formula::negate(std::move(inner));
  }
  std::vector<Formula> parts;
  for (Formula& c : f.children) {
    Formula n = normalize(std::move(c), at);
    if (n.is_and()) {
      for (Formula& g : n.children) parts.push_back(std::move(g));
    } else {
      parts.push_back(std::move(n));
    }
  }
  return Formula::conjunction(std::move(parts));
}

Formula parse_formula_raw(const SExpr& e) {
  if (!e.is_list()) fail(e, "expected a formula, found '" + e.text + "'");
  if (e.items.empty()) return Formula::conjunction({});
  const SExpr& head = e.items.front();
  const std::string& op = expect_atom(head, "predicate or connective");
  if (head.is_keyword("and")) {
    std::vector<Formula> parts;
    for (std::size_t i = 1; i < e.items.size(); ++i) parts.push_back(parse_formula_raw(e.items[i]));
    return Formula::conjunction(std::move(parts));
  }
  if (head.is_keyword("not")) {
    if (e.items.size() != 2) fail(e, "'not' takes exactly one argument");
    return Formula::negate(parse_formula_raw(e.items[1]));
  }
  for (const char* unsupported : {"or", "imply", "forall", "exists", "when"}) {
    if (head.is_keyword(unsupported)) fail(head, "unsupported connective '" + op + "'");
  }
  std::vector<std::string> args;
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    args.push_back(expect_atom(e.items[i], "term"));
  }
  return Formula::atom(op, std::move(args));
}

Formula parse_formula(const SExpr& e) { return normalize(parse_formula_raw(e), e); }

Formula parse_effect(const SExpr& e) {
  Formula f = parse_formula(e);
  if (!f.is_and()) f = Formula::conjunction({std::move(f)});
  return f;
}

void parse_context(const SExpr& section, Document& doc) {
  const auto& items = section.items;
  if (items.size() == 2 && items[1].is_atom()) {
    doc.context_ref = items[1].text;
    return;
  }
  std::size_t i = 1;
  while (i < items.size()) {
    const SExpr& term = items[i];
    expect_atom(term, "context term");
    if (i + 1 >= items.size() || !items[i + 1].is_atom() || items[i + 1].text != "-") {
      fail(term, "malformed term mapping for '" + term.text + "': expected '<term> - <URI>'");
    }
    if (i + 2 >= items.size()) fail(items[i + 1], "malformed term mapping: missing IRI");
    const SExpr& iri = items[i + 2];
    if (!iri.is_atom() || iri.text == "-") fail(iri, "malformed term mapping: missing IRI");
    try {
      doc.context.bind(term.text, iri.text);
    } catch (const ContextError& err) {
      fail(term, err.what());
    }
    i += 3;
  }
}

ActionDef parse_action(const SExpr& section) {
  const auto& items = section.items;
  if (items.size() < 2) fail(section, "action name expected");
  ActionDef action;
  action.name = expect_atom(items[1], "action name");
  std::set<std::string> seen;
  for (std::size_t i = 2; i < items.size(); i += 2) {
    const SExpr& key = items[i];
    const std::string& k = expect_atom(key, "action field");
    if (i + 1 >= items.size()) fail(key, "value expected after '" + k + "'");
    const SExpr& value = items[i + 1];
    if (!seen.insert(to_lower(k)).second) fail(key, "duplicate action field '" + k + "'");
    if (key.is_keyword(":parameters")) {
      if (!value.is_list()) fail(value, ":parameters expects a list");
      action.parameters = parse_typed_list(value.items, 0);
      check_parameters(action.parameters, value);
    } else if (key.is_keyword(":precondition")) {
      action.precondition = parse_formula(value);
    } else if (key.is_keyword(":effect")) {
      action.effect = parse_effect(value);
    } else {
      fail(key, "unsupported action field '" + k + "'");
    }
  }
  return action;
}

std::vector<PredicateDecl> parse_predicates(const SExpr& section) {
  std::vector<PredicateDecl> out;
  for (std::size_t i = 1; i < section.items.size(); ++i) {
    const SExpr& decl = section.items[i];
    if (!decl.is_list() || decl.items.empty()) fail(decl, "predicate declaration expected");
    PredicateDecl p;
    p.name = expect_atom(decl.items.front(), "predicate name");
    p.params = parse_typed_list(decl.items, 1);
    for (const TypedSymbol& param : p.params) {
      if (!is_variable(param.name)) fail(decl, "predicate parameter '" + param.name + "' must start with '?'");
    }
    out.push_back(std::move(p));
  }
  return out;
}

Document parse_define(const SExpr& root) {
  if (!root.is_list() || root.items.size() < 2 || !root.items[0].is_keyword("define")) {
    fail(root, "expected '(define ...)'");
  }
  const SExpr& header = root.items[1];
  if (!header.is_list() || header.items.size() != 2) fail(header, "expected '(domain <name>)' or '(problem <name>)'");
  Document doc;
  if (header.items[0].is_keyword("domain")) {
    doc.kind = DocumentKind::kDomain;
  } else if (header.items[0].is_keyword("problem")) {
    doc.kind = DocumentKind::kProblem;
  } else {
    fail(header.items[0], "expected 'domain' or 'problem'");
  }
  doc.name = expect_atom(header.items[1], "document name");

  std::set<std::string> seen;
  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const SExpr& section = root.items[i];
    if (!section.is_list() || section.items.empty()) fail(section, "section expected");
    const SExpr& key = section.items.front();
    const std::string name = to_lower(expect_atom(key, "section keyword"));
    if (name != ":action" && !seen.insert(name).second) fail(key, "duplicate section '" + key.text + "'");

    const bool domain = doc.is_domain();
    if (name == ":requirements") {
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        doc.requirements.push_back(expect_atom(section.items[k], "requirement key"));
      }
    } else if (name == ":context") {
      parse_context(section, doc);
    } else if (domain && name == ":types") {
      doc.types = parse_typed_list(section.items, 1);
    } else if (domain && name == ":constants") {
      doc.constants = parse_typed_list(section.items, 1);
    } else if (domain && name == ":predicates") {
      doc.predicates = parse_predicates(section);
    } else if (domain && name == ":functions") {
      doc.functions = section;
    } else if (name == ":constraints") {
      doc.constraints = section;
    } else if (domain && name == ":action") {
      ActionDef action = parse_action(section);
      if (doc.find_action(action.name)) fail(section, "duplicate action '" + action.name + "'");
      doc.actions.push_back(std::move(action));
    } else if (!domain && name == ":domain") {
      if (section.items.size() != 2) fail(section, "expected '(:domain <name>)'");
      doc.domain_ref = expect_atom(section.items[1], "domain name");
    } else if (!domain && name == ":objects") {
      doc.objects = parse_typed_list(section.items, 1);
    } else if (!domain && name == ":init") {
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        Formula lit = parse_formula(section.items[k]);
        if (!(lit.is_atom() || (lit.is_not() && lit.children.front().is_atom()))) {
          fail(section.items[k], "init entries must be literals");
        }
        doc.init.push_back(std::move(lit));
      }
    } else if (!domain && name == ":goal") {
      if (section.items.size() != 2) fail(section, "expected '(:goal <formula>)'");
      doc.goal = parse_formula(section.items[1]);
    } else {
      fail(key, "unsupported section '" + key.text + "' in " + (domain ? "domain" : "problem"));
    }
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Printing

std::string typed_list(const std::vector<TypedSymbol>& symbols) {
  std::string out;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i > 0) out += ' ';
    out += symbols[i].name;
    const bool last_of_group = i + 1 == symbols.size() || symbols[i + 1].type != symbols[i].type;
    if (!symbols[i].type.empty() && last_of_group) out += " - " + symbols[i].type;
  }
  return out;
}

void write_formula(const Formula& f, std::string& out) {
  switch (f.kind) {
    case Formula::Kind::kAtom:
      out += '(' + f.name;
      for (const std::string& a : f.args) out += ' ' + a;
      out += ')';
      break;
    case Formula::Kind::kNot:
      out += "(not ";
      write_formula(f.children.front(), out);
      out += ')';
      break;
    case Formula::Kind::kAnd:
      out += "(and";
      for (const Formula& c : f.children) {
        out += ' ';
        write_formula(c, out);
      }
      out += ')';
      break;
  }
}

// Multi-line rendering for top-level conjunctions in actions and goals.
std::string block_formula(const Formula& f, const std::string& indent) {
  if (!f.is_and() || f.children.size() < 2) return to_string(f);
  std::string out = "(and";
  for (const Formula& c : f.children) out += "\n" + indent + to_string(c);
  out += ")";
  return out;
}

}  // namespace

Document parse_document(std::string_view text) {
  std::vector<SExpr> top = read_sexprs(text);
  if (top.empty()) throw SyntaxError("empty document", SourcePosition{});
  if (top.size() > 1) fail(top[1], "unexpected content after the document");
  return parse_define(top.front());
}

Document load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_document(ss.str());
  } catch (const SyntaxError& err) {
    throw SyntaxError(path + ": " + err.detail(), err.position());
  }
}

std::string to_string(const Formula& formula) {
  std::string out;
  write_formula(formula, out);
  return out;
}

std::string print_pddl(const Document& doc, bool strip_semantics) {
  std::vector<std::string> sections;
  const bool domain = doc.is_domain();

  if (!domain && !doc.domain_ref.empty()) sections.push_back("(:domain " + doc.domain_ref + ")");

  std::vector<std::string> reqs;
  for (const std::string& r : doc.requirements) {
    if (strip_semantics && iequals(r, ":semantics")) continue;
    reqs.push_back(r);
  }
  if (!reqs.empty()) {
    std::string s = "(:requirements";
    for (const std::string& r : reqs) s += ' ' + r;
    sections.push_back(s + ")");
  }

  if (!strip_semantics) {
    if (doc.context_ref) {
      sections.push_back("(:context " + *doc.context_ref + ")");
    } else if (!doc.context.empty()) {
      std::string s = "(:context";
      for (const auto& b : doc.context.entries) s += "\n    " + b.term + " - " + b.iri;
      sections.push_back(s + ")");
    }
  }

  if (domain) {
    if (!doc.types.empty()) sections.push_back("(:types " + typed_list(doc.types) + ")");
    if (!doc.constants.empty()) sections.push_back("(:constants " + typed_list(doc.constants) + ")");
    if (!doc.predicates.empty()) {
      std::string s = "(:predicates";
      for (const PredicateDecl& p : doc.predicates) {
        s += "\n    (" + p.name;
        if (!p.params.empty()) s += ' ' + typed_list(p.params);
        s += ')';
      }
      sections.push_back(s + ")");
    }
    if (doc.functions) sections.push_back(to_string(*doc.functions));
    if (doc.constraints) sections.push_back(to_string(*doc.constraints));
    for (const ActionDef& a : doc.actions) {
      std::string s = "(:action " + a.name;
      s += "\n    :parameters (" + typed_list(a.parameters) + ")";
      if (a.precondition) s += "\n    :precondition " + block_formula(*a.precondition, "      ");
      if (a.effect) s += "\n    :effect " + block_formula(*a.effect, "      ");
      sections.push_back(s + ")");
    }
  } else {
    if (!doc.objects.empty()) {
      std::string s = "(:objects";
      for (const TypedSymbol& o : doc.objects) {
        s += "\n    " + o.name;
        if (!o.type.empty()) s += " - " + o.type;
      }
      sections.push_back(s + ")");
    }
    if (!doc.init.empty()) {
      std::string s = "(:init";
      for (const Formula& f : doc.init) s += "\n    " + to_string(f);
      sections.push_back(s + ")");
    }
    if (doc.goal) sections.push_back("(:goal " + block_formula(*doc.goal, "    ") + ")");
    if (doc.constraints) sections.push_back(to_string(*doc.constraints));
  }

  std::string out = std::string("(define (") + (domain ? "domain " : "problem ") + doc.name + ")";
  for (const std::string& s : sections) out += "\n  " + s;
  out += ")\n";
  return out;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void check_atom_arity(const Formula& atom, const Document& domain, const std::string& where,
                      std::vector<Diagnostic>& out) {
  if (atom.name == "=") return;
  const PredicateDecl* decl = domain.find_predicate(atom.name);
  if (!decl) {
    out.push_back({Severity::kError, "undeclared-predicate",
                   where + ": predicate '" + atom.name + "' is not declared"});
    return;
  }
  if (decl->arity() != atom.args.size()) {
    out.push_back({Severity::kError, "arity-mismatch",
                   where + ": '" + to_string(atom) + "' uses " + std::to_string(atom.args.size()) +
                       " argument(s) but '" + decl->name + "' has arity " +
                       std::to_string(decl->arity())});
  }
}

bool declared_in(const std::vector<TypedSymbol>& symbols, std::string_view name) {
  for (const TypedSymbol& s : symbols) {
    if (iequals(s.name, name)) return true;
  }
  return false;
}

void check_duplicate_iris(const Document& doc, std::vector<Diagnostic>& out) {
  std::map<std::string, std::string> first_term;
  for (const auto& b : doc.context.entries) {
    auto [it, inserted] = first_term.emplace(b.iri, b.term);
    if (!inserted) {
      out.push_back({Severity::kWarning, "duplicate-iri",
                     "terms '" + it->second + "' and '" + b.term + "' both bind " + b.iri});
    }
  }
}

void check_problem_objects(const Document& problem, const std::vector<TypedSymbol>& constants,
                           std::vector<Diagnostic>& out) {
  std::set<std::string> reported;
  auto check = [&](const Formula& atom) {
    for (const std::string& arg : atom.args) {
      if (declared_in(problem.objects, arg) || declared_in(constants, arg)) continue;
      if (reported.insert(to_lower(arg)).second) {
        out.push_back({Severity::kWarning, "undeclared-object",
                       "object '" + arg + "' is used but not declared"});
      }
    }
  };
  for (const Formula& f : problem.init) for_each_atom(f, check);
  if (problem.goal) for_each_atom(*problem.goal, check);
}

}  // namespace

std::vector<Diagnostic> validate_document(const Document& doc) {
  std::vector<Diagnostic> out;
  check_duplicate_iris(doc, out);
  if (doc.is_domain()) {
    for (const ActionDef& a : doc.actions) {
      std::set<std::string> reported;
      auto check = [&](const Formula& atom) {
        check_atom_arity(atom, doc, "action '" + a.name + "'", out);
        for (const std::string& arg : atom.args) {
          if (is_variable(arg)) {
            if (!declared_in(a.parameters, arg) && reported.insert(to_lower(arg)).second) {
              out.push_back({Severity::kWarning, "undeclared-variable",
                             "action '" + a.name + "': variable '" + arg +
                                 "' is not among the parameters"});
            }
          } else if (!declared_in(doc.constants, arg) && reported.insert(to_lower(arg)).second) {
            out.push_back({Severity::kWarning, "undeclared-constant",
                           "action '" + a.name + "': constant '" + arg + "' is not declared"});
          }
        }
      };
      if (a.precondition) for_each_atom(*a.precondition, check);
      if (a.effect) for_each_atom(*a.effect, check);
    }
  } else {
    check_problem_objects(doc, {}, out);
  }
  return out;
}

std::vector<Diagnostic> validate_problem(const Document& problem, const Document& domain) {
  std::vector<Diagnostic> out;
  auto check = [&](const Formula& atom) { check_atom_arity(atom, domain, "problem", out); };
  for (const Formula& f : problem.init) for_each_atom(f, check);
  if (problem.goal) for_each_atom(*problem.goal, check);
  check_problem_objects(problem, domain.constants, out);
  return out;
}

}  // namespace pddls
