#include "testing.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "pddls/alias.h"
#include "pddls/pipeline.h"
#include "pddls/strings.h"
#include "pddls/syntax.h"
#include "pddls/vocab.h"

#ifndef PDDLS_DATA_DIR
#error "PDDLS_DATA_DIR must point at the data directory"
#endif

namespace pddls::testing {

std::string data_path(const std::string& relative) { return std::string(PDDLS_DATA_DIR) + "/" + relative; }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Document load_data_document(const std::string& relative) { return load_document(data_path(relative)); }

Graph load_data_graphs(const std::vector<std::string>& relative) {
  std::vector<std::filesystem::path> paths;
  for (const std::string& r : relative) paths.emplace_back(data_path(r));
  return load_graphs(paths);
}

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[uniform(rng, 0, items.size() - 1)];
}

// ---------------------------------------------------------------------------
// PDDLS documents

// Typed symbols first, untyped last: the only order a typed list can express.
std::vector<TypedSymbol> typed_symbols(Rng& rng, const std::vector<std::string>& names,
                                       const std::vector<std::string>& types) {
  std::vector<TypedSymbol> typed, untyped;
  for (const std::string& n : names) {
    if (!types.empty() && chance(rng, 0.6)) {
      typed.push_back({n, pick(rng, types)});
    } else {
      untyped.push_back({n, ""});
    }
  }
  typed.insert(typed.end(), untyped.begin(), untyped.end());
  return typed;
}

std::vector<std::string> numbered(const std::string& stem, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

Formula random_atom(Rng& rng, const std::vector<PredicateDecl>& predicates, const std::vector<std::string>& terms) {
  if (predicates.empty() || chance(rng, 0.1)) {
    std::vector<std::string> args;
    for (std::size_t i = uniform(rng, 0, 2); i > 0 && !terms.empty(); --i) args.push_back(pick(rng, terms));
    return Formula::atom("free-" + std::to_string(uniform(rng, 0, 3)), std::move(args));
  }
  const PredicateDecl& p = pick(rng, predicates);
  std::vector<std::string> args;
  for (std::size_t i = 0; i < p.arity(); ++i) args.push_back(terms.empty() ? "k" : pick(rng, terms));
  return Formula::atom(p.name, std::move(args));
}

Formula random_formula(Rng& rng, const std::vector<PredicateDecl>& predicates, const std::vector<std::string>& terms,
                       int depth) {
  const std::size_t kind = depth <= 0 ? uniform(rng, 0, 1) : uniform(rng, 0, 3);
  if (kind == 0) return random_atom(rng, predicates, terms);
  if (kind == 1) return Formula::negate(random_atom(rng, predicates, terms));
  if (kind == 2 && chance(rng, 0.3)) return Formula::negate(Formula::negate(random_atom(rng, predicates, terms)));
  std::vector<Formula> parts;
  for (std::size_t i = uniform(rng, 0, 3); i > 0; --i) parts.push_back(random_formula(rng, predicates, terms, depth - 1));
  return Formula::conjunction(std::move(parts));
}

void random_context(Rng& rng, Document& doc, const std::vector<std::string>& candidates) {
  std::set<std::string> used;
  for (const std::string& c : candidates) {
    if (!chance(rng, 0.5) || !used.insert(to_lower(c)).second) continue;
    const std::string iri = chance(rng, 0.2) ? "uri:shared/" + std::to_string(uniform(rng, 0, 2))
                                             : "http://example.org/v#" + c;
    doc.context.bind(c, iri);
  }
}

const std::vector<std::string> kRequirementPool = {":strips", ":typing", ":negative-preconditions",
                                                   ":adl", ":semantics", ":equality", ":fluents"};

}  // namespace

Document random_document(Rng& rng, DocumentKind kind) {
  Document doc;
  doc.kind = kind;
  const bool domain = kind == DocumentKind::kDomain;
  doc.name = (domain ? "Dom-" : "prob_") + std::to_string(uniform(rng, 0, 999));
  std::vector<std::string> reqs = kRequirementPool;
  std::shuffle(reqs.begin(), reqs.end(), rng);
  reqs.resize(uniform(rng, 0, reqs.size()));
  doc.requirements = reqs;

  std::vector<std::string> context_candidates{doc.name};
  if (domain) {
    const std::vector<std::string> type_names = numbered("T", uniform(rng, 0, 3));
    for (std::size_t i = 0; i < type_names.size(); ++i) {
      std::vector<std::string> parents{"object"};
      parents.insert(parents.end(), type_names.begin(), type_names.begin() + i);
      doc.types.push_back({type_names[i], ""});
      if (chance(rng, 0.7)) doc.types.back().type = pick(rng, parents);
    }
    std::stable_partition(doc.types.begin(), doc.types.end(), [](const TypedSymbol& t) { return !t.type.empty(); });
    doc.constants = typed_symbols(rng, numbered("c", uniform(rng, 0, 2)), type_names);
    for (const std::string& name : numbered("pred-", uniform(rng, 0, 3))) {
      PredicateDecl p{name, {}};
      const auto vars = numbered("?v", uniform(rng, 0, 3));
      p.params = typed_symbols(rng, vars, type_names);
      doc.predicates.push_back(std::move(p));
      context_candidates.push_back(name);
    }
    if (chance(rng, 0.2)) doc.functions = read_sexprs("(:functions (total-cost) - number)").front();
    if (chance(rng, 0.2)) doc.constraints = read_sexprs("(:constraints (always (x)))").front();
    for (const std::string& name : numbered("Act-", uniform(rng, 0, 2))) {
      ActionDef a;
      a.name = name;
      a.parameters = typed_symbols(rng, numbered("?x", uniform(rng, 0, 3)), type_names);
      std::vector<std::string> terms;
      for (const TypedSymbol& p : a.parameters) terms.push_back(p.name);
      for (const TypedSymbol& c : doc.constants) terms.push_back(c.name);
      if (chance(rng, 0.8)) a.precondition = random_formula(rng, doc.predicates, terms, 2);
      if (chance(rng, 0.8)) a.effect = random_formula(rng, doc.predicates, terms, 1);
      doc.actions.push_back(std::move(a));
      context_candidates.push_back(name);
    }
    for (const TypedSymbol& c : doc.constants) context_candidates.push_back(c.name);
    for (const TypedSymbol& t : doc.types) context_candidates.push_back(t.name);
  } else {
    doc.domain_ref = "Dom-" + std::to_string(uniform(rng, 0, 999));
    const std::vector<std::string> types{"T0", "T1"};
    doc.objects = typed_symbols(rng, numbered("Obj_", uniform(rng, 0, 4)), chance(rng, 0.5) ? types : std::vector<std::string>{});
    std::vector<std::string> terms;
    for (const TypedSymbol& o : doc.objects) terms.push_back(o.name);
    const std::vector<PredicateDecl> preds{{"at", {{"?a", ""}}}, {"link", {{"?a", ""}, {"?b", ""}}}, {"flag", {}}};
    for (std::size_t i = uniform(rng, 0, 4); i > 0; --i) {
      Formula a = random_atom(rng, preds, terms);
      doc.init.push_back(chance(rng, 0.15) ? Formula::negate(std::move(a)) : std::move(a));
    }
    if (chance(rng, 0.8)) doc.goal = random_formula(rng, preds, terms, 2);
    for (const TypedSymbol& o : doc.objects) context_candidates.push_back(o.name);
    context_candidates.push_back("at");
  }
  random_context(rng, doc, context_candidates);
  return doc;
}

std::string sprinkle_trivia(Rng& rng, const std::string& text) {
  static const std::vector<std::string> kTrivia = {
      "  ", "\n", "\t", "\n ; a comment (with parens)\n", " ;; x - y\n  ", "\r\n",
  };
  std::string out;
  for (char c : text) {
    if (c == ')' && chance(rng, 0.2)) out += pick(rng, kTrivia);
    out += c;
    if ((c == ' ' || c == '\n' || c == '(') && chance(rng, 0.3)) out += pick(rng, kTrivia);
  }
  if (chance(rng, 0.5)) out = "; leading comment\n" + out;
  return out;
}

// ---------------------------------------------------------------------------
// RDF

Graph random_graph(Rng& rng, std::size_t max_triples) {
  const std::vector<std::string> iris = {
      "http://example.org/r1", "http://example.org/a#frag", "uri:ex/demo2/Item_7", "urn:x:42",
      "http://example.org/path/with-dash.dot/x", "http://example.org/ns/", "uri:ex/shapes#Circle",
  };
  const std::vector<std::string> predicates = {
      std::string(vocab::kRdfType), "http://example.org/p", "uri:ex/shapes#size", "http://example.org/q#has_part",
  };
  const std::vector<std::string> string_parts = {"a", " ", "\"", "\\", "\n", "\t", "\xC3\xA9", "'", "#", "<>", "x y"};
  const std::vector<std::pair<std::string, std::string>> typed = {
      {"42", std::string(vocab::kXsdInteger)},   {"-7", std::string(vocab::kXsdInteger)},
      {"2.0", std::string(vocab::kXsdDecimal)},  {"-0.25", std::string(vocab::kXsdDecimal)},
      {"1.5E3", std::string(vocab::kXsdDouble)}, {"true", std::string(vocab::kXsdBoolean)},
      {"false", std::string(vocab::kXsdBoolean)}, {"2.50", std::string(vocab::kXsdDecimal)},
      {"x1", "http://example.org/dt"},           {"007", std::string(vocab::kXsdInteger)},
  };
  auto random_string = [&] {
    std::string s;
    for (std::size_t i = uniform(rng, 0, 4); i > 0; --i) s += pick(rng, string_parts);
    return s;
  };
  auto node = [&]() -> Term {
    if (chance(rng, 0.2)) return Term::blank("b" + std::to_string(uniform(rng, 0, 3)));
    return Term::iri(pick(rng, iris));
  };

  Graph g;
  const std::size_t n = uniform(rng, 0, max_triples);
  for (std::size_t i = 0; i < n; ++i) {
    Term object = node();
    switch (uniform(rng, 0, 4)) {
      case 0: object = Term::literal(random_string(), std::string(vocab::kXsdString)); break;
      case 1: object = Term::literal(random_string(), std::string(vocab::kRdfLangString), pick(rng, std::vector<std::string>{"en", "en-us", "sparql", "ja"})); break;
      case 2: {
        const auto& [lexical, datatype] = pick(rng, typed);
        object = Term::literal(lexical, datatype);
        break;
      }
      default: break;
    }
    g.insert(node(), Term::iri(pick(rng, predicates)), object);
  }
  return g;
}

SparqlCase random_sparql_case(Rng& rng, std::size_t max_triples) {
  const std::vector<Term> resources = [] {
    std::vector<Term> r;
    for (int i = 0; i < 6; ++i) r.push_back(Term::iri("uri:g/n" + std::to_string(i)));
    return r;
  }();
  const std::vector<Term> predicates = {Term::iri("uri:g/p0"), Term::iri("uri:g/p1"), Term::iri("uri:g/p2"),
                                        Term::iri(std::string(vocab::kRdfType))};
  const std::vector<Term> literals = {
      Term::literal("1", std::string(vocab::kXsdInteger)),   Term::literal("2", std::string(vocab::kXsdInteger)),
      Term::literal("-1", std::string(vocab::kXsdInteger)),  Term::literal("2.0", std::string(vocab::kXsdDecimal)),
      Term::literal("3.5", std::string(vocab::kXsdDecimal)), Term::literal("x", std::string(vocab::kXsdString)),
      Term::literal("y", std::string(vocab::kRdfLangString), "en"),
  };

  SparqlCase c;
  const std::size_t n = uniform(rng, 0, max_triples);
  for (std::size_t i = 0; i < n; ++i) {
    const Term& o = chance(rng, 0.5) ? pick(rng, resources) : pick(rng, literals);
    c.graph.insert(pick(rng, resources), pick(rng, predicates), o);
  }

  auto write_term = [&](const Term& t) -> std::string {
    if (t.is_iri()) {
      if (t.value == vocab::kRdfType && chance(rng, 0.5)) return "a";
      if (t.value.rfind("uri:g/", 0) == 0 && chance(rng, 0.5)) return "g:" + t.value.substr(6);
      return "<" + t.value + ">";
    }
    if (t.datatype == vocab::kXsdInteger || t.datatype == vocab::kXsdDecimal) return t.value;
    if (!t.lang.empty()) return "\"" + t.value + "\"@" + t.lang;
    return "\"" + t.value + "\"";
  };

  const std::vector<std::string> pool = {"a", "b", "c", "d"};
  std::vector<std::string> used;
  auto var = [&] {
    std::string v = pick(rng, pool);
    if (std::find(used.begin(), used.end(), v) == used.end()) used.push_back(v);
    return "?" + v;
  };

  std::string body;
  const std::size_t patterns = uniform(rng, 1, 4);
  for (std::size_t i = 0; i < patterns; ++i) {
    std::string s = chance(rng, 0.7) ? var() : write_term(pick(rng, resources));
    std::string p = chance(rng, 0.2) ? var() : write_term(pick(rng, predicates));
    std::string o;
    if (chance(rng, 0.6)) {
      o = var();
    } else {
      o = write_term(chance(rng, 0.5) ? pick(rng, resources) : pick(rng, literals));
    }
    body += "  " + s + " " + p + " " + o + " .\n";
  }
  if (used.empty()) {
    body += "  ?a <uri:g/p0> ?b .\n";
    used = {"a", "b"};
  }

  const std::vector<std::string> ops = {"<", "<=", "=", "!=", ">=", ">"};
  std::vector<std::string> filters;
  for (std::size_t i = uniform(rng, 0, 2); i > 0; --i) {
    std::string right;
    switch (uniform(rng, 0, 3)) {
      case 0: right = "?" + pick(rng, used); break;
      case 1: right = pick(rng, std::vector<std::string>{"2", "2.0", "-1", "3.25", "0"}); break;
      case 2: right = "\"x\""; break;
      default: right = "<uri:g/n1>"; break;
    }
    filters.push_back("?" + pick(rng, used) + " " + pick(rng, ops) + " " + right);
  }
  if (filters.size() == 2 && chance(rng, 0.5)) {
    body += "  FILTER (" + filters[0] + " && " + filters[1] + ")\n";
  } else {
    for (const std::string& f : filters) body += "  FILTER (" + f + ")\n";
  }

  std::vector<std::string> projected = used;
  std::shuffle(projected.begin(), projected.end(), rng);
  projected.resize(uniform(rng, 1, projected.size()));
  c.text = "PREFIX g: <uri:g/>\nSELECT ";
  if (chance(rng, 0.8)) c.text += "DISTINCT ";
  for (const std::string& v : projected) c.text += "?" + v + " ";
  c.text += "WHERE {\n" + body + "}\n";
  return c;
}

// ---------------------------------------------------------------------------
// Contexts

ContextFamily random_context_family(Rng& rng) {
  const std::vector<std::string> terms = {"alpha", "beta", "Beta", "gamma", "delta", "alpha_2", "eps", "zeta", "gamma_3"};
  const std::vector<std::string> iris = numbered("uri:f/i", 6);

  auto fill = [&](ContextMap& ctx, std::size_t n, bool distinct_iris) {
    std::vector<std::string> t = terms;
    std::shuffle(t.begin(), t.end(), rng);
    std::vector<std::string> i = iris;
    std::shuffle(i.begin(), i.end(), rng);
    std::set<std::string> seen;
    std::size_t next_iri = 0;
    for (const std::string& term : t) {
      if (ctx.size() >= n) break;
      if (!seen.insert(to_lower(term)).second) continue;
      const std::string& iri = distinct_iris ? i[next_iri++ % i.size()] : pick(rng, iris);
      ctx.bind(term, iri);
    }
  };

  ContextFamily family;
  fill(family.problem, uniform(rng, 0, 4), true);
  for (std::size_t d = uniform(rng, 1, 4), k = 0; k < d; ++k) {
    ContextMap ctx;
    fill(ctx, uniform(rng, 0, 5), false);
    family.domains.emplace_back("d" + std::to_string(k), std::move(ctx));
  }
  return family;
}

std::optional<std::string> alias_property_violation(const ContextFamily& family) {
  const CanonicalizationResult result = canonicalize(family.problem, family.domains);
  if (result.translations.size() != family.domains.size()) return "one translation per domain expected";

  std::set<std::string> input_terms;
  for (const auto& b : family.problem.entries) input_terms.insert(to_lower(b.term));
  for (const auto& [id, ctx] : family.domains) {
    for (const auto& b : ctx.entries) input_terms.insert(to_lower(b.term));
  }

  // (symbol, IRI) for every context-bound symbol after translation.
  std::vector<std::pair<std::string, std::string>> bound;
  for (const auto& b : family.problem.entries) bound.emplace_back(b.term, b.iri);

  // Symbols bound before the current entry is processed, with their IRI.
  std::map<std::string, std::string> earlier;
  for (const auto& b : family.problem.entries) earlier.emplace(to_lower(b.term), b.iri);

  for (std::size_t d = 0; d < family.domains.size(); ++d) {
    const auto& [id, ctx] = family.domains[d];
    const DomainTranslation& tr = result.translations[d];
    for (const auto& b : ctx.entries) {
      const auto mapped = tr.lookup(b.term);
      if (!mapped) return id + ": no mapping for " + b.term;
      const auto iri = result.state.iri_of(*mapped);
      if (!iri || *iri != b.iri) {
        return id + ": " + b.term + " -> " + *mapped + " lost IRI " + b.iri;
      }
      if (!iequals(*mapped, b.term)) {
        auto it = earlier.find(to_lower(*mapped));
        if (it != earlier.end()) {
          if (it->second != b.iri) {
            return id + ": " + b.term + " -> " + *mapped + " reuses a symbol not bound to " + b.iri;
          }
        } else if (input_terms.count(to_lower(*mapped))) {
          return id + ": " + b.term + " -> " + *mapped + " takes an input symbol not yet bound";
        } else {
          const std::string prefix = to_lower(b.term) + "_";
          const std::string m = to_lower(*mapped);
          if (m.rfind(prefix, 0) != 0) return id + ": fresh symbol " + *mapped + " not derived from " + b.term;
          const std::string k = m.substr(prefix.size());
          if (k.empty() || !std::all_of(k.begin(), k.end(), ::isdigit) || std::stoi(k) < 2) {
            return id + ": fresh symbol " + *mapped + " has a bad suffix";
          }
        }
      }
      bound.emplace_back(*mapped, b.iri);
      earlier.emplace(to_lower(*mapped), b.iri);
    }
  }

  for (std::size_t i = 0; i < bound.size(); ++i) {
    for (std::size_t j = i + 1; j < bound.size(); ++j) {
      const bool same_symbol = iequals(bound[i].first, bound[j].first);
      const bool same_iri = bound[i].second == bound[j].second;
      if (same_symbol != same_iri) {
        return "biconditional fails for " + bound[i].first + "=" + bound[i].second + " and " + bound[j].first +
               "=" + bound[j].second;
      }
    }
  }

  const CanonicalizationResult again = canonicalize(family.problem, family.domains);
  for (std::size_t d = 0; d < family.domains.size(); ++d) {
    if (again.translations[d].map != result.translations[d].map) return "non-deterministic maps";
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// STRIPS

namespace {

struct Sim {
  static bool applicable(const State& s, const GroundAction& a) {
    return std::includes(s.begin(), s.end(), a.pre_pos.begin(), a.pre_pos.end()) &&
           std::none_of(a.pre_neg.begin(), a.pre_neg.end(), [&](const GroundAtom& x) { return s.count(x) > 0; });
  }
  static State apply(const State& s, const GroundAction& a) {
    State out;
    for (const GroundAtom& x : s) {
      if (!a.del.count(x) || a.add.count(x)) out.insert(x);
    }
    out.insert(a.add.begin(), a.add.end());
    return out;
  }
  static bool holds(const State& s, const Formula& f) {
    if (f.is_atom()) {
      if (f.name == "=") return f.args.size() == 2 && iequals(f.args[0], f.args[1]);
      return s.count(GroundAtom{f.name, f.args}) > 0;
    }
    if (f.is_not()) return !holds(s, f.children[0]);
    return std::all_of(f.children.begin(), f.children.end(), [&](const Formula& c) { return holds(s, c); });
  }
};

}  // namespace

namespace {

StripsInstance draw_strips_instance(Rng& rng, std::size_t max_objects, std::size_t max_actions) {
  StripsInstance inst;
  Document& dom = inst.domain;
  Document& prob = inst.problem;
  dom.kind = DocumentKind::kDomain;
  dom.name = "rand";
  prob.kind = DocumentKind::kProblem;
  prob.name = "rand-p";
  prob.domain_ref = "rand";

  const bool typed = chance(rng, 0.4);
  dom.requirements = {":strips", ":negative-preconditions"};
  if (typed) {
    dom.requirements.push_back(":typing");
    dom.types = {{"ta", ""}, {"tb", "ta"}};
  }
  const std::vector<std::string> type_names{"ta", "tb"};

  for (const std::string& o : numbered("o", uniform(rng, 1, max_objects))) {
    prob.objects.push_back({o, typed ? pick(rng, type_names) : ""});
  }
  std::stable_sort(prob.objects.begin(), prob.objects.end(),
                   [](const TypedSymbol& a, const TypedSymbol& b) { return a.type < b.type; });

  for (const std::string& p : numbered("q", uniform(rng, 1, 3))) {
    PredicateDecl d{p, {}};
    for (const std::string& v : numbered("?v", uniform(rng, 0, 2))) d.params.push_back({v, ""});
    dom.predicates.push_back(std::move(d));
  }

  for (const std::string& name : numbered("act", uniform(rng, 1, max_actions))) {
    ActionDef a;
    a.name = name;
    for (const std::string& v : numbered("?p", uniform(rng, 0, 2))) {
      a.parameters.push_back({v, typed ? pick(rng, type_names) : ""});
    }
    std::vector<std::string> terms;
    for (const TypedSymbol& p : a.parameters) terms.push_back(p.name);
    auto literal = [&] {
      const PredicateDecl& p = pick(rng, dom.predicates);
      std::vector<std::string> args;
      for (std::size_t i = 0; i < p.arity(); ++i) args.push_back(terms.empty() ? "" : pick(rng, terms));
      return Formula::atom(p.name, std::move(args));
    };
    auto usable = [&](const Formula& f) {
      return std::none_of(f.args.begin(), f.args.end(), [](const std::string& s) { return s.empty(); });
    };
    std::vector<Formula> pre, eff;
    for (std::size_t i = uniform(rng, 0, 3); i > 0; --i) {
      Formula f = literal();
      if (usable(f)) pre.push_back(chance(rng, 0.3) ? Formula::negate(std::move(f)) : std::move(f));
    }
    for (std::size_t i = uniform(rng, 1, 3); i > 0; --i) {
      Formula f = literal();
      if (usable(f)) eff.push_back(chance(rng, 0.4) ? Formula::negate(std::move(f)) : std::move(f));
    }
    a.precondition = Formula::conjunction(std::move(pre));
    a.effect = Formula::conjunction(std::move(eff));
    dom.actions.push_back(std::move(a));
  }

  // Every ground atom is initially true with probability 0.3.
  std::vector<Formula> atoms;
  for (const PredicateDecl& p : dom.predicates) {
    std::vector<std::size_t> idx(p.arity(), 0);
    while (true) {
      std::vector<std::string> args;
      for (std::size_t i : idx) args.push_back(prob.objects[i].name);
      atoms.push_back(Formula::atom(p.name, args));
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == prob.objects.size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }
  for (const Formula& a : atoms) {
    if (chance(rng, 0.3)) prob.init.push_back(a);
  }

  std::vector<Formula> goal;
  if (chance(rng, 0.5)) {
    State s = initial_state(dom, prob);
    const std::vector<GroundAction> actions = ground(dom, prob);
    for (std::size_t steps = uniform(rng, 2, 6); steps > 0; --steps) {
      std::vector<const GroundAction*> ok;
      for (const GroundAction& a : actions) {
        if (Sim::applicable(s, a)) ok.push_back(&a);
      }
      if (ok.empty()) break;
      s = Sim::apply(s, *pick(rng, ok));
    }
    // Prefer atoms the walk changed so the goal takes some steps to reach.
    const State init = initial_state(dom, prob);
    std::vector<Formula> changed;
    for (const Formula& a : atoms) {
      const GroundAtom g{a.name, a.args};
      if (s.count(g) != init.count(g)) changed.push_back(a);
    }
    const std::vector<Formula>& pool = changed.empty() ? atoms : changed;
    for (std::size_t i = uniform(rng, std::min<std::size_t>(2, pool.size()), 3); i > 0; --i) {
      const Formula& a = pick(rng, pool);
      goal.push_back(s.count(GroundAtom{a.name, a.args}) ? a : Formula::negate(a));
    }
  } else {
    for (std::size_t i = uniform(rng, 1, 3); i > 0; --i) {
      const Formula& a = pick(rng, atoms);
      goal.push_back(chance(rng, 0.7) ? a : Formula::negate(a));
    }
  }
  prob.goal = Formula::conjunction(std::move(goal));
  return inst;
}

// Counts states reachable from the initial state, stopping past `cap`.
std::size_t reachable_states(const StripsInstance& inst, std::size_t cap) {
  const std::vector<GroundAction> actions = ground(inst.domain, inst.problem);
  const State init = initial_state(inst.domain, inst.problem);
  std::set<State> seen{init};
  std::vector<State> todo{init};
  while (!todo.empty() && seen.size() <= cap) {
    State s = std::move(todo.back());
    todo.pop_back();
    for (const GroundAction& a : actions) {
      if (!Sim::applicable(s, a)) continue;
      State n = Sim::apply(s, a);
      if (seen.insert(n).second) todo.push_back(std::move(n));
    }
  }
  return seen.size();
}

}  // namespace

StripsInstance random_strips_instance(Rng& rng, std::size_t max_objects, std::size_t max_actions) {
  while (true) {
    StripsInstance inst = draw_strips_instance(rng, max_objects, max_actions);
    // Keep only a few instances whose goal already holds.
    if (Sim::holds(initial_state(inst.domain, inst.problem), *inst.problem.goal) && !chance(rng, 0.1)) continue;
    if (reachable_states(inst, kMaxReachableStates) <= kMaxReachableStates) return inst;
  }
}

std::optional<std::size_t> shortest_plan_length(const State& init, const Formula& goal,
                                                const std::vector<GroundAction>& actions) {
  // Deepen until a sequence reaches the goal, or until one more step of
  // depth uncovers no state that a shallower bound had not already seen.
  // Largest remaining budget already explored from a state without success;
  // valid for every later bound too.
  std::map<State, std::size_t> failed;
  std::set<State> seen;
  std::size_t seen_before = 0;
  for (std::size_t limit = 0;; ++limit) {
    std::function<bool(const State&, std::size_t)> dfs = [&](const State& s, std::size_t budget) {
      seen.insert(s);
      if (Sim::holds(s, goal)) return true;
      if (budget == 0) return false;
      auto it = failed.find(s);
      if (it != failed.end() && it->second >= budget) return false;
      for (const GroundAction& a : actions) {
        if (Sim::applicable(s, a) && dfs(Sim::apply(s, a), budget - 1)) return true;
      }
      failed[s] = std::max(failed[s], budget);
      return false;
    };
    if (dfs(init, limit)) return limit;
    if (seen.size() == seen_before) return std::nullopt;
    seen_before = seen.size();
  }
}

// ---------------------------------------------------------------------------
// SPARQL

namespace {

std::optional<long double> numeric(const Term& t) {
  if (!t.is_literal()) return std::nullopt;
  if (t.datatype != vocab::kXsdInteger && t.datatype != vocab::kXsdDecimal) return std::nullopt;
  char* end = nullptr;
  const long double v = std::strtold(t.value.c_str(), &end);
  if (end == t.value.c_str() || *end != '\0') return std::nullopt;
  return v;
}

// 1 true, 0 false, -1 type error.
int filter_value(const Term& l, sparql::CompareOp op, const Term& r) {
  using Op = sparql::CompareOp;
  const auto a = numeric(l), b = numeric(r);
  if (a && b) {
    switch (op) {
      case Op::kLess: return *a < *b;
      case Op::kLessEqual: return *a <= *b;
      case Op::kEqual: return *a == *b;
      case Op::kNotEqual: return *a != *b;
      case Op::kGreaterEqual: return *a >= *b;
      case Op::kGreater: return *a > *b;
    }
  }
  if (a || b) return -1;
  if (op == Op::kEqual) return l == r;
  if (op == Op::kNotEqual) return !(l == r);
  return -1;
}

}  // namespace

sparql::ResultSet brute_force_select(const sparql::Query& query, const Graph& graph) {
  std::vector<std::string> vars;
  auto note = [&](const sparql::PatternTerm& t) {
    if (const auto* v = std::get_if<sparql::Variable>(&t)) {
      if (std::find(vars.begin(), vars.end(), v->name) == vars.end()) vars.push_back(v->name);
    }
  };
  for (const auto& p : query.patterns) {
    note(p.subject);
    note(p.predicate);
    note(p.object);
  }
  for (const auto& f : query.filters) {
    note(f.left);
    note(f.right);
  }

  std::set<Term> universe;
  for (const Triple& t : graph.triples()) {
    universe.insert(t.subject);
    universe.insert(t.predicate);
    universe.insert(t.object);
  }
  const std::vector<Term> terms(universe.begin(), universe.end());

  sparql::ResultSet out;
  if (terms.empty() && !vars.empty()) return out;
  std::map<std::string, Term> assignment;
  auto value = [&](const sparql::PatternTerm& t) -> const Term& {
    if (const auto* v = std::get_if<sparql::Variable>(&t)) return assignment.at(v->name);
    return std::get<Term>(t);
  };
  std::function<void(std::size_t)> enumerate = [&](std::size_t i) {
    if (i < vars.size()) {
      for (const Term& t : terms) {
        assignment[vars[i]] = t;
        enumerate(i + 1);
      }
      return;
    }
    for (const auto& p : query.patterns) {
      const Term& s = value(p.subject);
      const Term& pr = value(p.predicate);
      if (s.is_literal() || !pr.is_iri()) return;
      if (!graph.contains(Triple{s, pr, value(p.object)})) return;
    }
    for (const auto& f : query.filters) {
      if (filter_value(value(f.left), f.op, value(f.right)) != 1) return;
    }
    sparql::Row row;
    for (const auto& v : query.projected) row.push_back(assignment.at(v.name));
    out.insert(std::move(row));
  };
  enumerate(0);
  return out;
}

}  // namespace pddls::testing
