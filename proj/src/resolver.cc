#include "pddls/resolver.h"

#include <fstream>
#include <map>

#include "pddls/error.h"
#include "pddls/strings.h"
#include "pddls/syntax.h"
#include "pddls/vocab.h"

namespace pddls {

namespace {

Term iri(std::string_view v) { return Term::iri(std::string(v)); }

const shacl::Shape* find_shape(const std::vector<shacl::Shape>& shapes, const Term& node) {
  for (const shacl::Shape& s : shapes) {
    if (s.shape == node) return &s;
  }
  return nullptr;
}

}  // namespace

std::vector<EstablishRule> collect_rules(const Graph& graph) {
  std::vector<EstablishRule> rules;
  std::vector<Triple> links = graph.match(std::nullopt, iri(vocab::kPddlsEstablishedWith), std::nullopt);
  if (links.empty()) return rules;

  std::vector<shacl::Shape> shapes;
  bool shapes_loaded = false;
  for (const Triple& link : links) {
    const std::string role = to_string(link.subject);
    if (link.object.is_literal()) {
      const Term& body = link.object;
      const bool sparql_body = body.lang == "sparql" || (body.lang.empty() && body.datatype == vocab::kXsdString);
      if (!sparql_body) throw RuleError(role + ": unsupported rule body " + to_string(body));
      sparql::Query query;
      try {
        query = sparql::parse_query(body.value);
      } catch (const Error& err) {
        throw RuleError(role + ": SPARQL body does not parse: " + err.what());
      }
      if (query.projected.size() != 2) {
        throw RuleError(role + ": SPARQL body projects " + std::to_string(query.projected.size()) +
                        " variables, expected 2");
      }
      rules.push_back({link.subject, std::move(query)});
    } else {
      if (!shapes_loaded) {
        try {
          shapes = shacl::load_shapes(graph);
        } catch (const ShapeError& err) {
          throw RuleError(role + ": " + err.what());
        }
        shapes_loaded = true;
      }
      const shacl::Shape* shape = find_shape(shapes, link.object);
      if (!shape) throw RuleError(role + ": " + to_string(link.object) + " is not a loadable SHACL node shape");
      rules.push_back({link.subject, *shape});
    }
  }
  return rules;
}

std::set<shacl::Pair> candidate_pairs(const Graph& graph, const Term& role) {
  const Term type = iri(vocab::kRdfType);
  std::set<Term> individuals;
  for (const Triple& t : graph.match(std::nullopt, type, std::nullopt)) individuals.insert(t.subject);

  auto instances_of = [&](const std::vector<Term>& classes) {
    if (classes.empty()) return individuals;
    std::set<Term> out;
    for (const Term& c : classes) {
      for (const Term& x : graph.subjects(type, c)) out.insert(x);
    }
    return out;
  };
  const std::set<Term> firsts = instances_of(graph.objects(role, iri(vocab::kRdfsDomain)));
  const std::set<Term> seconds = instances_of(graph.objects(role, iri(vocab::kRdfsRange)));

  std::set<shacl::Pair> out;
  for (const Term& a : firsts) {
    for (const Term& b : seconds) out.emplace(a, b);
  }
  return out;
}

std::set<DerivedFact> establish(const EstablishRule& rule, const Graph& graph) {
  std::set<DerivedFact> out;
  if (const auto* query = std::get_if<sparql::Query>(&rule.body)) {
    for (const sparql::Row& row : sparql::evaluate(*query, graph)) out.insert({rule.role, row[0], row[1]});
  } else {
    const auto& shape = std::get<shacl::Shape>(rule.body);
    for (const auto& [a, b] : shacl::derive_pairs(shape, graph, candidate_pairs(graph, rule.role))) {
      out.insert({rule.role, a, b});
    }
  }
  return out;
}

Interpretation interpret(const Graph& ontology, const std::vector<EstablishRule>& rules, bool closure) {
  Interpretation result;
  const Graph closed = closure ? rdfs_closure(ontology) : ontology;
  for (const EstablishRule& rule : rules) {
    std::set<DerivedFact> facts = establish(rule, closed);
    result.derived.insert(facts.begin(), facts.end());
  }
  Graph extended = closed;
  for (const DerivedFact& f : result.derived) {
    if (f.subject.is_literal() || !f.role.is_iri()) continue;
    extended.insert(f.subject, f.role, f.object);
  }
  result.graph = closure ? rdfs_closure(extended) : std::move(extended);
  return result;
}

namespace {

bool contains_symbol(const std::vector<TypedSymbol>& symbols, std::string_view name) {
  for (const TypedSymbol& s : symbols) {
    if (iequals(s.name, name)) return true;
  }
  return false;
}

template <typename T, typename Key>
void append_unique(std::vector<T>& into, const std::vector<T>& from, Key key) {
  for (const T& item : from) {
    bool present = false;
    for (const T& existing : into) {
      if (iequals(key(existing), key(item))) present = true;
    }
    if (!present) into.push_back(item);
  }
}

Document merge_domains(const std::vector<Document>& domains, std::size_t primary,
                       std::vector<Diagnostic>& diagnostics) {
  Document merged = domains[primary];
  for (std::size_t i = 0; i < domains.size(); ++i) {
    if (i == primary) continue;
    const Document& d = domains[i];
    append_unique(merged.requirements, d.requirements, [](const std::string& s) { return s; });
    append_unique(merged.types, d.types, [](const TypedSymbol& s) { return s.name; });
    append_unique(merged.constants, d.constants, [](const TypedSymbol& s) { return s.name; });
    for (const auto& b : d.context.entries) {
      if (!merged.context.lookup(b.term)) merged.context.entries.push_back(b);
    }
    for (const PredicateDecl& p : d.predicates) {
      const PredicateDecl* existing = merged.find_predicate(p.name);
      if (!existing) {
        merged.predicates.push_back(p);
      } else if (existing->arity() != p.arity()) {
        diagnostics.push_back({Severity::kError, "predicate-conflict",
                               "predicate '" + p.name + "' of domain '" + d.name + "' has arity " +
                                   std::to_string(p.arity()) + ", already declared with arity " +
                                   std::to_string(existing->arity())});
      }
    }
    for (const ActionDef& a : d.actions) {
      if (merged.find_action(a.name)) {
        diagnostics.push_back({Severity::kWarning, "duplicate-action",
                               "action '" + a.name + "' of domain '" + d.name + "' is already defined; kept the first"});
        continue;
      }
      merged.actions.push_back(a);
    }
  }
  return merged;
}

}  // namespace

ResolvedBundle resolve(const Document& problem, const std::vector<Document>& domains, const Graph& ontology,
                       const ResolveOptions& options) {
  if (!problem.is_problem()) throw ResolveError("'" + problem.name + "' is not a problem");
  std::size_t primary = domains.size();
  for (std::size_t i = 0; i < domains.size(); ++i) {
    if (!domains[i].is_domain()) throw ResolveError("'" + domains[i].name + "' is not a domain");
    if (primary == domains.size() && iequals(domains[i].name, problem.domain_ref)) primary = i;
  }
  if (primary == domains.size()) {
    throw ResolveError("problem '" + problem.name + "' refers to domain '" + problem.domain_ref +
                       "', which is not among the supplied domains");
  }

  ResolvedBundle bundle;
  std::vector<Diagnostic>& diags = bundle.diagnostics;

  const std::vector<EstablishRule> rules = collect_rules(ontology);
  Interpretation interp = interpret(ontology, rules, options.closure);
  bundle.derived.assign(interp.derived.begin(), interp.derived.end());

  std::vector<std::pair<std::string, ContextMap>> contexts;
  for (const Document& d : domains) contexts.emplace_back(d.name, d.context);
  CanonicalizationResult canon = canonicalize(problem.context, contexts);
  bundle.translations = canon.translations;

  std::vector<Document> translated;
  for (std::size_t i = 0; i < domains.size(); ++i) {
    translated.push_back(apply_translation(domains[i], canon.translations[i]));
  }
  bundle.domain = merge_domains(translated, primary, diags);
  bundle.problem = problem;

  auto object_symbol = [&](const Term& t) -> std::optional<std::string> {
    if (!t.is_iri()) return std::nullopt;
    auto symbol = canon.state.symbol_of(t.value);
    if (!symbol) return std::nullopt;
    if (!contains_symbol(problem.objects, *symbol) && !contains_symbol(bundle.domain.constants, *symbol)) {
      return std::nullopt;
    }
    return symbol;
  };

  std::set<std::string> present;
  for (const Formula& f : bundle.problem.init) {
    if (f.is_atom()) present.insert(to_lower(to_string(f)));
  }

  for (const DerivedFact& fact : bundle.derived) {
    const std::string label = to_string(fact.role) + "(" + to_string(fact.subject) + ", " + to_string(fact.object) + ")";
    std::optional<std::string> role = fact.role.is_iri() ? canon.state.symbol_of(fact.role.value) : std::nullopt;
    if (!role) {
      diags.push_back({Severity::kWarning, "dropped-fact", label + ": no context term binds the role"});
      continue;
    }
    const PredicateDecl* decl = bundle.domain.find_predicate(*role);
    if (!decl || decl->arity() != 2) {
      diags.push_back({Severity::kWarning, "dropped-fact",
                       label + ": '" + *role + "' is not declared as a binary predicate"});
      continue;
    }
    std::optional<std::string> subject = object_symbol(fact.subject);
    std::optional<std::string> object = object_symbol(fact.object);
    if (!subject || !object) {
      const Term& missing = subject ? fact.object : fact.subject;
      diags.push_back({Severity::kWarning, "dropped-fact",
                       label + ": " + to_string(missing) + " is not bound to a problem object"});
      continue;
    }
    Formula atom = Formula::atom(decl->name, {*subject, *object});
    if (!present.insert(to_lower(to_string(atom))).second) {
      diags.push_back({Severity::kInfo, "already-present", to_string(atom) + " is already in the initial state"});
      continue;
    }
    diags.push_back({Severity::kInfo, "injected", to_string(atom)});
    bundle.problem.init.push_back(atom);
    bundle.injected.push_back(std::move(atom));
  }
  return bundle;
}

std::pair<std::filesystem::path, std::filesystem::path> emit(const ResolvedBundle& bundle,
                                                             const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto domain_path = out_dir / "domain.pddl";
  const auto problem_path = out_dir / "problem.pddl";
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw Error("failed writing '" + path.string() + "'");
  };
  write(domain_path, print_pddl(bundle.domain, true));
  write(problem_path, print_pddl(bundle.problem, true));
  return {domain_path, problem_path};
}

}  // namespace pddls
