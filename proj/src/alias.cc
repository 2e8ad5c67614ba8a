#include "pddls/alias.h"

#include <set>

#include "pddls/error.h"
#include "pddls/strings.h"

namespace pddls {

std::optional<std::string> TranslationState::iri_of(std::string_view symbol) const {
  auto it = symbol_to_iri.find(to_lower(symbol));
  if (it == symbol_to_iri.end()) return std::nullopt;
  return it->second.second;
}

std::optional<std::string> TranslationState::symbol_of(std::string_view iri) const {
  auto it = iri_to_symbol.find(std::string(iri));
  if (it == iri_to_symbol.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> DomainTranslation::lookup(std::string_view symbol) const {
  for (const auto& [from, to] : map) {
    if (iequals(from, symbol)) return to;
  }
  return std::nullopt;
}

bool DomainTranslation::is_identity() const {
  for (const auto& [from, to] : map) {
    if (from != to) return false;
  }
  return true;
}

namespace {

void check_unique_terms(const ContextMap& context, const std::string& owner) {
  std::set<std::string> seen;
  for (const auto& b : context.entries) {
    if (!seen.insert(to_lower(b.term)).second) {
      throw ContextError(owner + ": term '" + b.term + "' bound twice");
    }
  }
}

// `<term>_<k>` for the smallest k >= 2 unused in the global table and in
// every input context.
std::string fresh_symbol(const std::string& term, const TranslationState& state,
                         const std::set<std::string>& input_terms) {
  for (std::size_t k = 2;; ++k) {
    std::string candidate = term + "_" + std::to_string(k);
    const std::string key = to_lower(candidate);
    if (!state.symbol_to_iri.count(key) && !input_terms.count(key)) return candidate;
  }
}

}  // namespace

CanonicalizationResult canonicalize(
    const ContextMap& problem_context,
    const std::vector<std::pair<std::string, ContextMap>>& domain_contexts) {
  check_unique_terms(problem_context, "problem context");
  std::set<std::string> input_terms;
  for (const auto& b : problem_context.entries) input_terms.insert(to_lower(b.term));
  for (const auto& [id, ctx] : domain_contexts) {
    check_unique_terms(ctx, "domain '" + id + "' context");
    for (const auto& b : ctx.entries) input_terms.insert(to_lower(b.term));
  }

  CanonicalizationResult result;
  TranslationState& state = result.state;

  for (const auto& b : problem_context.entries) {
    state.symbol_to_iri[to_lower(b.term)] = {b.term, b.iri};
    state.iri_to_symbol.emplace(b.iri, b.term);
  }

  for (const auto& [id, ctx] : domain_contexts) {
    DomainTranslation tr;
    tr.domain_id = id;
    for (const auto& [t, u] : ctx.entries) {
      const std::string key = to_lower(t);
      auto bound = state.symbol_to_iri.find(key);
      if (bound != state.symbol_to_iri.end() && bound->second.second == u) {
        tr.map.emplace_back(t, t);
      } else if (auto canonical = state.iri_to_symbol.find(u); canonical != state.iri_to_symbol.end()) {
        tr.map.emplace_back(t, canonical->second);
      } else if (bound == state.symbol_to_iri.end()) {
        state.symbol_to_iri[key] = {t, u};
        state.iri_to_symbol.emplace(u, t);
        tr.map.emplace_back(t, t);
      } else {
        std::string fresh = fresh_symbol(t, state, input_terms);
        state.symbol_to_iri[to_lower(fresh)] = {fresh, u};
        state.iri_to_symbol.emplace(u, fresh);
        tr.map.emplace_back(t, std::move(fresh));
      }
    }
    result.translations.push_back(std::move(tr));
  }
  return result;
}

namespace {

void rename(std::string& symbol, const DomainTranslation& tr) {
  if (is_variable(symbol)) return;
  if (auto to = tr.lookup(symbol)) symbol = *to;
}

void rename_typed(std::vector<TypedSymbol>& symbols, const DomainTranslation& tr, bool names) {
  for (TypedSymbol& s : symbols) {
    if (names) rename(s.name, tr);
    if (!s.type.empty()) rename(s.type, tr);
  }
}

void rename_formula(Formula& f, const DomainTranslation& tr) {
  for_each_atom(f, [&](Formula& atom) {
    rename(atom.name, tr);
    for (std::string& arg : atom.args) rename(arg, tr);
  });
}

}  // namespace

Document apply_translation(const Document& domain, const DomainTranslation& translation) {
  Document out = domain;
  rename_typed(out.types, translation, true);
  rename_typed(out.constants, translation, true);
  for (PredicateDecl& p : out.predicates) {
    rename(p.name, translation);
    rename_typed(p.params, translation, false);
  }
  for (ActionDef& a : out.actions) {
    rename(a.name, translation);
    rename_typed(a.parameters, translation, false);
    if (a.precondition) rename_formula(*a.precondition, translation);
    if (a.effect) rename_formula(*a.effect, translation);
  }
  ContextMap context;
  for (const auto& b : domain.context.entries) {
    std::string term = translation.lookup(b.term).value_or(b.term);
    if (!context.lookup(term)) context.entries.push_back({std::move(term), b.iri});
  }
  out.context = std::move(context);
  return out;
}

std::string format_translation(const DomainTranslation& translation) {
  std::string out;
  for (const auto& [from, to] : translation.map) out += from + " -> " + to + "\n";
  return out;
}

}  // namespace pddls
