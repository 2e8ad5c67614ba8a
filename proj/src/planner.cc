#include "pddls/planner.h"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <tuple>
#include <unordered_map>

#include "pddls/error.h"
#include "pddls/strings.h"

namespace pddls {

namespace {

constexpr std::string_view kSupportedRequirements[] = {
    ":strips", ":typing", ":negative-preconditions", ":equality", ":adl", ":semantics",
};

void check_requirements(const Document& doc) {
  for (const std::string& req : doc.requirements) {
    bool known = false;
    for (std::string_view s : kSupportedRequirements) known = known || iequals(req, s);
    if (!known) throw UnsupportedFeatureError("requirement " + req + " is not supported by the planner");
  }
}

// Case-insensitive symbol tables giving declared spellings.
struct Vocabulary {
  std::map<std::string, std::string> predicates;
  std::map<std::string, std::string> objects;
  std::vector<TypedSymbol> universe;  // constants then objects, first spelling wins

  explicit Vocabulary(const Document& domain, const Document& problem) {
    for (const PredicateDecl& p : domain.predicates) predicates.emplace(to_lower(p.name), p.name);
    for (const auto* list : {&domain.constants, &problem.objects}) {
      for (const TypedSymbol& s : *list) {
        if (objects.emplace(to_lower(s.name), s.name).second) universe.push_back(s);
      }
    }
  }

  std::string predicate(const std::string& name) const {
    auto it = predicates.find(to_lower(name));
    return it == predicates.end() ? name : it->second;
  }
  std::string object(const std::string& name) const {
    auto it = objects.find(to_lower(name));
    return it == objects.end() ? name : it->second;
  }
  GroundAtom atom(const Formula& f) const {
    GroundAtom a{predicate(f.name), {}};
    for (const std::string& arg : f.args) a.args.push_back(object(arg));
    return a;
  }
};

// Lowercased type -> lowercased parent types.
std::map<std::string, std::vector<std::string>> type_parents(const Document& domain) {
  std::map<std::string, std::vector<std::string>> parents;
  for (const TypedSymbol& t : domain.types) {
    auto& list = parents[to_lower(t.name)];
    if (!t.type.empty()) list.push_back(to_lower(t.type));
  }
  return parents;
}

bool is_subtype(const std::map<std::string, std::vector<std::string>>& parents, const std::string& type,
                const std::string& wanted) {
  std::vector<std::string> todo{type};
  std::set<std::string> seen;
  while (!todo.empty()) {
    std::string t = todo.back();
    todo.pop_back();
    if (t == wanted) return true;
    if (!seen.insert(t).second) continue;
    auto it = parents.find(t);
    if (it != parents.end()) todo.insert(todo.end(), it->second.begin(), it->second.end());
  }
  return false;
}

std::vector<std::string> extension(const std::vector<TypedSymbol>& universe,
                                   const std::map<std::string, std::vector<std::string>>& parents,
                                   const std::string& type) {
  std::vector<std::string> out;
  const std::string wanted = to_lower(type);
  for (const TypedSymbol& o : universe) {
    if (wanted.empty() || wanted == "object" || is_subtype(parents, to_lower(o.type.empty() ? "object" : o.type), wanted)) {
      out.push_back(o.name);
    }
  }
  return out;
}

struct Literal {
  bool positive;
  const Formula* atom;
};

void literals(const Formula& f, bool positive, std::vector<Literal>& out) {
  if (f.is_atom()) {
    out.push_back({positive, &f});
  } else if (f.is_not()) {
    literals(f.children.at(0), !positive, out);
  } else {
    for (const Formula& c : f.children) literals(c, positive, out);
  }
}

}  // namespace

std::string to_string(const GroundAtom& atom) {
  std::string out = "(" + atom.predicate;
  for (const std::string& a : atom.args) out += " " + a;
  return out + ")";
}

std::string to_string(const GroundAction& action) {
  std::string out = "(" + action.name;
  for (const std::string& a : action.args) out += " " + a;
  return out + ")";
}

std::vector<GroundAction> ground(const Document& domain, const Document& problem) {
  check_requirements(domain);
  check_requirements(problem);
  const Vocabulary vocab(domain, problem);
  const auto parents = type_parents(domain);

  std::vector<GroundAction> out;
  for (const ActionDef& action : domain.actions) {
    std::map<std::string, std::size_t> slot;
    for (std::size_t i = 0; i < action.parameters.size(); ++i) slot[to_lower(action.parameters[i].name)] = i;

    std::vector<Literal> pre, eff;
    if (action.precondition) literals(*action.precondition, true, pre);
    if (action.effect) literals(*action.effect, true, eff);
    for (const auto* list : {&pre, &eff}) {
      for (const Literal& l : *list) {
        for (const std::string& arg : l.atom->args) {
          if (is_variable(arg) && !slot.count(to_lower(arg))) {
            throw GroundingError("action '" + action.name + "': variable " + arg + " is not a parameter");
          }
        }
      }
    }
    for (const Literal& l : eff) {
      if (l.atom->name == "=") throw GroundingError("action '" + action.name + "': equality in an effect");
    }

    std::vector<std::vector<std::string>> domains;
    for (const TypedSymbol& p : action.parameters) domains.push_back(extension(vocab.universe, parents, p.type));

    std::vector<std::string> binding(action.parameters.size());
    auto resolve_arg = [&](const std::string& arg) {
      return is_variable(arg) ? binding[slot.at(to_lower(arg))] : vocab.object(arg);
    };
    auto instantiate = [&](const Formula& f) {
      GroundAtom a{vocab.predicate(f.name), {}};
      for (const std::string& arg : f.args) a.args.push_back(resolve_arg(arg));
      return a;
    };

    std::function<void(std::size_t)> enumerate = [&](std::size_t i) {
      if (i < binding.size()) {
        for (const std::string& o : domains[i]) {
          binding[i] = o;
          enumerate(i + 1);
        }
        return;
      }
      GroundAction g{action.name, binding, {}, {}, {}, {}};
      for (const Literal& l : pre) {
        GroundAtom a = instantiate(*l.atom);
        if (l.atom->name == "=") {
          if (a.args.size() != 2 || iequals(a.args[0], a.args[1]) != l.positive) return;
          continue;
        }
        (l.positive ? g.pre_pos : g.pre_neg).insert(std::move(a));
      }
      for (const Literal& l : eff) (l.positive ? g.add : g.del).insert(instantiate(*l.atom));
      for (const GroundAtom& a : g.add) g.del.erase(a);
      out.push_back(std::move(g));
    };
    enumerate(0);
  }
  std::stable_sort(out.begin(), out.end(), [](const GroundAction& a, const GroundAction& b) {
    return std::tie(a.name, a.args) < std::tie(b.name, b.args);
  });
  return out;
}

State initial_state(const Document& domain, const Document& problem) {
  const Vocabulary vocab(domain, problem);
  State s;
  for (const Formula& f : problem.init) {
    if (f.is_atom()) s.insert(vocab.atom(f));
  }
  return s;
}

Formula goal_formula(const Document& domain, const Document& problem) {
  if (!problem.goal) return Formula::conjunction({});
  const Vocabulary vocab(domain, problem);
  Formula g = *problem.goal;
  for_each_atom(g, [&](Formula& a) {
    if (a.name == "=") return;
    GroundAtom ga = vocab.atom(a);
    a.name = ga.predicate;
    a.args = ga.args;
  });
  return g;
}

bool holds(const State& state, const Formula& goal) {
  switch (goal.kind) {
    case Formula::Kind::kAtom:
      if (goal.name == "=") return goal.args.size() == 2 && iequals(goal.args[0], goal.args[1]);
      return state.count(GroundAtom{goal.name, goal.args}) > 0;
    case Formula::Kind::kNot:
      return !holds(state, goal.children.at(0));
    case Formula::Kind::kAnd:
      for (const Formula& c : goal.children) {
        if (!holds(state, c)) return false;
      }
      return true;
  }
  return false;
}

bool applicable(const State& state, const GroundAction& action) {
  for (const GroundAtom& a : action.pre_pos) {
    if (!state.count(a)) return false;
  }
  for (const GroundAtom& a : action.pre_neg) {
    if (state.count(a)) return false;
  }
  return true;
}

State apply(const State& state, const GroundAction& action) {
  State next = state;
  for (const GroundAtom& a : action.del) next.erase(a);
  next.insert(action.add.begin(), action.add.end());
  return next;
}

namespace {

using Packed = std::vector<std::uint32_t>;  // sorted atom ids

struct PackedHash {
  std::size_t operator()(const Packed& p) const {
    std::size_t h = p.size();
    for (std::uint32_t x : p) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

struct Interner {
  std::map<GroundAtom, std::uint32_t> ids;
  std::uint32_t id(const GroundAtom& a) { return ids.emplace(a, static_cast<std::uint32_t>(ids.size())).first->second; }
  Packed pack(const std::set<GroundAtom>& atoms) {
    Packed p;
    for (const GroundAtom& a : atoms) p.push_back(id(a));
    std::sort(p.begin(), p.end());
    return p;
  }
};

struct PackedAction {
  Packed pre_pos, pre_neg, add, del;
};

bool contains(const Packed& state, std::uint32_t x) { return std::binary_search(state.begin(), state.end(), x); }

struct PackedGoal {
  Packed pos, neg;
  bool satisfiable = true;
};

void pack_goal(const Formula& f, bool positive, Interner& interner, PackedGoal& out) {
  if (f.is_atom()) {
    if (f.name == "=") {
      bool eq = f.args.size() == 2 && iequals(f.args[0], f.args[1]);
      if (eq != positive) out.satisfiable = false;
      return;
    }
    (positive ? out.pos : out.neg).push_back(interner.id(GroundAtom{f.name, f.args}));
  } else if (f.is_not()) {
    pack_goal(f.children.at(0), !positive, interner, out);
  } else if (positive) {
    for (const Formula& c : f.children) pack_goal(c, true, interner, out);
  } else {
    // Negated conjunctions never come out of the parser.
    throw UnsupportedFeatureError("negated conjunction in goal");
  }
}

bool goal_met(const Packed& state, const PackedGoal& goal) {
  for (std::uint32_t x : goal.pos) {
    if (!contains(state, x)) return false;
  }
  for (std::uint32_t x : goal.neg) {
    if (contains(state, x)) return false;
  }
  return true;
}

}  // namespace

std::optional<Plan> search(const State& init, const Formula& goal, const std::vector<GroundAction>& actions) {
  Interner interner;
  PackedGoal packed_goal;
  pack_goal(goal, true, interner, packed_goal);
  if (!packed_goal.satisfiable) return std::nullopt;

  std::vector<PackedAction> packed;
  packed.reserve(actions.size());
  for (const GroundAction& a : actions) {
    packed.push_back({interner.pack(a.pre_pos), interner.pack(a.pre_neg), interner.pack(a.add), interner.pack(a.del)});
  }

  struct Node {
    Packed state;
    std::size_t parent;
    std::size_t action;
  };
  std::vector<Node> nodes;
  std::unordered_map<Packed, std::size_t, PackedHash> seen;

  auto extract = [&](std::size_t n) {
    Plan plan;
    while (n != 0) {
      plan.push_back(actions[nodes[n].action]);
      n = nodes[n].parent;
    }
    std::reverse(plan.begin(), plan.end());
    return plan;
  };

  nodes.push_back({interner.pack(init), 0, 0});
  seen.emplace(nodes[0].state, 0);
  if (goal_met(nodes[0].state, packed_goal)) return Plan{};

  for (std::size_t head = 0; head < nodes.size(); ++head) {
    for (std::size_t i = 0; i < packed.size(); ++i) {
      const PackedAction& a = packed[i];
      const Packed& state = nodes[head].state;
      bool ok = true;
      for (std::uint32_t x : a.pre_pos) ok = ok && contains(state, x);
      for (std::uint32_t x : a.pre_neg) ok = ok && !contains(state, x);
      if (!ok) continue;

      Packed next;
      next.reserve(state.size() + a.add.size());
      for (std::uint32_t x : state) {
        if (!std::binary_search(a.del.begin(), a.del.end(), x)) next.push_back(x);
      }
      Packed merged;
      std::set_union(next.begin(), next.end(), a.add.begin(), a.add.end(), std::back_inserter(merged));
      if (seen.count(merged)) continue;
      seen.emplace(merged, nodes.size());
      nodes.push_back({std::move(merged), head, i});
      if (goal_met(nodes.back().state, packed_goal)) return extract(nodes.size() - 1);
    }
  }
  return std::nullopt;
}

bool validate_plan(const State& init, const Formula& goal, const Plan& plan) {
  State s = init;
  for (const GroundAction& a : plan) {
    if (!applicable(s, a)) return false;
    s = pddls::apply(s, a);
  }
  return holds(s, goal);
}

}  // namespace pddls
