#ifndef PDDLS_PLANNER_H_
#define PDDLS_PLANNER_H_

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pddls/ast.h"

namespace pddls {

struct GroundAtom {
  std::string predicate;
  std::vector<std::string> args;

  bool operator==(const GroundAtom&) const = default;
  auto operator<=>(const GroundAtom&) const = default;
};

std::string to_string(const GroundAtom& atom);

struct GroundAction {
  std::string name;
  std::vector<std::string> args;
  std::set<GroundAtom> pre_pos;
  std::set<GroundAtom> pre_neg;
  std::set<GroundAtom> add;
  std::set<GroundAtom> del;

  bool operator==(const GroundAction&) const = default;
};

// "(name arg1 arg2)"
std::string to_string(const GroundAction& action);

using State = std::set<GroundAtom>;
using Plan = std::vector<GroundAction>;

// Every substitution of action parameters by problem objects and domain
// constants, respecting the type hierarchy. Symbols are spelled as declared.
// Equality atoms in preconditions are decided here and never reach the
// ground action. Throws GroundingError for variables that are not action
// parameters and UnsupportedFeatureError for requirements outside
// :strips :typing :negative-preconditions :equality (:adl and :semantics are
// accepted; the parser already rejects the constructs they would add).
// The result is sorted by (name, args).
std::vector<GroundAction> ground(const Document& domain, const Document& problem);

// Init atoms with predicate and object names spelled as declared.
State initial_state(const Document& domain, const Document& problem);

// The problem goal with predicate and object names spelled as declared;
// an empty conjunction when the problem has no goal.
Formula goal_formula(const Document& domain, const Document& problem);

// Closed-world truth of a goal formula. `=` atoms compare their arguments.
bool holds(const State& state, const Formula& goal);
bool applicable(const State& state, const GroundAction& action);
// Delete effects first, then add effects.
State apply(const State& state, const GroundAction& action);

// Breadth-first search over `actions` in the given order. Returns a shortest
// plan, or nothing once the reachable space is exhausted.
std::optional<Plan> search(const State& init, const Formula& goal, const std::vector<GroundAction>& actions);

bool validate_plan(const State& init, const Formula& goal, const Plan& plan);

}  // namespace pddls

#endif  // PDDLS_PLANNER_H_
