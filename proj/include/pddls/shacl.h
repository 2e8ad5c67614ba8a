#ifndef PDDLS_SHACL_H_
#define PDDLS_SHACL_H_

#include <set>
#include <utility>
#include <vector>

#include "pddls/rdf.h"

namespace pddls::shacl {

using Path = std::vector<Term>;  // sequence of predicate IRIs

struct PropertyConstraint {
  enum class Comparator { kLessThanOrEquals, kEquals };

  Path path;
  Comparator comparator = Comparator::kEquals;
  Path other_path;

  bool operator==(const PropertyConstraint&) const = default;
};

struct Shape {
  Term shape;  // IRI or blank node of the sh:NodeShape
  Term target_class;
  std::vector<PropertyConstraint> properties;

  bool operator==(const Shape&) const = default;
};

// One Shape per sh:NodeShape in `graph`, ordered by shape term. Throws
// ShapeError for a missing sh:path / sh:targetClass or an unsupported
// constraint component.
std::vector<Shape> load_shapes(const Graph& graph);

// Evaluates `shape` on a virtual focus node f carrying (f param1 a),
// (f param2 b) and (f rdf:type target_class).
bool conforms_pair(const Shape& shape, const Graph& graph, const Term& a, const Term& b);

using Pair = std::pair<Term, Term>;

std::set<Pair> derive_pairs(const Shape& shape, const Graph& graph, const std::set<Pair>& candidates);

// Values reached from `start` along `path` in `graph`.
std::set<Term> path_values(const Graph& graph, const std::set<Term>& start, const Path& path);

}  // namespace pddls::shacl

#endif  // PDDLS_SHACL_H_
