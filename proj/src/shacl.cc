#include "pddls/shacl.h"

#include <algorithm>

#include "pddls/error.h"
#include "pddls/vocab.h"

namespace pddls::shacl {

namespace {

Term iri(std::string_view v) { return Term::iri(std::string(v)); }

bool in_sh_namespace(const Term& t) {
  return t.is_iri() && t.value.compare(0, vocab::kSh.size(), vocab::kSh) == 0;
}

std::string describe(const Term& t) { return pddls::to_string(t); }

// Decodes an RDF list, or a single predicate IRI, into a path.
Path decode_path(const Graph& g, const Term& head, const Term& owner) {
  if (head.is_iri() && head.value != vocab::kRdfNil) return {head};
  Path out;
  Term cell = head;
  const Term first = iri(vocab::kRdfFirst);
  const Term rest = iri(vocab::kRdfRest);
  std::size_t guard = 0;
  while (!(cell.is_iri() && cell.value == vocab::kRdfNil)) {
    if (++guard > g.size() + 1) throw ShapeError("cyclic sh:path list on " + describe(owner));
    std::vector<Term> items = g.objects(cell, first);
    std::vector<Term> next = g.objects(cell, rest);
    if (items.size() != 1 || next.size() != 1) {
      throw ShapeError("malformed sh:path list on " + describe(owner));
    }
    if (!items.front().is_iri()) throw ShapeError("sh:path steps must be IRIs on " + describe(owner));
    out.push_back(items.front());
    cell = next.front();
  }
  if (out.empty()) throw ShapeError("empty sh:path on " + describe(owner));
  return out;
}

Path single_path(const Graph& g, const Term& node) {
  std::vector<Term> paths = g.objects(node, iri(vocab::kShPath));
  if (paths.empty()) throw ShapeError("missing sh:path on " + describe(node));
  if (paths.size() > 1) throw ShapeError("several sh:path values on " + describe(node));
  return decode_path(g, paths.front(), node);
}

// The comparison target of sh:equals / sh:lessThanOrEquals: either a plain
// predicate IRI (standard SHACL) or a node whose nested sh:property carries
// the path to compare against.
Path other_path(const Graph& g, const Term& target, const Term& owner) {
  if (target.is_iri()) return {target};
  std::vector<Term> nested = g.objects(target, iri(vocab::kShProperty));
  if (nested.size() != 1) {
    throw ShapeError("comparison target of " + describe(owner) + " needs exactly one sh:property");
  }
  return single_path(g, nested.front());
}

PropertyConstraint load_property(const Graph& g, const Term& node) {
  PropertyConstraint pc;
  pc.path = single_path(g, node);
  int components = 0;
  for (const Triple& t : g.match(node, std::nullopt, std::nullopt)) {
    const std::string& p = t.predicate.value;
    if (p == vocab::kShPath) continue;
    if (p == vocab::kShLessThanOrEquals) {
      pc.comparator = PropertyConstraint::Comparator::kLessThanOrEquals;
    } else if (p == vocab::kShEquals) {
      pc.comparator = PropertyConstraint::Comparator::kEquals;
    } else if (in_sh_namespace(t.predicate)) {
      throw ShapeError("unsupported constraint component " + describe(t.predicate));
    } else {
      continue;
    }
    if (++components > 1) throw ShapeError("more than one comparison on " + describe(node));
    pc.other_path = other_path(g, t.object, node);
  }
  if (components == 0) throw ShapeError("property shape " + describe(node) + " has no comparison");
  return pc;
}

bool all_less_or_equal(const std::set<Term>& left, const std::set<Term>& right) {
  for (const Term& a : left) {
    auto x = numeric_value(a);
    if (!x) return false;
    for (const Term& b : right) {
      auto y = numeric_value(b);
      if (!y || compare(*x, *y) > 0) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Shape> load_shapes(const Graph& graph) {
  std::vector<Shape> out;
  for (const Term& node : graph.subjects(iri(vocab::kRdfType), iri(vocab::kShNodeShape))) {
    Shape shape;
    shape.shape = node;
    std::vector<Term> targets = graph.objects(node, iri(vocab::kShTargetClass));
    if (targets.size() != 1) throw ShapeError("shape " + describe(node) + " needs exactly one sh:targetClass");
    shape.target_class = targets.front();
    for (const Triple& t : graph.match(node, std::nullopt, std::nullopt)) {
      const std::string& p = t.predicate.value;
      if (p == vocab::kShProperty) {
        shape.properties.push_back(load_property(graph, t.object));
      } else if (p == vocab::kShTargetClass || p == vocab::kRdfType) {
        continue;
      } else if (in_sh_namespace(t.predicate)) {
        throw ShapeError("unsupported constraint component " + describe(t.predicate));
      }
    }
    out.push_back(std::move(shape));
  }
  return out;
}

std::set<Term> path_values(const Graph& graph, const std::set<Term>& start, const Path& path) {
  std::set<Term> current = start;
  for (const Term& step : path) {
    std::set<Term> next;
    for (const Term& node : current) {
      if (node.is_literal()) continue;
      for (Term& v : graph.objects(node, step)) next.insert(std::move(v));
    }
    current = std::move(next);
  }
  return current;
}

bool conforms_pair(const Shape& shape, const Graph& graph, const Term& a, const Term& b) {
  // The focus node exists only virtually; its outgoing edges are resolved
  // here and the remaining steps run over the graph.
  auto from_focus = [&](const Path& path) -> std::set<Term> {
    const Term& step = path.front();
    std::set<Term> first;
    if (step.value == vocab::kPddlParam1) first.insert(a);
    if (step.value == vocab::kPddlParam2) first.insert(b);
    if (step.value == vocab::kRdfType) first.insert(shape.target_class);
    return path_values(graph, first, Path(path.begin() + 1, path.end()));
  };
  for (const PropertyConstraint& pc : shape.properties) {
    std::set<Term> left = from_focus(pc.path);
    std::set<Term> right = from_focus(pc.other_path);
    switch (pc.comparator) {
      case PropertyConstraint::Comparator::kEquals:
        if (left.empty() || left != right) return false;
        break;
      case PropertyConstraint::Comparator::kLessThanOrEquals:
        if (!all_less_or_equal(left, right)) return false;
        break;
    }
  }
  return true;
}

std::set<Pair> derive_pairs(const Shape& shape, const Graph& graph, const std::set<Pair>& candidates) {
  std::set<Pair> out;
  for (const Pair& p : candidates) {
    if (conforms_pair(shape, graph, p.first, p.second)) out.insert(p);
  }
  return out;
}

}  // namespace pddls::shacl
