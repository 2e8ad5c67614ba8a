#include <algorithm>

#include "doctest.h"
#include "pddls/error.h"
#include "pddls/rdf.h"
#include "pddls/vocab.h"
#include "support/testing.h"

using namespace pddls;
using pddls::testing::data_path;
using pddls::testing::load_data_graphs;
using pddls::testing::read_text;

namespace {

const std::string kShapes = "uri:ex/shapes#";
const std::string kDemo = "uri:ex/demo2/";

Term shape(const std::string& local) { return Term::iri(kShapes + local); }
Term demo(const std::string& local) { return Term::iri(kDemo + local); }
Term type() { return Term::iri(std::string(vocab::kRdfType)); }
Term sub() { return Term::iri(std::string(vocab::kRdfsSubClassOf)); }

// Repeats rdfs9 and rdfs11 over every pair of triples until nothing new
// appears.
Graph naive_closure(const Graph& g) {
  Graph out = g;
  for (bool changed = true; changed;) {
    changed = false;
    const std::vector<Triple> all(out.triples().begin(), out.triples().end());
    for (const Triple& x : all) {
      for (const Triple& y : all) {
        if (y.predicate != sub() || x.object != y.subject) continue;
        if (x.predicate == sub() || x.predicate == type()) {
          changed |= out.insert(x.subject, x.predicate, y.object);
        }
      }
    }
  }
  return out;
}

bool subset(const Graph& a, const Graph& b) {
  return std::includes(b.triples().begin(), b.triples().end(), a.triples().begin(), a.triples().end());
}

const std::vector<std::string> kFixtures = {"demo/commonsense_1_hierarchy.ttl", "demo/commonsense_2_sparql.ttl",
                                            "demo/commonsense_3_shacl.ttl", "demo/objects.ttl"};

}  // namespace

TEST_CASE("parse the hierarchy ontology") {
  const Graph g = parse_turtle(read_text(data_path("demo/commonsense_1_hierarchy.ttl")));
  CHECK(g.contains({shape("CylindricalPillar"), shape("sectionShape"), shape("Circle")}));
  CHECK(g.contains({shape("CylindricalPillar"), sub(), shape("Pillar")}));
  CHECK(g.contains({shape("Hole"), type(), Term::iri("http://www.w3.org/2002/07/owl#Thing")}));
}

TEST_CASE("parse the object ontology") {
  const Graph g = parse_turtle(read_text(data_path("demo/objects.ttl")));
  CHECK(g.size() == 12);
  const auto sizes = g.objects(demo("CylindricalHole_4"), shape("size"));
  REQUIRE(sizes.size() == 1);
  CHECK(sizes[0] == Term::literal("3.0", std::string(vocab::kXsdDecimal)));
}

TEST_CASE("parse the empty string") { CHECK(parse_turtle("").empty()); }

TEST_CASE("turtle constructs") {
  const Graph g = parse_turtle(R"(
    @prefix : <http://e.org/> .
    PREFIX x: <http://x.org/>
    @base <http://b.org/dir/> .
    :s a :C ; :p "a\"b"@EN-us , 'single' , """long
text""" ; :n 1, -2.5, 1e3, true .
    <rel> :q [ :r :o ] .
    :l :list ( :a :b ) .
    _:n1 x:y _:n1 .
  )");
  CHECK(g.contains({Term::iri("http://e.org/s"), type(), Term::iri("http://e.org/C")}));
  CHECK(g.contains({Term::iri("http://e.org/s"), Term::iri("http://e.org/p"),
                    Term::literal("a\"b", std::string(vocab::kRdfLangString), "en-us")}));
  CHECK(g.contains({Term::iri("http://e.org/s"), Term::iri("http://e.org/p"),
                    Term::literal("long\ntext", std::string(vocab::kXsdString))}));
  CHECK(g.contains({Term::iri("http://e.org/s"), Term::iri("http://e.org/n"),
                    Term::literal("-2.5", std::string(vocab::kXsdDecimal))}));
  CHECK(g.contains({Term::iri("http://e.org/s"), Term::iri("http://e.org/n"),
                    Term::literal("1e3", std::string(vocab::kXsdDouble))}));
  CHECK(g.contains({Term::iri("http://e.org/s"), Term::iri("http://e.org/n"),
                    Term::literal("true", std::string(vocab::kXsdBoolean))}));
  CHECK(g.match(Term::iri("http://b.org/dir/rel"), Term::iri("http://e.org/q"), std::nullopt).size() == 1);
  CHECK(g.match(std::nullopt, Term::iri(std::string(vocab::kRdfFirst)), std::nullopt).size() == 2);
  CHECK(g.contains({Term::blank("n1"), Term::iri("http://x.org/y"), Term::blank("n1")}));
  CHECK(g.size() == 16);
}

TEST_CASE("turtle errors carry positions") {
  try {
    parse_turtle("@prefix a: <http://a/> .\na:s nope:p a:o .");
    FAIL("accepted an unknown prefix");
  } catch (const UnknownPrefixError& err) {
    CHECK(err.position().line == 2);
  }
  CHECK_THROWS_AS(parse_turtle("<a> <b> ."), SyntaxError);
  CHECK_THROWS_AS(parse_turtle("<a> <b> <c>"), SyntaxError);
  CHECK_THROWS_AS(parse_turtle("\"lit\" <b> <c> ."), SyntaxError);
}

TEST_CASE("blank prefixes keep files apart") {
  const Graph a = parse_turtle("_:x <uri:p> <uri:o> .", TurtleOptions{.blank_prefix = "f0_"});
  const Graph b = parse_turtle("_:x <uri:p> <uri:o> .", TurtleOptions{.blank_prefix = "f1_"});
  Graph u = a;
  u.merge(b);
  CHECK(u.size() == 2);
}

TEST_CASE("serialize") {
  CHECK(parse_turtle(serialize_turtle(Graph{})).empty());

  Graph one;
  one.insert(Term::iri("uri:s"), Term::iri("uri:p"), Term::literal("v"));
  const std::string text = serialize_turtle(one);
  std::size_t statements = 0;
  for (std::size_t i = 0; i + 1 < text.size(); ++i) statements += text[i] == ' ' && text[i + 1] == '.';
  CHECK(statements == 1);

  const Graph objects = parse_turtle(read_text(data_path("demo/objects.ttl")));
  CHECK(parse_turtle(serialize_turtle(objects)) == objects);
}

TEST_CASE("closure: the forced entailments") {
  Graph g;
  g.insert(demo("CylindricalPillar_1"), type(), shape("CylindricalPillar"));
  g.insert(shape("CylindricalPillar"), sub(), shape("Pillar"));
  CHECK(rdfs_closure(g).contains({demo("CylindricalPillar_1"), type(), shape("Pillar")}));

  Graph h;
  h.insert(Term::iri("uri:A"), sub(), Term::iri("uri:B"));
  h.insert(Term::iri("uri:B"), sub(), Term::iri("uri:C"));
  CHECK(rdfs_closure(h).contains({Term::iri("uri:A"), sub(), Term::iri("uri:C")}));
  CHECK(rdfs_closure(h).size() == 3);
}

TEST_CASE("closure: no reflexive subclass and no domain/range") {
  Graph g;
  g.insert(Term::iri("uri:A"), sub(), Term::iri("uri:B"));
  g.insert(Term::iri("uri:p"), Term::iri(std::string(vocab::kRdfsDomain)), Term::iri("uri:A"));
  g.insert(Term::iri("uri:x"), Term::iri("uri:p"), Term::iri("uri:y"));
  CHECK(rdfs_closure(g) == g);
}

TEST_CASE("closure: the fixture graph") {
  const Graph g = load_data_graphs(kFixtures);
  CHECK(g.size() == 61);
  const Graph c = rdfs_closure(g);
  CHECK(c == naive_closure(g));
  CHECK(rdfs_closure(c) == c);
  CHECK(c.size() == 73);
  CHECK(c.contains({demo("CylindricalPillar_1"), type(), shape("Pillar")}));
  CHECK(c.contains({demo("SquareHole_6"), type(), shape("Hole")}));
  CHECK(c.contains({shape("CylindricalPillar"), sub(), Term::iri("http://www.w3.org/2002/07/owl#Thing")}));
}

TEST_CASE("decimals compare exactly") {
  auto d = [](const char* s) { return *parse_decimal(s); };
  CHECK(compare(d("2.0"), d("2")) == 0);
  CHECK(compare(d("2.0"), d("3.0")) < 0);
  CHECK(compare(d("-0.5"), d("0.25")) < 0);
  CHECK(compare(d("-0.5"), d("-0.25")) < 0);
  CHECK(compare(d("+10"), d("9.99999999999999999999")) > 0);
  CHECK(compare(d("0.1"), d("0.10")) == 0);
  CHECK(compare(d("-0"), d("0")) == 0);
  CHECK_FALSE(parse_decimal("1e3"));
  CHECK_FALSE(parse_decimal("abc"));
  CHECK_FALSE(parse_decimal(""));
  CHECK(numeric_value(Term::literal("7", std::string(vocab::kXsdInteger))));
  CHECK_FALSE(numeric_value(Term::literal("7")));
}

TEST_CASE("property: serialize/parse round trip") {
  pddls::testing::Rng rng(41);
  for (int i = 0; i < 300; ++i) {
    const Graph g = pddls::testing::random_graph(rng, 25);
    const std::string text = serialize_turtle(g);
    INFO(text);
    CHECK(parse_turtle(text) == g);
  }
}

TEST_CASE("property: closure is extensive, idempotent and matches the naive fixpoint") {
  pddls::testing::Rng rng(42);
  std::uniform_int_distribution<int> node(0, 5), kind(0, 2);
  for (int i = 0; i < 200; ++i) {
    Graph a, b;
    for (Graph* g : {&a, &b}) {
      for (int k = node(rng) + node(rng); k > 0; --k) {
        const Term s = Term::iri("uri:n" + std::to_string(node(rng)));
        const Term o = Term::iri("uri:n" + std::to_string(node(rng)));
        const int which = kind(rng);
        g->insert(s, which == 0 ? sub() : which == 1 ? type() : Term::iri("uri:p"), o);
      }
    }
    const Graph ca = rdfs_closure(a);
    CHECK(subset(a, ca));
    CHECK(rdfs_closure(ca) == ca);
    CHECK(ca == naive_closure(a));

    Graph u = a;
    u.merge(b);
    Graph parts = ca;
    parts.merge(rdfs_closure(b));
    CHECK(subset(parts, rdfs_closure(u)));
  }
}
