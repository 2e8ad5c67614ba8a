#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "pddls/context.h"
#include "pddls/error.h"
#include "pddls/strings.h"
#include "pddls/syntax.h"
#include "support/testing.h"

using namespace pddls;
using pddls::testing::load_data_document;

namespace {

Document without_semantics(Document d) {
  std::erase_if(d.requirements, [](const std::string& r) { return iequals(r, ":semantics"); });
  return d;
}

}  // namespace

TEST_CASE("expand") {
  const Document d = load_data_document("demo/ur5_domain.pddls");
  CHECK(expand("available", d.context) == "uri:cril/action/available");
  CHECK(expand("pick-n-insert", d.context) == "uri:cril/action/pick-n-insert");
  CHECK(expand("Available", d.context) == "uri:cril/action/available");
  CHECK_FALSE(expand("unknown-symbol", d.context));
}

TEST_CASE("JSON-LD of the example domain") {
  const JsonLd j = to_jsonld(load_data_document("demo/ur5_domain.pddls"));

  // Expected fields, byte for byte.
  const JsonLd quoted = JsonLd::parse(R"({
    "@context": {
      "pddl": "uri:pddl",
      "available": "uri:cril/action/available",
      "insertable": "uri:cril/action/insertable",
      "pick-n-insert": "uri:cril/action/pick-n-insert"
    },
    "pddl:domain": "example-ur5-domain",
    "pddl:requirements": [":strips", ":adl", ":typing"]
  })");
  CHECK(j["@context"].dump() == quoted["@context"].dump());
  CHECK(j["pddl:domain"].dump() == quoted["pddl:domain"].dump());
  CHECK(j["pddl:requirements"].dump() == quoted["pddl:requirements"].dump());

  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"@context", "pddl:domain", "pddl:requirements", "pddl:predicates",
                                         "pddl:structure"});

  CHECK(j["pddl:predicates"].dump() ==
        R"([{"available":[{"?object":null}]},{"insertable":[{"?pillar":null},{"?hole":null}]}])");
  REQUIRE(j["pddl:structure"].size() == 1);
  CHECK(j["pddl:structure"][0]["pddl:action"] == "pick-n-insert");
  CHECK(j["pddl:structure"][0]["pddl:parameters"].dump() == R"([{"?pillar":null},{"?hole":null}])");
  CHECK(j["pddl:structure"][0]["pddl:effect"].dump() ==
        R"({"pddl:and":[{"pddl:not":{"available":["?pillar"]}},{"pddl:not":{"available":["?hole"]}}]})");
}

TEST_CASE("JSON-LD output format") {
  const std::string text = dump_jsonld(to_jsonld(load_data_document("demo/ur5_domain.pddls")));
  CHECK(text.rfind("{\n  \"@context\": {\n    \"pddl\": \"uri:pddl\",\n", 0) == 0);
  CHECK(text.back() == '\n');
}

TEST_CASE("JSON-LD of the minimal domain") {
  const JsonLd j = to_jsonld(parse_document("(define (domain d0))"));
  CHECK(j["@context"].dump() == R"({"pddl":"uri:pddl"})");
  CHECK(j["pddl:predicates"].dump() == "[]");
}

TEST_CASE("JSON-LD of the example problem") {
  const Document p = load_data_document("demo/ur5_problem.pddls");
  const JsonLd j = to_jsonld(p);
  CHECK(j["@context"].size() == 5);
  for (const auto& b : p.context.entries) CHECK(j["@context"][b.term] == b.iri);
  CHECK(j["pddl:problem"] == "example-problem");
  CHECK(j["pddl:domain"] == "example-ur5-domain");
  CHECK(j["pddl:goal"].dump() == R"({"pddl:not":{"available":["CylindricalHole_4"]}})");
}

TEST_CASE("from_jsonld inverts to_jsonld on the examples") {
  for (const char* f : {"demo/ur5_domain.pddls", "demo/ur5_domain_unbound.pddls", "demo/ur5_problem.pddls"}) {
    const Document d = load_data_document(f);
    CHECK(without_semantics(from_jsonld(to_jsonld(d))) == without_semantics(d));
  }
}

TEST_CASE("from_jsonld schema errors") {
  JsonLd j = to_jsonld(load_data_document("demo/ur5_domain.pddls"));
  SUBCASE("missing @context") {
    j.erase("@context");
    CHECK_THROWS_AS(from_jsonld(j), SchemaError);
  }
  SUBCASE("unknown key") {
    j["pddl:bogus"] = 1;
    try {
      from_jsonld(j);
      FAIL("accepted an unknown key");
    } catch (const SchemaError& err) {
      CHECK(err.key() == "pddl:bogus");
    }
  }
  SUBCASE("wrong value type") {
    j["pddl:requirements"] = "strips";
    CHECK_THROWS_AS(from_jsonld(j), SchemaError);
  }
  SUBCASE("not an object") {
    CHECK_THROWS_AS(from_jsonld(JsonLd::array()), SchemaError);
  }
}

TEST_CASE("remote context from a directory") {
  const auto dir = std::filesystem::temp_directory_path() / "pddls-test-context";
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / context_file_name("uri:ctx/robots"));
    out << R"({"@context": {"pddl": "uri:pddl", "available": "uri:ex/action/available"}})";
  }
  CHECK(context_file_name("uri:ctx/robots") == "uri_ctx_robots.jsonld");

  Document d = parse_document("(define (domain d) (:context uri:ctx/robots) (:predicates (available ?x)))");
  resolve_context_ref(d, dir.string());
  CHECK_FALSE(d.context_ref);
  CHECK(expand("available", d.context) == "uri:ex/action/available");

  Document missing = parse_document("(define (domain d) (:context uri:ctx/absent))");
  CHECK_THROWS_AS(resolve_context_ref(missing, dir.string()), ContextError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("property: JSON-LD round trip on generated documents") {
  pddls::testing::Rng rng(21);
  for (int i = 0; i < 400; ++i) {
    const DocumentKind kind = i % 2 ? DocumentKind::kDomain : DocumentKind::kProblem;
    const Document d = parse_document(print_pddl(pddls::testing::random_document(rng, kind), false));
    const JsonLd j = to_jsonld(d);
    INFO(dump_jsonld(j));
    const Document back = from_jsonld(JsonLd::parse(dump_jsonld(j)));
    CHECK(without_semantics(back) == without_semantics(d));
    if (!d.context.empty()) CHECK(back.has_requirement(":semantics"));
  }
}
