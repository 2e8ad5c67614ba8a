#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "pddls/error.h"
#include "pddls/pipeline.h"
#include "pddls/repo.h"
#include "pddls/syntax.h"
#include "support/testing.h"

using namespace pddls;
using pddls::testing::data_path;
using pddls::testing::load_data_document;
using pddls::testing::read_text;

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const RunConfig& cfg, const std::string& problem, const std::vector<std::string>& domains,
              const std::vector<std::string>& ontology) {
  std::vector<fs::path> graphs;
  for (const std::string& g : ontology) graphs.emplace_back(data_path(g));
  std::ostringstream out, err;
  const int code = run_pipeline(cfg, problem, domains, graphs, out, err);
  return {code, out.str(), err.str()};
}

const std::vector<std::string> kOntology = {"pipeline/commonsense.ttl", "pipeline/role_signatures.ttl",
                                            "pipeline/objects.ttl"};

}  // namespace

TEST_CASE("add and look up a domain") {
  TempDir root("pddls-test-repo-add");
  const fs::path file = data_path("demo/ur5_domain.pddls");
  const RepoIndex index = repo_add(root.path, file);

  CHECK(index.entries.size() == 1);
  const std::string name_iri = "uri:cril/action/pick-n-insert";
  REQUIRE(index.entries.count(name_iri));
  CHECK(fs::exists(root.path / index.entries.at(name_iri)));
  CHECK(load_index(root.path).entries == index.entries);

  const auto found = repo_lookup(root.path, name_iri);
  REQUIRE(found);
  CHECK(*found == load_data_document("demo/ur5_domain.pddls"));
  CHECK_FALSE(repo_lookup(root.path, "uri:nothing/here"));

  const std::string text = read_text((root.path / "index.tsv").string());
  CHECK(text.rfind("#pddls-index\t1\n", 0) == 0);
}

TEST_CASE("index keys") {
  const auto keys = domain_keys(load_data_document("demo/ur5_domain.pddls"));
  CHECK(keys == std::vector<std::string>{"uri:cril/action/pick-n-insert"});
  const auto named = domain_keys(parse_document(
      "(define (domain d) (:context d - uri:dom/d a - uri:act/a) (:action a :parameters ()))"));
  CHECK(named == std::vector<std::string>{"uri:dom/d", "uri:act/a"});
}

TEST_CASE("repository errors") {
  TempDir root("pddls-test-repo-errors");
  const fs::path file = data_path("demo/ur5_domain.pddls");
  repo_add(root.path, file);
  CHECK_THROWS_AS(repo_add(root.path, file), DuplicateIriError);
  CHECK(load_index(root.path).entries.size() == 1);
  CHECK_THROWS_AS(repo_add(root.path, data_path("demo/ur5_problem.pddls")), SyntaxError);

  write_file(root.path / "bare.pddls", "(define (domain bare) (:predicates (p)))");
  CHECK_THROWS_AS(repo_add(root.path, root.path / "bare.pddls"), ContextError);

  write_file(root.path / "index.lock", "");
  write_file(root.path / "other.pddls", "(define (domain o) (:context o - uri:o))");
  CHECK_THROWS_AS(repo_add(root.path, root.path / "other.pddls"), IndexError);
  fs::remove(root.path / "index.lock");
  CHECK(repo_add(root.path, root.path / "other.pddls").entries.size() == 2);
}

TEST_CASE("a corrupted index names a recovery") {
  TempDir root("pddls-test-repo-corrupt");
  CHECK(load_index(root.path).entries.empty());
  write_file(root.path / "index.tsv", "#pddls-index\t1\nno tab here\n");
  try {
    load_index(root.path);
    FAIL("accepted a corrupted index");
  } catch (const IndexError& err) {
    CHECK(std::string(err.what()).find("restore") != std::string::npos);
  }
  write_file(root.path / "index.tsv", "garbage\n");
  CHECK_THROWS_AS(repo_lookup(root.path, "uri:x"), IndexError);
}

TEST_CASE("run the example end to end") {
  TempDir out("pddls-test-run");
  RunConfig cfg;
  cfg.out_dir = out.path;
  const RunResult r = run(cfg, data_path("pipeline/problem.pddls"), {data_path("pipeline/domain.pddls")}, kOntology);
  CHECK(r.code == kExitOk);
  CHECK(r.out == "(pick-n-insert CylindricalPillar_1 CylindricalHole_4)\n");
  const Document p = parse_document(read_text((out.path / "problem.pddl").string()));
  CHECK(p.init.size() == 4);

  const RunResult again =
      run(cfg, data_path("pipeline/problem.pddls"), {data_path("pipeline/domain.pddls")}, kOntology);
  CHECK(again.out == r.out);
  CHECK(again.err == r.err);
}

TEST_CASE("run without the common-sense ontology") {
  const RunResult none = run({}, data_path("pipeline/problem.pddls"), {data_path("pipeline/domain.pddls")}, {});
  CHECK(none.code == kExitNoPlan);
  CHECK(none.out.empty());
  CHECK(none.err.find("no plan") != std::string::npos);

  const RunResult objects_only =
      run({}, data_path("pipeline/problem.pddls"), {data_path("pipeline/domain.pddls")}, {"pipeline/objects.ttl"});
  CHECK(objects_only.code == kExitNoPlan);
}

TEST_CASE("run exit codes for bad input") {
  TempDir dir("pddls-test-run-bad");
  write_file(dir.path / "broken.pddls", "(define (problem p) (:domain");
  CHECK(run({}, (dir.path / "broken.pddls").string(), {data_path("pipeline/domain.pddls")}, {}).code == kExitParse);

  CHECK(run({}, data_path("demo/ur5_problem.pddls"), {data_path("demo/ur5_domain_unbound.pddls")}, {}).code ==
        kExitResolve);

  write_file(dir.path / "stray.pddls", "(define (problem p) (:domain elsewhere) (:objects a))");
  CHECK(run({}, (dir.path / "stray.pddls").string(), {data_path("pipeline/domain.pddls")}, {}).code ==
        kExitResolve);

  CHECK(run({}, (dir.path / "absent.pddls").string(), {data_path("pipeline/domain.pddls")}, {}).code == kExitParse);
}

TEST_CASE("run with a domain taken from the repository") {
  TempDir root("pddls-test-run-repo");
  repo_add(root.path, data_path("pipeline/domain.pddls"));
  RunConfig cfg;
  cfg.repo_root = root.path;
  const RunResult r = run(cfg, data_path("pipeline/problem.pddls"), {"uri:ex/action/pick-n-insert"}, kOntology);
  CHECK(r.code == kExitOk);
  CHECK(r.out == "(pick-n-insert CylindricalPillar_1 CylindricalHole_4)\n");
  CHECK(run(cfg, data_path("pipeline/problem.pddls"), {"uri:ex/unknown"}, kOntology).code != kExitOk);
}

TEST_CASE("diagnostics report") {
  TempDir dir("pddls-test-run-report");
  RunConfig cfg;
  cfg.report_path = dir.path / "report.txt";
  const RunResult r = run(cfg, data_path("pipeline/problem.pddls"), {data_path("pipeline/domain.pddls")}, kOntology);
  CHECK(r.code == kExitOk);
  const std::string report = read_text(cfg.report_path->string());
  CHECK(report.find("INFO\tinjected\t(insertable CylindricalPillar_1 CylindricalHole_4)\n") != std::string::npos);
  CHECK(report.find("WARNING\tdropped-fact\t") != std::string::npos);
}
