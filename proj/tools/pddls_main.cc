// pddls command-line front end.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pddls/alias.h"
#include "pddls/context.h"
#include "pddls/error.h"
#include "pddls/pipeline.h"
#include "pddls/planner.h"
#include "pddls/rdf.h"
#include "pddls/repo.h"
#include "pddls/resolver.h"
#include "pddls/sparql.h"
#include "pddls/syntax.h"

namespace fs = std::filesystem;
using namespace pddls;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::optional<fs::path>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path->string() + "'");
  out << text;
}

struct Inputs {
  std::string problem;
  std::vector<std::string> domains;
  std::vector<fs::path> ontology;
  std::vector<fs::path> objects;
  std::optional<fs::path> context_dir;
  std::optional<fs::path> report;
  std::optional<fs::path> repo;
  bool no_closure = false;

  void attach(CLI::App* cmd, bool needs_ontology) {
    cmd->add_option("--problem", problem, "PDDLS problem file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--domain", domains, "PDDLS domain file, or a domain IRI with --repo")->required();
    auto* onto = cmd->add_option("--ontology", ontology, "Turtle ontology file (repeatable)")->check(CLI::ExistingFile);
    if (needs_ontology) onto->required();
    cmd->add_option("--objects", objects, "Turtle object file (repeatable)")->check(CLI::ExistingFile);
    cmd->add_option("--context-dir", context_dir, "directory holding remote context files")->check(CLI::ExistingDirectory);
    cmd->add_option("--report", report, "write diagnostics to this file");
    cmd->add_option("--repo", repo, "skill repository root for domain IRIs")->check(CLI::ExistingDirectory);
    cmd->add_flag("--no-closure", no_closure, "skip RDFS closure");
  }

  RunConfig config(std::optional<fs::path> out_dir) const {
    RunConfig cfg;
    cfg.context_dir = context_dir;
    cfg.closure_enabled = !no_closure;
    cfg.report_path = report;
    cfg.out_dir = std::move(out_dir);
    cfg.repo_root = repo;
    return cfg;
  }

  std::vector<fs::path> graphs() const {
    std::vector<fs::path> all = ontology;
    all.insert(all.end(), objects.begin(), objects.end());
    return all;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PDDLS toolkit: semantic planning descriptions, role resolution and STRIPS planning"};
  app.set_version_flag("--version", std::string("pddls ") + kVersion);
  app.require_subcommand(1);

  // translate
  auto* translate = app.add_subcommand("translate", "PDDLS to JSON-LD (or back with --from-jsonld)");
  fs::path translate_in;
  std::optional<fs::path> translate_out;
  std::optional<fs::path> translate_ctx;
  bool reverse = false;
  translate->add_option("file", translate_in, "input file")->required()->check(CLI::ExistingFile);
  translate->add_option("-o,--output", translate_out, "output file (default stdout)");
  translate->add_option("--context-dir", translate_ctx, "directory holding remote context files");
  translate->add_flag("--from-jsonld", reverse, "read JSON-LD and print PDDLS");

  // canonicalize
  auto* canon = app.add_subcommand("canonicalize", "print the per-domain alias translation maps");
  std::string canon_problem;
  std::vector<std::string> canon_domains;
  std::optional<fs::path> canon_ctx;
  canon->add_option("--problem", canon_problem, "PDDLS problem file")->required()->check(CLI::ExistingFile);
  canon->add_option("--domain", canon_domains, "PDDLS domain file (repeatable)")->required()->check(CLI::ExistingFile);
  canon->add_option("--context-dir", canon_ctx, "directory holding remote context files");

  // query
  auto* query = app.add_subcommand("query", "evaluate a SPARQL SELECT over Turtle graphs");
  std::vector<fs::path> query_graphs;
  fs::path query_file;
  bool query_closure = false;
  query->add_option("--graph", query_graphs, "Turtle file (repeatable)")->required()->check(CLI::ExistingFile);
  query->add_option("--sparql", query_file, "query file")->required()->check(CLI::ExistingFile);
  query->add_flag("--closure", query_closure, "apply RDFS closure before evaluation");

  // resolve
  auto* resolve_cmd = app.add_subcommand("resolve", "resolve PDDLS into plain PDDL");
  Inputs resolve_in;
  fs::path resolve_out;
  resolve_in.attach(resolve_cmd, true);
  resolve_cmd->add_option("-o,--output", resolve_out, "output directory")->required();

  // plan
  auto* plan_cmd = app.add_subcommand("plan", "find a shortest plan for plain PDDL");
  fs::path plan_problem, plan_domain;
  plan_cmd->add_option("--problem", plan_problem, "PDDL problem file")->required()->check(CLI::ExistingFile);
  plan_cmd->add_option("--domain", plan_domain, "PDDL domain file")->required()->check(CLI::ExistingFile);

  // run
  auto* run_cmd = app.add_subcommand("run", "resolve, then plan");
  Inputs run_in;
  std::optional<fs::path> run_out;
  run_in.attach(run_cmd, false);
  run_cmd->add_option("-o,--output", run_out, "keep the emitted PDDL in this directory");

  // repo
  auto* repo_cmd = app.add_subcommand("repo", "skill repository");
  repo_cmd->require_subcommand(1);
  fs::path repo_root = ".";
  repo_cmd->add_option("--root", repo_root, "repository root");
  auto* repo_add_cmd = repo_cmd->add_subcommand("add", "add a PDDLS domain file");
  fs::path repo_file;
  repo_add_cmd->add_option("file", repo_file, "domain file")->required()->check(CLI::ExistingFile);
  auto* repo_list_cmd = repo_cmd->add_subcommand("list", "print IRI<TAB>path lines");
  auto* repo_get_cmd = repo_cmd->add_subcommand("get", "print the domain stored under an IRI");
  std::string repo_iri;
  repo_get_cmd->add_option("iri", repo_iri, "domain or action IRI")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*translate) {
      RunConfig cfg;
      cfg.context_dir = translate_ctx;
      if (reverse) {
        JsonLd json;
        try {
          json = JsonLd::parse(read_file(translate_in));
        } catch (const JsonLd::parse_error& e) {
          throw SyntaxError(e.what(), {});
        }
        write_output(translate_out, print_pddl(pddls::from_jsonld(json), false));
      } else {
        write_output(translate_out, dump_jsonld(to_jsonld(load_input(cfg, translate_in))));
      }
      return kExitOk;
    }
    if (*canon) {
      RunConfig cfg;
      cfg.context_dir = canon_ctx;
      const Document problem = load_input(cfg, canon_problem);
      std::vector<std::pair<std::string, ContextMap>> contexts;
      for (const std::string& d : canon_domains) {
        Document doc = load_input(cfg, d);
        contexts.emplace_back(doc.name, doc.context);
      }
      for (const DomainTranslation& t : build_translation_maps(problem.context, contexts)) {
        std::cout << "# " << t.domain_id << '\n' << format_translation(t);
      }
      return kExitOk;
    }
    if (*query) {
      Graph graph = load_graphs(query_graphs);
      if (query_closure) graph = rdfs_closure(graph);
      std::cout << sparql::format_results(sparql::evaluate(sparql::parse_query(read_file(query_file)), graph));
      return kExitOk;
    }
    if (*resolve_cmd) {
      const RunConfig cfg = resolve_in.config(resolve_out);
      ResolvedBundle bundle = resolve_inputs(cfg, resolve_in.problem, resolve_in.domains, resolve_in.graphs());
      emit(bundle, resolve_out);
      write_report(cfg, bundle.diagnostics, std::cerr);
      return kExitOk;
    }
    if (*plan_cmd) return plan_files(plan_domain, plan_problem, std::cout, std::cerr);
    if (*run_cmd) {
      return run_pipeline(run_in.config(run_out), run_in.problem, run_in.domains, run_in.graphs(), std::cout,
                          std::cerr);
    }
    if (*repo_add_cmd) {
      const RepoIndex index = repo_add(repo_root, repo_file);
      const Document doc = load_document(repo_file.string());
      for (const std::string& key : domain_keys(doc)) std::cout << key << '\t' << index.entries.at(key) << '\n';
      return kExitOk;
    }
    if (*repo_list_cmd) {
      for (const auto& [iri, path] : load_index(repo_root).entries) std::cout << iri << '\t' << path << '\n';
      return kExitOk;
    }
    if (*repo_get_cmd) {
      auto doc = repo_lookup(repo_root, repo_iri);
      if (!doc) {
        std::cerr << "error: no domain indexed under <" << repo_iri << ">\n";
        return kExitResolve;
      }
      std::cout << print_pddl(*doc, false);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitOk;
}
