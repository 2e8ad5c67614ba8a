#include "pddls/pipeline.h"

#include <fstream>
#include <iostream>
#include <random>

#include "pddls/context.h"
#include "pddls/error.h"
#include "pddls/planner.h"
#include "pddls/repo.h"
#include "pddls/syntax.h"

namespace pddls {

namespace fs = std::filesystem;

int exit_code_for(const std::exception& err) {
  if (dynamic_cast<const SyntaxError*>(&err) || dynamic_cast<const SchemaError*>(&err) ||
      dynamic_cast<const IndexError*>(&err)) {
    return kExitParse;
  }
  if (dynamic_cast<const ResolveError*>(&err) || dynamic_cast<const RuleError*>(&err) ||
      dynamic_cast<const ShapeError*>(&err) || dynamic_cast<const ContextError*>(&err) ||
      dynamic_cast<const GroundingError*>(&err) || dynamic_cast<const UnsupportedFeatureError*>(&err)) {
    return kExitResolve;
  }
  // I/O and anything else: the input could not be read.
  return kExitParse;
}

Document load_input(const RunConfig& cfg, const fs::path& path) {
  Document doc = load_document(path.string());
  if (doc.context_ref) {
    if (!cfg.context_dir) {
      throw ContextError(path.string() + ": remote context <" + *doc.context_ref + "> needs --context-dir");
    }
    resolve_context_ref(doc, cfg.context_dir->string());
  }
  return doc;
}

Document load_domain_source(const RunConfig& cfg, const std::string& source) {
  if (fs::exists(source) || !cfg.repo_root) return load_input(cfg, source);
  auto path = repo_path(*cfg.repo_root, source);
  if (!path) throw ResolveError("no domain indexed under <" + source + ">");
  return load_input(cfg, *path);
}

Graph load_graphs(const std::vector<fs::path>& paths) {
  Graph graph;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    TurtleOptions options;
    options.blank_prefix = "f" + std::to_string(i) + "_";
    graph.merge(load_turtle(paths[i].string(), options));
  }
  return graph;
}

ResolvedBundle resolve_inputs(const RunConfig& cfg, const fs::path& problem_path,
                              const std::vector<std::string>& domain_sources, const std::vector<fs::path>& ontology) {
  const Document problem = load_input(cfg, problem_path);
  std::vector<Document> domains;
  for (const std::string& source : domain_sources) domains.push_back(load_domain_source(cfg, source));
  const Graph graph = load_graphs(ontology);

  std::vector<Diagnostic> diagnostics;
  for (const Document& d : domains) {
    auto found = validate_document(d);
    diagnostics.insert(diagnostics.end(), found.begin(), found.end());
  }
  auto found = validate_document(problem);
  diagnostics.insert(diagnostics.end(), found.begin(), found.end());

  ResolvedBundle bundle = resolve(problem, domains, graph, ResolveOptions{cfg.closure_enabled});
  bundle.diagnostics.insert(bundle.diagnostics.begin(), diagnostics.begin(), diagnostics.end());
  return bundle;
}

void write_report(const RunConfig& cfg, const std::vector<Diagnostic>& diagnostics, std::ostream& err) {
  if (cfg.report_path) {
    std::ofstream out(*cfg.report_path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + cfg.report_path->string() + "'");
    write_diagnostics(out, diagnostics);
    return;
  }
  std::vector<Diagnostic> shown;
  for (const Diagnostic& d : diagnostics) {
    if (d.severity != Severity::kInfo) shown.push_back(d);
  }
  write_diagnostics(err, shown);
}

int plan_files(const fs::path& domain_path, const fs::path& problem_path, std::ostream& out, std::ostream& err) {
  const Document domain = load_document(domain_path.string());
  const Document problem = load_document(problem_path.string());
  if (!domain.is_domain()) throw SyntaxError(domain_path.string() + ": expected a domain", {});
  if (!problem.is_problem()) throw SyntaxError(problem_path.string() + ": expected a problem", {});
  const std::vector<GroundAction> actions = ground(domain, problem);
  const std::optional<Plan> plan =
      search(initial_state(domain, problem), goal_formula(domain, problem), actions);
  if (!plan) {
    err << "no plan: reachable state space exhausted\n";
    return kExitNoPlan;
  }
  for (const GroundAction& step : *plan) out << to_string(step) << '\n';
  return kExitOk;
}

namespace {

// Removes a directory tree on scope exit.
struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    for (int attempt = 0;; ++attempt) {
      path = fs::temp_directory_path() / ("pddls-" + std::to_string(rd()));
      if (fs::create_directory(path)) break;
      if (attempt > 16) throw Error("cannot create a temporary directory");
    }
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

}  // namespace

int run_pipeline(const RunConfig& cfg, const fs::path& problem, const std::vector<std::string>& domain_sources,
                 const std::vector<fs::path>& ontology, std::ostream& out, std::ostream& err) {
  try {
    ResolvedBundle bundle = resolve_inputs(cfg, problem, domain_sources, ontology);
    std::optional<TempDir> temp;
    fs::path dir;
    if (cfg.out_dir) {
      dir = *cfg.out_dir;
    } else {
      temp.emplace();
      dir = temp->path;
    }
    const auto [domain_path, problem_path] = emit(bundle, dir);
    write_report(cfg, bundle.diagnostics, err);
    return plan_files(domain_path, problem_path, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace pddls
