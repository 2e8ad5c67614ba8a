#ifndef PDDLS_PIPELINE_H_
#define PDDLS_PIPELINE_H_

#include <exception>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pddls/ast.h"
#include "pddls/rdf.h"
#include "pddls/resolver.h"

namespace pddls {

enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 1,    // unreadable or malformed input
  kExitResolve = 2,  // resolution, rule or grounding failure
  kExitNoPlan = 3,
};

struct RunConfig {
  std::optional<std::filesystem::path> context_dir;  // remote `(:context <URI>)` files
  bool closure_enabled = true;
  std::optional<std::filesystem::path> report_path;  // diagnostics file
  std::optional<std::filesystem::path> out_dir;      // emitted PDDL; a temporary directory when unset
  std::optional<std::filesystem::path> repo_root;    // for domain sources given as IRIs
};

// Exit code for an exception escaping any stage.
int exit_code_for(const std::exception& err);

// Parses a PDDLS document and resolves a remote context reference through
// `cfg.context_dir`.
Document load_input(const RunConfig& cfg, const std::filesystem::path& path);

// A domain source is a file path, or an IRI looked up in `cfg.repo_root`.
Document load_domain_source(const RunConfig& cfg, const std::string& source);

// Union of Turtle files; blank nodes are kept apart per file.
Graph load_graphs(const std::vector<std::filesystem::path>& paths);

// Reads the inputs and resolves them. Validation diagnostics of the inputs
// come first in the bundle's diagnostics.
ResolvedBundle resolve_inputs(const RunConfig& cfg, const std::filesystem::path& problem,
                              const std::vector<std::string>& domain_sources,
                              const std::vector<std::filesystem::path>& ontology);

// Plans over plain PDDL files, printing one step per line to `out`.
int plan_files(const std::filesystem::path& domain, const std::filesystem::path& problem, std::ostream& out,
               std::ostream& err);

// parse -> resolve -> emit -> plan. The plan goes to `out`; diagnostics go
// to the report file when configured, else errors and warnings go to `err`.
int run_pipeline(const RunConfig& cfg, const std::filesystem::path& problem,
                 const std::vector<std::string>& domain_sources, const std::vector<std::filesystem::path>& ontology,
                 std::ostream& out, std::ostream& err);

void write_report(const RunConfig& cfg, const std::vector<Diagnostic>& diagnostics, std::ostream& err);

}  // namespace pddls

#endif  // PDDLS_PIPELINE_H_
