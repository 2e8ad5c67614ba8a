#ifndef PDDLS_REPO_H_
#define PDDLS_REPO_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pddls/ast.h"

namespace pddls {

inline constexpr int kRepoFormatVersion = 1;

// Skill repository on disk:
//   <root>/index.tsv    "#pddls-index<TAB>1" header, then IRI<TAB>path lines sorted by IRI
//   <root>/domains/     copies of the added domain files
struct RepoIndex {
  std::filesystem::path root;
  int version = kRepoFormatVersion;
  std::map<std::string, std::string> entries;  // IRI -> path relative to root
};

// Reads <root>/index.tsv; a missing index is an empty repository.
// Throws IndexError on a malformed index.
RepoIndex load_index(const std::filesystem::path& root);

// IRIs a domain is indexed under: the IRI bound to the domain name, then the
// IRI bound to each action name.
std::vector<std::string> domain_keys(const Document& domain);

// Copies `file` into the repository and indexes it. Throws SyntaxError for
// files that do not parse or are problems, ContextError when the domain binds
// neither its name nor any action, DuplicateIriError when a key is already
// indexed, IndexError when another writer holds the lock.
RepoIndex repo_add(const std::filesystem::path& root, const std::filesystem::path& file);

std::optional<Document> repo_lookup(const std::filesystem::path& root, const std::string& iri);

// Path of the stored file for `iri`, if indexed.
std::optional<std::filesystem::path> repo_path(const std::filesystem::path& root, const std::string& iri);

}  // namespace pddls

#endif  // PDDLS_REPO_H_
