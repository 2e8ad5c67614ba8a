#include "pddls/repo.h"

#include <fcntl.h>
#include <unistd.h>

#include <fstream>
#include <sstream>

#include "pddls/error.h"
#include "pddls/strings.h"
#include "pddls/syntax.h"

namespace pddls {

namespace fs = std::filesystem;

namespace {

constexpr const char* kIndexFile = "index.tsv";
constexpr const char* kHeader = "#pddls-index";

[[noreturn]] void corrupt(const fs::path& index, std::size_t line, const std::string& what) {
  throw IndexError(index.string() + ":" + std::to_string(line) + ": " + what +
                   "; restore the file from backup, or delete it and re-add the files under domains/");
}

// Exclusive lock held for the lifetime of the object.
class LockFile {
 public:
  explicit LockFile(fs::path path) : path_(std::move(path)) {
    fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd_ < 0) {
      throw IndexError("repository is locked (" + path_.string() +
                       " exists); remove it if no other pddls process is running");
    }
  }
  ~LockFile() {
    ::close(fd_);
    std::error_code ec;
    fs::remove(path_, ec);
  }
  LockFile(const LockFile&) = delete;
  LockFile& operator=(const LockFile&) = delete;

 private:
  fs::path path_;
  int fd_ = -1;
};

std::string file_stem_for(const std::string& name) {
  std::string out;
  for (char c : to_lower(name)) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    out += keep ? c : '_';
  }
  return out.empty() ? "domain" : out;
}

void write_index(const RepoIndex& index) {
  const fs::path target = index.root / kIndexFile;
  const fs::path temp = index.root / (std::string(kIndexFile) + ".tmp");
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out << kHeader << '\t' << index.version << '\n';
    for (const auto& [iri, path] : index.entries) out << iri << '\t' << path << '\n';
    out.flush();
    if (!out) throw IndexError("cannot write " + temp.string());
  }
  fs::rename(temp, target);
}

}  // namespace

RepoIndex load_index(const fs::path& root) {
  RepoIndex index;
  index.root = root;
  const fs::path path = root / kIndexFile;
  if (!fs::exists(path)) return index;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IndexError("cannot read " + path.string());

  std::string line;
  std::size_t n = 0;
  if (!std::getline(in, line)) corrupt(path, 1, "missing header");
  ++n;
  const auto tab = line.find('\t');
  if (tab == std::string::npos || line.substr(0, tab) != kHeader) corrupt(path, n, "bad header");
  try {
    index.version = std::stoi(line.substr(tab + 1));
  } catch (const std::exception&) {
    corrupt(path, n, "bad format version");
  }
  if (index.version != kRepoFormatVersion) corrupt(path, n, "unsupported format version");

  std::string previous;
  while (std::getline(in, line)) {
    ++n;
    const auto sep = line.find('\t');
    if (sep == std::string::npos || sep == 0 || sep + 1 == line.size() ||
        line.find('\t', sep + 1) != std::string::npos) {
      corrupt(path, n, "expected IRI<TAB>path");
    }
    std::string iri = line.substr(0, sep);
    if (!previous.empty() && iri <= previous) corrupt(path, n, "entries not sorted or duplicated");
    previous = iri;
    index.entries.emplace(std::move(iri), line.substr(sep + 1));
  }
  return index;
}

std::vector<std::string> domain_keys(const Document& domain) {
  std::vector<std::string> keys;
  if (auto iri = domain.context.lookup(domain.name)) keys.push_back(*iri);
  for (const ActionDef& a : domain.actions) {
    if (auto iri = domain.context.lookup(a.name)) keys.push_back(*iri);
  }
  return keys;
}

RepoIndex repo_add(const fs::path& root, const fs::path& file) {
  const Document doc = load_document(file.string());
  if (!doc.is_domain()) throw SyntaxError("'" + file.string() + "' is a problem, expected a domain", {});
  const std::vector<std::string> keys = domain_keys(doc);
  if (keys.empty()) {
    throw ContextError("domain '" + doc.name + "' binds neither its name nor any action to an IRI");
  }

  fs::create_directories(root / "domains");
  LockFile lock(root / "index.lock");
  RepoIndex index = load_index(root);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (index.entries.count(keys[i])) throw DuplicateIriError(keys[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (keys[j] == keys[i]) throw DuplicateIriError(keys[i]);
    }
  }

  const std::string stem = file_stem_for(doc.name);
  fs::path relative = fs::path("domains") / (stem + ".pddls");
  for (int k = 2; fs::exists(root / relative); ++k) {
    relative = fs::path("domains") / (stem + "_" + std::to_string(k) + ".pddls");
  }
  const fs::path temp = root / (relative.string() + ".tmp");
  fs::copy_file(file, temp, fs::copy_options::overwrite_existing);
  fs::rename(temp, root / relative);

  for (const std::string& key : keys) index.entries.emplace(key, relative.generic_string());
  write_index(index);
  return index;
}

std::optional<fs::path> repo_path(const fs::path& root, const std::string& iri) {
  const RepoIndex index = load_index(root);
  auto it = index.entries.find(iri);
  if (it == index.entries.end()) return std::nullopt;
  return root / it->second;
}

std::optional<Document> repo_lookup(const fs::path& root, const std::string& iri) {
  auto path = repo_path(root, iri);
  if (!path) return std::nullopt;
  return load_document(path->string());
}

}  // namespace pddls
