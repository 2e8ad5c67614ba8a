#ifndef PDDLS_SEXPR_H_
#define PDDLS_SEXPR_H_

#include <string>
#include <string_view>
#include <vector>

#include "pddls/error.h"

namespace pddls {

// Generic s-expression node produced by the PDDL reader. Positions are kept
// for error reporting only and do not take part in equality.
struct SExpr {
  enum class Kind { kAtom, kList };

  Kind kind = Kind::kAtom;
  std::string text;
  std::vector<SExpr> items;
  SourcePosition position;

  bool is_atom() const { return kind == Kind::kAtom; }
  bool is_list() const { return kind == Kind::kList; }
  // True for an atom whose text equals `s` case-insensitively.
  bool is_keyword(std::string_view s) const;

  static SExpr atom(std::string text, SourcePosition position = {});
  static SExpr list(std::vector<SExpr> items, SourcePosition position = {});

  friend bool operator==(const SExpr& a, const SExpr& b);
};

// Reads every top-level s-expression in `text`. `;` starts a comment that runs
// to end of line.
std::vector<SExpr> read_sexprs(std::string_view text);

// Single-line rendering, e.g. "(a (b c))".
std::string to_string(const SExpr& expr);

}  // namespace pddls

#endif  // PDDLS_SEXPR_H_
