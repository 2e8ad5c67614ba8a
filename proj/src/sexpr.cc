#include "pddls/sexpr.h"

#include <cctype>

#include "pddls/strings.h"

namespace pddls {

bool SExpr::is_keyword(std::string_view s) const { return is_atom() && iequals(text, s); }

SExpr SExpr::atom(std::string text, SourcePosition position) {
  SExpr e;
  e.kind = Kind::kAtom;
  e.text = std::move(text);
  e.position = position;
  return e;
}

SExpr SExpr::list(std::vector<SExpr> items, SourcePosition position) {
  SExpr e;
  e.kind = Kind::kList;
  e.items = std::move(items);
  e.position = position;
  return e;
}

bool operator==(const SExpr& a, const SExpr& b) {
  return a.kind == b.kind && a.text == b.text && a.items == b.items;
}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip_blank();
    while (!at_end()) {
      out.push_back(read_one());
      skip_blank();
    }
    return out;
  }

 private:
  bool at_end() const { return offset_ >= text_.size(); }
  char peek() const { return text_[offset_]; }

  void advance() {
    if (text_[offset_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++offset_;
  }

  void skip_blank() {
    while (!at_end()) {
      char c = peek();
      if (c == ';') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read_one() {
    SourcePosition start = pos_;
    char c = peek();
    if (c == ')') throw SyntaxError("unbalanced ')'", start);
    if (c != '(') {
      std::string token;
      while (!at_end()) {
        char d = peek();
        if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d))) break;
        token.push_back(d);
        advance();
      }
      return SExpr::atom(std::move(token), start);
    }
    advance();
    std::vector<SExpr> items;
    for (;;) {
      skip_blank();
      if (at_end()) throw SyntaxError("unbalanced '(': missing ')'", start);
      if (peek() == ')') {
        advance();
        break;
      }
      items.push_back(read_one());
    }
    return SExpr::list(std::move(items), start);
  }

  std::string_view text_;
  std::size_t offset_ = 0;
  SourcePosition pos_;
};

void render(const SExpr& e, std::string& out) {
  if (e.is_atom()) {
    out += e.text;
    return;
  }
  out.push_back('(');
  for (std::size_t i = 0; i < e.items.size(); ++i) {
    if (i > 0) out.push_back(' ');
    render(e.items[i], out);
  }
  out.push_back(')');
}

}  // namespace

std::vector<SExpr> read_sexprs(std::string_view text) { return Reader(text).read_all(); }

std::string to_string(const SExpr& expr) {
  std::string out;
  render(expr, out);
  return out;
}

}  // namespace pddls
