#ifndef PDDLS_SRC_RDF_LEXER_H_
#define PDDLS_SRC_RDF_LEXER_H_

#include <string>
#include <string_view>
#include <utility>

#include "pddls/error.h"
#include "pddls/rdf.h"

namespace pddls::detail {

// Character-level scanner shared by the Turtle and SPARQL readers.
class RdfLexer {
 public:
  explicit RdfLexer(std::string_view text) : text_(text) {}

  bool at_end() const { return offset_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return offset_ + ahead < text_.size() ? text_[offset_ + ahead] : '\0';
  }
  void advance(std::size_t n = 1);
  SourcePosition position() const { return pos_; }

  [[noreturn]] void fail(const std::string& message) const { throw SyntaxError(message, pos_); }
  [[noreturn]] void fail_at(const std::string& message, SourcePosition at) const {
    throw SyntaxError(message, at);
  }

  // Whitespace and `#` comments.
  void skip_ws();
  bool consume(char c);
  void expect(char c, const char* context);

  // Case-insensitive keyword that is not followed by a name character.
  bool at_keyword(std::string_view keyword) const;
  bool consume_keyword(std::string_view keyword);

  // `<...>`; the opening bracket must be current.
  std::string read_iriref();
  bool at_pname() const;
  // Prefix and (unescaped) local part of a prefixed name.
  std::pair<std::string, std::string> read_pname();
  // Any of the four quoted forms; the quote must be current.
  std::string read_string();
  // After '@'.
  std::string read_langtag();
  bool at_number() const;
  Term read_number();
  // [A-Za-z0-9_-]+ (variable names, blank labels).
  std::string read_label();

  static bool is_name_char(char c);

 private:
  std::string_view text_;
  std::size_t offset_ = 0;
  SourcePosition pos_;
};

}  // namespace pddls::detail

#endif  // PDDLS_SRC_RDF_LEXER_H_
