#include "rdf_lexer.h"

#include <cctype>

#include "pddls/strings.h"
#include "pddls/vocab.h"

namespace pddls::detail {

namespace {

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) || static_cast<unsigned char>(c) >= 0x80; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace

bool RdfLexer::is_name_char(char c) { return is_alpha(c) || is_digit(c) || c == '_' || c == '-'; }

void RdfLexer::advance(std::size_t n) {
  for (std::size_t i = 0; i < n && offset_ < text_.size(); ++i) {
    if (text_[offset_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++offset_;
  }
}

void RdfLexer::skip_ws() {
  while (!at_end()) {
    char c = peek();
    if (c == '#') {
      while (!at_end() && peek() != '\n') advance();
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
    } else {
      break;
    }
  }
}

bool RdfLexer::consume(char c) {
  if (peek() != c || at_end()) return false;
  advance();
  return true;
}

void RdfLexer::expect(char c, const char* context) {
  if (!consume(c)) {
    fail(std::string("expected '") + c + "' " + context +
         (at_end() ? ", found end of input" : std::string(", found '") + peek() + "'"));
  }
}

bool RdfLexer::at_keyword(std::string_view keyword) const {
  if (offset_ + keyword.size() > text_.size()) return false;
  if (!iequals(text_.substr(offset_, keyword.size()), keyword)) return false;
  char next = peek(keyword.size());
  return !(is_name_char(next) || next == ':');
}

bool RdfLexer::consume_keyword(std::string_view keyword) {
  if (!at_keyword(keyword)) return false;
  advance(keyword.size());
  return true;
}

std::string RdfLexer::read_iriref() {
  SourcePosition start = pos_;
  expect('<', "to open an IRI");
  std::string out;
  for (;;) {
    if (at_end()) fail_at("unterminated IRI", start);
    char c = peek();
    if (c == '>') {
      advance();
      return out;
    }
    if (c == '\n' || c == ' ' || c == '<' || c == '"') fail("invalid character in IRI");
    if (c == '\\') {
      advance();
      char kind = peek();
      std::size_t digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
      if (digits == 0) fail("invalid escape in IRI");
      advance();
      std::string hex;
      for (std::size_t i = 0; i < digits; ++i) {
        if (!std::isxdigit(static_cast<unsigned char>(peek()))) fail("invalid \\u escape");
        hex.push_back(peek());
        advance();
      }
      append_utf8(out, std::stoul(hex, nullptr, 16));
      continue;
    }
    out.push_back(c);
    advance();
  }
}

bool RdfLexer::at_pname() const {
  char c = peek();
  if (c == ':') return true;
  if (!is_alpha(c)) return false;
  std::size_t i = 0;
  while (offset_ + i < text_.size()) {
    char d = text_[offset_ + i];
    if (d == ':') return true;
    if (!(is_name_char(d) || d == '.')) return false;
    ++i;
  }
  return false;
}

std::pair<std::string, std::string> RdfLexer::read_pname() {
  std::string prefix;
  while (!at_end() && peek() != ':') {
    char c = peek();
    if (!(is_name_char(c) || c == '.')) fail("invalid character in prefixed name");
    prefix.push_back(c);
    advance();
  }
  if (!prefix.empty() && prefix.back() == '.') fail("prefix may not end with '.'");
  expect(':', "in prefixed name");
  std::string local;
  for (;;) {
    char c = peek();
    if (at_end()) break;
    if (is_name_char(c) || c == ':') {
      local.push_back(c);
      advance();
    } else if (c == '.' && (is_name_char(peek(1)) || peek(1) == ':' || peek(1) == '.')) {
      // A '.' belongs to the name only when more name characters follow.
      std::size_t k = 1;
      while (peek(k) == '.') ++k;
      if (!(is_name_char(peek(k)) || peek(k) == ':')) break;
      local.push_back(c);
      advance();
    } else if (c == '%' && std::isxdigit(static_cast<unsigned char>(peek(1))) &&
               std::isxdigit(static_cast<unsigned char>(peek(2)))) {
      local.append({c, peek(1), peek(2)});
      advance(3);
    } else if (c == '\\' && peek(1) != '\0' && std::string_view("_~.-!$&'()*+,;=/?#@%").find(peek(1)) != std::string_view::npos) {
      local.push_back(peek(1));
      advance(2);
    } else {
      break;
    }
  }
  return {prefix, local};
}

std::string RdfLexer::read_string() {
  SourcePosition start = pos_;
  const char quote = peek();
  const bool long_form = peek(1) == quote && peek(2) == quote;
  advance(long_form ? 3 : 1);
  std::string out;
  for (;;) {
    if (at_end()) fail_at("unterminated string literal", start);
    char c = peek();
    if (long_form) {
      if (c == quote && peek(1) == quote && peek(2) == quote) {
        // Up to two extra quotes may end the content of a long string.
        while (peek(3) == quote) {
          out.push_back(quote);
          advance();
        }
        advance(3);
        return out;
      }
    } else {
      if (c == quote) {
        advance();
        return out;
      }
      if (c == '\n' || c == '\r') fail("newline in short string literal");
    }
    if (c == '\\') {
      advance();
      char e = peek();
      switch (e) {
        case 't': out.push_back('\t'); break;
        case 'b': out.push_back('\b'); break;
        case 'n': out.push_back('\n'); break;
        case 'r': out.push_back('\r'); break;
        case 'f': out.push_back('\f'); break;
        case '"': out.push_back('"'); break;
        case '\'': out.push_back('\''); break;
        case '\\': out.push_back('\\'); break;
        case 'u':
        case 'U': {
          std::size_t digits = e == 'u' ? 4 : 8;
          std::string hex;
          for (std::size_t i = 0; i < digits; ++i) {
            advance();
            if (!std::isxdigit(static_cast<unsigned char>(peek()))) fail("invalid unicode escape");
            hex.push_back(peek());
          }
          append_utf8(out, std::stoul(hex, nullptr, 16));
          break;
        }
        default:
          fail(std::string("invalid escape '\\") + e + "'");
      }
      advance();
      continue;
    }
    out.push_back(c);
    advance();
  }
}

std::string RdfLexer::read_langtag() {
  std::string tag;
  while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) {
    tag.push_back(peek());
    advance();
  }
  if (tag.empty() || !std::isalpha(static_cast<unsigned char>(tag.front()))) fail("invalid language tag");
  return to_lower(tag);
}

bool RdfLexer::at_number() const {
  std::size_t i = 0;
  if (peek() == '+' || peek() == '-') ++i;
  if (is_digit(peek(i))) return true;
  return peek(i) == '.' && is_digit(peek(i + 1));
}

Term RdfLexer::read_number() {
  std::string lex;
  if (peek() == '+' || peek() == '-') {
    lex.push_back(peek());
    advance();
  }
  bool dot = false;
  bool exponent = false;
  while (is_digit(peek())) {
    lex.push_back(peek());
    advance();
  }
  if (peek() == '.' && is_digit(peek(1))) {
    dot = true;
    lex.push_back('.');
    advance();
    while (is_digit(peek())) {
      lex.push_back(peek());
      advance();
    }
  }
  if ((peek() == 'e' || peek() == 'E') &&
      (is_digit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && is_digit(peek(2))))) {
    exponent = true;
    lex.push_back(peek());
    advance();
    if (peek() == '+' || peek() == '-') {
      lex.push_back(peek());
      advance();
    }
    while (is_digit(peek())) {
      lex.push_back(peek());
      advance();
    }
  }
  std::string_view dt = exponent ? vocab::kXsdDouble : dot ? vocab::kXsdDecimal : vocab::kXsdInteger;
  return Term::literal(std::move(lex), std::string(dt));
}

std::string RdfLexer::read_label() {
  std::string out;
  while (!at_end() && is_name_char(peek())) {
    out.push_back(peek());
    advance();
  }
  return out;
}

}  // namespace pddls::detail
