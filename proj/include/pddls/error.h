#ifndef PDDLS_ERROR_H_
#define PDDLS_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pddls {

// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

struct SourcePosition {
  std::size_t line = 1;
  std::size_t column = 1;
};

// Parse failure in any of the text formats (PDDLS, Turtle, SPARQL).
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, SourcePosition position)
      : Error(std::to_string(position.line) + ":" + std::to_string(position.column) + ": " +
              message),
        position_(position),
        detail_(message) {}

  const SourcePosition& position() const { return position_; }
  const std::string& detail() const { return detail_; }

 private:
  SourcePosition position_;
  std::string detail_;
};

class UnknownPrefixError : public SyntaxError {
 public:
  UnknownPrefixError(const std::string& prefix, SourcePosition position)
      : SyntaxError("unknown prefix '" + prefix + ":'", position), prefix_(prefix) {}

  const std::string& prefix() const { return prefix_; }

 private:
  std::string prefix_;
};

class UnsupportedFeatureError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  SchemaError(const std::string& key, const std::string& message)
      : Error("'" + key + "': " + message), key_(key) {}

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class ContextError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class RuleError : public Error {
 public:
  using Error::Error;
};

class ResolveError : public Error {
 public:
  using Error::Error;
};

class GroundingError : public Error {
 public:
  using Error::Error;
};

class DuplicateIriError : public Error {
 public:
  explicit DuplicateIriError(const std::string& iri)
      : Error("IRI already indexed: " + iri), iri_(iri) {}

  const std::string& iri() const { return iri_; }

 private:
  std::string iri_;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

}  // namespace pddls

#endif  // PDDLS_ERROR_H_
