#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace herm {

// Source position inside a formula string or document.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  enum class Kind { Lexical, Syntax, UnknownConstant, UnboundVariable, TypeMismatch };

  ParseError(Kind kind, Span span, const std::string& message);

  Kind kind() const { return kind_; }
  const Span& span() const { return span_; }

 private:
  Kind kind_;
  Span span_;
};

const char* to_string(ParseError::Kind kind);

class TypeError : public Error {
 public:
  using Error::Error;
};

class SignatureError : public Error {
 public:
  using Error::Error;
};

class EmbeddingError : public Error {
 public:
  using Error::Error;
};

// Raised when a query mixes incompatible inputs (different logics, gaps in a
// formalization map, ...). Budget exhaustion is never an exception.
class QueryError : public Error {
 public:
  using Error::Error;
};

}  // namespace herm
