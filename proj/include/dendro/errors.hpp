#pragma once

#include <stdexcept>
#include <string>

namespace dendro {

/// Raised for malformed inputs and violated preconditions (a point outside the
/// tree, an empty point set, an atom where an atom-free measure is required).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the text parsers. Carries the 1-based line and the offending token.
class ParseError : public InputError {
 public:
  ParseError(std::string source, std::size_t line, std::string token, const std::string& what)
      : InputError(source + ":" + std::to_string(line) + ": " + what + " (token '" + token + "')"),
        source_(std::move(source)),
        line_(line),
        token_(std::move(token)) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  const std::string& token() const { return token_; }

 private:
  std::string source_;
  std::size_t line_;
  std::string token_;
};

}  // namespace dendro
