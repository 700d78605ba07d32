#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crnkit {

// Text input that does not conform to its grammar. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A rate parameter needed a numeric value and none was bound.
class UnboundParameter : public std::runtime_error {
 public:
  explicit UnboundParameter(const std::string& name)
      : std::runtime_error("unbound rate parameter '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

}  // namespace crnkit
