#pragma once

#include <stdexcept>
#include <string>

namespace rdfview {

// Syntax-level failure (N-Triples, TriG, or query text). Carries the
// 1-based line/column of the offending token when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line = 0, std::size_t col = 0)
      : std::runtime_error(format(msg, line, col)), line_(line), col_(col) {}
  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

 private:
  static std::string format(const std::string& msg, std::size_t line, std::size_t col) {
    if (line == 0) return msg;
    std::string s = "line " + std::to_string(line);
    if (col != 0) s += ":" + std::to_string(col);
    return s + ": " + msg;
  }
  std::size_t line_;
  std::size_t col_;
};

// Semantic failure while building a query dataset or evaluating a query
// (unresolvable FROM target, view cycle at evaluation time, ...).
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cooperative cancellation: the evaluator crossed its deadline.
class EvalTimeout : public std::runtime_error {
 public:
  EvalTimeout() : std::runtime_error("evaluation deadline exceeded") {}
};

// View registry failure (duplicate name, name collision with a loaded
// graph, non-stratified recursion, malformed definition document).
class ViewError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Repository storage failure (missing directory, malformed config, ...).
class RepoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rdfview
