#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace primedec {

// Syntax error with source position and the token set the parser would
// have accepted at that point.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::vector<std::string> expected,
             const std::string& found)
      : std::runtime_error(format(line, column, expected, found)),
        line_(line),
        column_(column),
        expected_(std::move(expected)),
        found_(found) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  static std::string format(int line, int column,
                            const std::vector<std::string>& expected,
                            const std::string& found);

  int line_;
  int column_;
  std::vector<std::string> expected_;
  std::string found_;
};

// A configured cap (DNF disjunct count, residue modulus, search budget)
// was exceeded.  Maps to exit code 3 in the CLI.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// decide was asked to judge a formula with free variables.
class NotASentenceError : public std::runtime_error {
 public:
  explicit NotASentenceError(std::vector<std::string> vars);
  const std::vector<std::string>& free_variables() const { return vars_; }

 private:
  std::vector<std::string> vars_;
};

// A search precondition (the star condition of the prime maps) failed;
// carries the obstructing prime as a decimal string.
class StarFailureError : public std::runtime_error {
 public:
  explicit StarFailureError(const std::string& witness_prime);
  const std::string& witness_prime() const { return witness_; }

 private:
  std::string witness_;
};

}  // namespace primedec
