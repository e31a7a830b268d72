#include "primedec/errors.hpp"

#include <sstream>

namespace primedec {

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string ParseError::format(int line, int column,
                               const std::vector<std::string>& expected,
                               const std::string& found) {
  std::ostringstream os;
  os << "parse error at " << line << ":" << column;
  if (!expected.empty()) os << ": expected " << join(expected, ", ");
  if (!found.empty()) os << ", found " << found;
  return os.str();
}

NotASentenceError::NotASentenceError(std::vector<std::string> vars)
    : std::runtime_error("formula is not a sentence; free variables: " +
                         join(vars, ", ")),
      vars_(std::move(vars)) {}

StarFailureError::StarFailureError(const std::string& witness_prime)
    : std::runtime_error("star condition fails: prime " + witness_prime +
                         " divides every value of the map product"),
      witness_(witness_prime) {}

}  // namespace primedec
