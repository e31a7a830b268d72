#pragma once

#include <string>
#include <vector>

// Shared regression corpus used across the suites: the printer must
// reparse every entry, quantifier elimination must strip every entry
// down to a quantifier-free formula, and decide must flip under
// negation on the sentences.

namespace primedec_test {

inline const std::vector<std::string>& corpus_sentences() {
  static const std::vector<std::string> sentences = {
      "exists x. prime(x) & prime(x+2)",
      "exists x. prime(x) & prime(x+2) & !(x=3) & !(x=5) & !(x=11)",
      "forall y. P[2](y) -> exists x. prime(x) & prime(x+y)",
      "exists x. prime(2*x) & x != 1 & x != -1",
      "forall x. prime(x)",
      "exists x. prime(x) & prime(x+1)",
      "exists x. prime(x) & prime(x+1) & x != 2 & x != -3",
      "forall x. prime(x) -> prime(-x)",
      "forall x. prime(3*x) -> P[3](x)",
      "exists x. prime[2](x) & P[3](x)",
      "exists x. prime[4](2*x)",
      "exists x. prime[6](x) & P[4](x) & x != 12 & x != -12",
      "forall x. prime[2](2*x) <-> prime(x)",
      "exists x. !prime(x) & !prime(x+1) & !prime(x+2)",
      "forall y. exists x. P[3](x + y)",
      "exists y. forall x. P[2](x+y) -> P[2](x)",
      "forall x. P[2](x) | P[2](x+1)",
      "exists x. P[4](x) & P[2](x+1)",
      "forall x. exists y. 2*y = x | 2*y = x + 1",
      "exists y. forall x. x + y = x",
      "forall y. exists x. prime(x+y) & prime(x+y+2)",
      "forall y. (exists x. prime(x+y) & !prime(x+2)) <-> y != 2",
      "exists x. 2*x = 6 & x = 3",
      "forall x. forall y. x + y = y + x",
      "exists x. prime(x) & 100000 != x & prime(x + 100)",
  };
  return sentences;
}

inline const std::vector<std::string>& corpus_open_formulas() {
  static const std::vector<std::string> open = {
      "exists x. prime(x) & prime(x+y)",
      "exists x. prime(x) & prime(x+y) & prime(x+z)",
      "exists x. 2*x = y & prime(x)",
      "exists x. P[3](x + y) & prime(x)",
      "forall x. prime(x+y) -> x != z",
      "exists x. prime[2](x + y) & x != y",
      "P[2](y) -> exists x. prime(x) & prime(x+y)",
      "exists x. !prime(x + y) & P[5](x)",
  };
  return open;
}

}  // namespace primedec_test
