#pragma once

#include <map>
#include <optional>
#include <string>

#include "primedec/numtheory.hpp"
#include "primedec/syntax.hpp"

namespace primedec {

using Assignment = std::map<std::string, Int>;

Int eval_term(const TermPtr& t, const Assignment& env);

// Truth in (Z, +, 0, 1, Prime) of a quantifier-free formula under env;
// env must cover every free variable.
bool eval_ground(const FormulaPtr& f, const Assignment& env);

// Least-|x| solution of the formula in v within |x| <= bound, positive
// before negative on ties; steps through the class cut out by the
// positive congruence literals when the formula is a conjunction.
std::optional<Int> witness_search(const std::string& v, const FormulaPtr& conj,
                                  const Int& bound);

}  // namespace primedec
