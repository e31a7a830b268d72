#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "primedec/numtheory.hpp"

namespace primedec {

// Terms of the language {+, -, 0, 1, Prime, Prime_n, P_n}: linear
// expressions built from variables and integer literals.  Scaling is
// literal-by-term only; there is no multiplication of variables.
struct TermNode;
using TermPtr = std::shared_ptr<const TermNode>;

struct TermNode {
  enum class Kind { Var, IntLit, Sum, Diff, Scale, Neg };
  Kind kind;
  std::string name;  // Var
  Int value;         // IntLit payload, Scale factor
  TermPtr lhs, rhs;  // Sum/Diff use both, Scale/Neg use lhs
};

TermPtr t_var(std::string name);
TermPtr t_int(Int value);
TermPtr t_sum(TermPtr a, TermPtr b);
TermPtr t_diff(TermPtr a, TermPtr b);
TermPtr t_scale(Int k, TermPtr t);
TermPtr t_neg(TermPtr t);

struct FormulaNode;
using FormulaPtr = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  enum class Kind {
    True,
    False,
    Eq,       // t1 = t2
    Divides,  // P_n(t1), n >= 2
    Prime,    // Prime(t1)
    PrimeN,   // Prime_n(t1), n >= 2
    Not,
    And,
    Or,
    Implies,
    Iff,
    Exists,
    Forall
  };
  Kind kind;
  Int n;             // Divides/PrimeN modulus
  TermPtr t1, t2;    // atom payload
  FormulaPtr f1, f2; // connective children (Not/quantifiers use f1)
  std::string var;   // quantifier binder
};

FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_eq(TermPtr a, TermPtr b);
FormulaPtr f_divides(Int n, TermPtr t);
FormulaPtr f_prime(TermPtr t);
FormulaPtr f_prime_n(Int n, TermPtr t);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b);
FormulaPtr f_exists(std::string var, FormulaPtr f);
FormulaPtr f_forall(std::string var, FormulaPtr f);

// Folding constructors used when assembling derived formulas: they
// collapse constant operands (and double negation) instead of building
// the node.
FormulaPtr mk_not(FormulaPtr f);
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_and(const std::vector<FormulaPtr>& fs);
FormulaPtr mk_or(const std::vector<FormulaPtr>& fs);

bool term_equal(const TermPtr& a, const TermPtr& b);
bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);

bool is_atom(const FormulaNode::Kind k);
bool has_quantifier(const FormulaPtr& f);

std::set<std::string> free_vars(const FormulaPtr& f);

// Parses the concrete grammar (see README).  Bound variables are
// renamed apart from each other and from free variables.  Throws
// ParseError with position and expected-token information.
FormulaPtr parse_formula(const std::string& text);
TermPtr parse_term(const std::string& text);

std::string print_term(const TermPtr& t);
std::string print_formula(const FormulaPtr& f);

// Best-effort cleanup used behind the CLI --simplify flag: flattening,
// duplicate removal and Boolean absorption.
FormulaPtr simplify_absorb(const FormulaPtr& f);

}  // namespace primedec
