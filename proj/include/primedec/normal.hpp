#pragma once

#include <map>
#include <string>
#include <vector>

#include "primedec/numtheory.hpp"
#include "primedec/syntax.hpp"

namespace primedec {

// Sum of coefficient*variable plus a constant; the normal form of every
// term.  Zero coefficients are never stored.
struct LinearTerm {
  std::map<std::string, Int> coeffs;
  Int constant{0};

  static LinearTerm from_const(Int c);
  static LinearTerm from_var(const std::string& v);

  bool is_constant() const { return coeffs.empty(); }
  bool mentions(const std::string& v) const { return coeffs.count(v) != 0; }
  Int coeff(const std::string& v) const;
  LinearTerm without(const std::string& v) const;
  LinearTerm negated() const;
  LinearTerm plus(const LinearTerm& o) const;
  LinearTerm minus(const LinearTerm& o) const;
  LinearTerm scaled(const Int& k) const;
  LinearTerm shifted(const Int& c) const;

  Int eval(const std::map<std::string, Int>& env) const;

  bool operator==(const LinearTerm& o) const = default;
};

LinearTerm linearize_term(const TermPtr& t);
TermPtr linear_to_term(const LinearTerm& t);

// A literal over linearized atoms.  Eq means t = 0, Div means P_n(t),
// Prime means Prime(t), PrimeN means Prime_n(t); neg negates.
struct NormLit {
  enum class Kind { Eq, Div, Prime, PrimeN };
  bool neg = false;
  Kind kind = Kind::Eq;
  Int n{0};  // Div / PrimeN modulus
  LinearTerm t;

  bool operator==(const NormLit& o) const = default;
};

FormulaPtr lit_to_formula(const NormLit& lit);

using Cube = std::vector<NormLit>;

// Negation normal form followed by distribution into a disjunction of
// literal conjunctions.  Ground atoms fold; duplicate literals within a
// cube merge; cubes with complementary literals drop.  Throws
// ResourceLimitError when the cube count exceeds the cap.
std::vector<Cube> to_dnf(const FormulaPtr& f, std::size_t cap = 100000);

// Literals of one cube bucketed by their relation to a target variable,
// with the sign convention that every coefficient of the variable is
// positive (Prime, P_n and equality are symmetric under negating the
// whole argument).
struct ClassifiedSystem {
  struct Equality {
    Int m;         // >= 1
    LinearTerm t;  // m*var = t, t free of var
  };
  struct Congruence {
    bool neg;
    Int n;  // >= 2
    Int m;  // >= 1
    LinearTerm t;  // [!]P_n(m*var + t)
  };
  struct PrimeLit {
    bool neg;
    Int n;  // >= 1; 1 encodes the plain Prime predicate
    Int m;  // >= 1
    LinearTerm t;  // [!]Prime_n(m*var + t)
  };

  std::string var;
  std::vector<Equality> equalities;
  std::vector<Equality> disequalities;
  std::vector<Congruence> congruences;
  std::vector<PrimeLit> prime_literals;
  std::vector<NormLit> parameter_literals;
};

ClassifiedSystem classify(const Cube& cube, const std::string& v);

}  // namespace primedec
