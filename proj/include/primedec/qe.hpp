#pragma once

#include <string>
#include <vector>

#include "primedec/normal.hpp"
#include "primedec/numtheory.hpp"
#include "primedec/syntax.hpp"

namespace primedec {

struct QeOptions {
  std::size_t dnf_cap = 100000;  // max DNF disjuncts / residue branches
  Int lcm_cap = 1000000;         // max residue modulus L
};

// A star-condition instance emitted on an infinite branch; the verdict
// leans on the conjecture exactly through these.
struct DicksonInstance {
  std::vector<Int> coeffs;
  std::vector<std::string> terms;
};

struct QEOutput {
  FormulaPtr formula;
  std::vector<DicksonInstance> dickson_uses;
  std::vector<std::string> finite_witnesses;
};

struct Verdict {
  bool value = false;
  bool conditional_on_dickson = false;
  // true when some primality answer along the way was only probable
  bool used_probable_primality = false;
  std::vector<DicksonInstance> dickson_uses;
  std::vector<std::string> finite_witnesses;
};

// Rewrites a literal in v under the guarded substitution v := t/m
// (caller emits the guard P_m(t)): subscripts multiply by m and the
// argument becomes a*t + m*c for a literal on a*v + c.
NormLit substitute_division(const NormLit& lit, const std::string& v,
                            const LinearTerm& t, const Int& m);

struct ElimResult {
  FormulaPtr formula;
  std::vector<DicksonInstance> dickson_uses;
  std::vector<std::string> finite_witnesses;
};

// Quantifier elimination for one existential over one conjunction of
// classified literals.
ElimResult eliminate_exists(const ClassifiedSystem& sys,
                            const QeOptions& opt = {});

// Innermost-first elimination of every quantifier.
QEOutput qe_formula(const FormulaPtr& f, const QeOptions& opt = {});

// Truth of a sentence in (Z, +, 0, 1, Prime), conditional on Dickson's
// conjecture whenever an infinite branch carried the verdict.
Verdict decide_sentence(const FormulaPtr& f, const QeOptions& opt = {});

}  // namespace primedec
