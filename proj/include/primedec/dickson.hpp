#pragma once

#include <optional>
#include <vector>

#include "primedec/normal.hpp"
#include "primedec/numtheory.hpp"
#include "primedec/syntax.hpp"

namespace primedec {

// f(x) = a*x + b with a >= 1.
struct AffineMap {
  Int a;
  Int b;

  bool operator==(const AffineMap& o) const = default;
};

// Maps required to take prime values together with maps required to
// take composite values; no map may appear on both sides.
struct DicksonSystem {
  std::vector<AffineMap> prime_maps;
  std::vector<AffineMap> composite_maps;

  DicksonSystem(std::vector<AffineMap> primes, std::vector<AffineMap> comps);
};

struct StarVerdict {
  bool holds = true;
  std::optional<Int> witness_prime;  // least obstructing prime when !holds
};

// N = max(max a_i, k) + 1: only primes below N can obstruct the star
// condition.
Int bound_N(const std::vector<AffineMap>& maps);

// Checks, for every prime p < N, that some residue s in [0, p) keeps
// every a_i*s + b_i off 0 mod p.
StarVerdict star_check(const std::vector<AffineMap>& maps);

// The star condition as a quantifier-free formula in the parameter
// terms: conjunction over primes p < N of a disjunction over residues
// r < p of the pointwise non-divisibility constraints.
FormulaPtr star_formula(const std::vector<Int>& coeffs,
                        const std::vector<LinearTerm>& terms);

struct ShiftResult {
  std::vector<AffineMap> shifted;
  Int l;
  Int K;
};

// Translates constants to positive values without changing the star
// verdict: K = N!, l least with l*K + b_i > 0, b_i' = a_i*l*K + b_i.
ShiftResult shift_nonnegative(const std::vector<AffineMap>& maps);

// One candidate equation m_i*x + c_i = sign*p of the finite branch.
struct FiniteCandidate {
  Int p;
  std::size_t index;
  int sign;  // +1 or -1
};

// The full (p, i, sign) grid over primes p < N.  With ground terms,
// candidates whose equation has no integer solution are dropped.
std::vector<FiniteCandidate> finite_candidates(
    const std::vector<Int>& coeffs, const std::vector<LinearTerm>& terms,
    bool maps_ground);

}  // namespace primedec
