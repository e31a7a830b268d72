#include "primedec/dickson.hpp"

#include <algorithm>
#include <stdexcept>

namespace primedec {

DicksonSystem::DicksonSystem(std::vector<AffineMap> primes,
                             std::vector<AffineMap> comps)
    : prime_maps(std::move(primes)), composite_maps(std::move(comps)) {
  for (const auto& f : prime_maps) {
    if (f.a < 1) throw std::invalid_argument("map coefficient must be >= 1");
    for (const auto& g : composite_maps)
      if (f == g)
        throw std::invalid_argument(
            "a map may not be required to be both prime and composite");
  }
  for (const auto& g : composite_maps)
    if (g.a < 1) throw std::invalid_argument("map coefficient must be >= 1");
}

Int bound_N(const std::vector<AffineMap>& maps) {
  if (maps.empty()) throw std::invalid_argument("bound_N of empty map list");
  Int m = Int(static_cast<unsigned long>(maps.size()));
  for (const auto& f : maps) m = std::max(m, f.a);
  return m + 1;
}

namespace {

std::vector<AffineMap> dedup(const std::vector<AffineMap>& maps) {
  std::vector<AffineMap> out;
  for (const auto& f : maps)
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  return out;
}

}  // namespace

StarVerdict star_check(const std::vector<AffineMap>& maps) {
  if (maps.empty())
    throw std::invalid_argument("star_check of empty map list");
  for (const auto& f : maps)
    if (f.a < 1) throw std::invalid_argument("map coefficient must be >= 1");
  std::vector<AffineMap> ms = dedup(maps);
  for (const Int& p : primes_below(bound_N(ms))) {
    bool found_residue = false;
    for (Int s = 0; s < p; ++s) {
      bool all_nonzero = true;
      for (const auto& f : ms) {
        if (mod_floor(f.a * s + f.b, p) == 0) {
          all_nonzero = false;
          break;
        }
      }
      if (all_nonzero) {
        found_residue = true;
        break;
      }
    }
    if (!found_residue) return {false, p};
  }
  return {true, std::nullopt};
}

FormulaPtr star_formula(const std::vector<Int>& coeffs,
                        const std::vector<LinearTerm>& terms) {
  if (coeffs.empty() || coeffs.size() != terms.size())
    throw std::invalid_argument(
        "star_formula requires matching nonempty coefficient/term lists");
  Int n = Int(static_cast<unsigned long>(coeffs.size()));
  for (const Int& a : coeffs) {
    if (a < 1) throw std::invalid_argument("coefficients must be >= 1");
    n = std::max(n, a);
  }
  n += 1;

  FormulaPtr conj;
  for (const Int& p : primes_below(n)) {
    FormulaPtr disj;
    for (Int r = 0; r < p; ++r) {
      FormulaPtr inner;
      for (std::size_t i = 0; i < coeffs.size(); ++i) {
        FormulaPtr atom = f_not(f_divides(
            p, linear_to_term(terms[i].shifted(coeffs[i] * r))));
        inner = inner ? f_and(inner, atom) : atom;
      }
      disj = disj ? f_or(disj, inner) : inner;
    }
    conj = conj ? f_and(conj, disj) : disj;
  }
  return conj ? conj : f_true();
}

ShiftResult shift_nonnegative(const std::vector<AffineMap>& maps) {
  if (maps.empty())
    throw std::invalid_argument("shift_nonnegative of empty map list");
  Int K = factorial(bound_N(maps));
  Int l = 0;
  for (const auto& f : maps) {
    if (l * K + f.b > 0) continue;
    // least l with l*K + b > 0, i.e. l > -b/K
    Int need = (-f.b) / K + 1;
    l = std::max(l, need);
  }
  ShiftResult out;
  out.l = l;
  out.K = K;
  for (const auto& f : maps)
    out.shifted.push_back({f.a, f.a * l * K + f.b});
  return out;
}

std::vector<FiniteCandidate> finite_candidates(
    const std::vector<Int>& coeffs, const std::vector<LinearTerm>& terms,
    bool maps_ground) {
  if (coeffs.empty() || coeffs.size() != terms.size())
    throw std::invalid_argument(
        "finite_candidates requires matching nonempty lists");
  Int n = Int(static_cast<unsigned long>(coeffs.size()));
  for (const Int& a : coeffs) {
    if (a < 1) throw std::invalid_argument("coefficients must be >= 1");
    n = std::max(n, a);
  }
  n += 1;

  std::vector<FiniteCandidate> out;
  for (const Int& p : primes_below(n)) {
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      for (int sign : {+1, -1}) {
        if (maps_ground && terms[i].is_constant()) {
          Int rhs = Int(sign) * p - terms[i].constant;
          if (mod_floor(rhs, coeffs[i]) != 0) continue;
        }
        out.push_back({p, i, sign});
      }
    }
  }
  return out;
}

}  // namespace primedec
