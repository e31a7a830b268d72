#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace primedec {

// Exact signed integer of arbitrary magnitude.
using Int = mpz_class;

// Remainder in [0, n) for n >= 1, for operands of either sign.
Int mod_floor(const Int& a, const Int& n);
Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int factorial(const Int& n);
Int abs_int(const Int& a);

// Residue class r mod m with 0 <= r < m, m >= 1.  Modulus 1 is the
// class of all integers.
struct CongruenceClass {
  Int residue;
  Int modulus;

  CongruenceClass(Int r, Int m);
  static CongruenceClass all() { return CongruenceClass(0, 1); }

  bool contains(const Int& x) const;
  bool operator==(const CongruenceClass& o) const = default;
};

struct PrimalityResult {
  bool is_prime = false;
  // True when the verdict comes from the fixed deterministic witness
  // set; false when only the probabilistic rounds vouch for it.
  bool proven = true;
};

// Largest magnitude (exclusive) for which the fixed Miller-Rabin witness
// set {2,3,...,37} is a proof of primality.  Well above 2^64.
const Int& deterministic_primality_bound();

int default_mr_rounds();
void set_default_mr_rounds(int rounds);

// Prime predicate on signed integers: true iff |z| is prime.
PrimalityResult is_prime_signed_ex(const Int& z, int mr_rounds);
bool is_prime_signed(const Int& z);

// Number of "probably prime" answers given on this thread so far;
// verdict traces compare snapshots to flag probable results.
long probable_primality_count();

// All primes p with p < n, ascending.
std::vector<Int> primes_below(const Int& n);

// The solution set of m*x + c == 0 (mod n), n >= 1, as a class modulo
// n/gcd(m,n), or nullopt when there is none.
std::optional<CongruenceClass> solve_linear_congruence(const Int& m,
                                                       const Int& c,
                                                       const Int& n);

// Intersection of residue classes as a single class modulo the lcm of
// the moduli; nullopt when empty.  No classes at all is the class of
// all integers.
std::optional<CongruenceClass> crt_merge(
    const std::vector<CongruenceClass>& classes);
std::optional<CongruenceClass> crt_merge2(const CongruenceClass& a,
                                          const CongruenceClass& b);

}  // namespace primedec
