#include "primedec/numtheory.hpp"

#include <array>
#include <atomic>
#include <cstdint>
#include <stdexcept>

#include "primedec/errors.hpp"

namespace primedec {

Int mod_floor(const Int& a, const Int& n) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  return r;
}

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Int factorial(const Int& n) {
  if (n < 0) throw std::invalid_argument("factorial of negative integer");
  if (!n.fits_ulong_p())
    throw ResourceLimitError("factorial argument too large");
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n.get_ui());
  return r;
}

Int abs_int(const Int& a) {
  Int r;
  mpz_abs(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

CongruenceClass::CongruenceClass(Int r, Int m) : modulus(std::move(m)) {
  if (modulus < 1)
    throw std::invalid_argument("congruence class modulus must be >= 1");
  residue = mod_floor(r, modulus);
}

bool CongruenceClass::contains(const Int& x) const {
  return mod_floor(x, modulus) == residue;
}

namespace {

constexpr std::array<std::uint64_t, 12> kWitnesses = {2,  3,  5,  7,  11, 13,
                                                      17, 19, 23, 29, 31, 37};

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp,
                         std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return r;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : kWitnesses) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kWitnesses) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// One Miller-Rabin round; true means "no evidence of compositeness".
bool mr_round(const Int& n, const Int& a, const Int& d, unsigned long s) {
  Int x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  Int nm1 = n - 1;
  if (x == 1 || x == nm1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == nm1) return true;
  }
  return false;
}

std::atomic<int> g_mr_rounds{40};

thread_local long g_probable_count = 0;

}  // namespace

long probable_primality_count() { return g_probable_count; }

const Int& deterministic_primality_bound() {
  // Sorenson-Webster bound for the first twelve prime witnesses.
  static const Int bound("3317044064679887385961981");
  return bound;
}

int default_mr_rounds() { return g_mr_rounds.load(); }

void set_default_mr_rounds(int rounds) {
  if (rounds < 1) throw std::invalid_argument("mr rounds must be >= 1");
  g_mr_rounds.store(rounds);
}

PrimalityResult is_prime_signed_ex(const Int& z, int mr_rounds) {
  Int n = abs_int(z);
  if (n < 2) return {false, true};
  if (n.fits_ulong_p() && sizeof(unsigned long) == 8)
    return {is_prime_u64(n.get_ui()), true};

  for (std::uint64_t p : kWitnesses) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p))
      return {n == p, true};
  }

  Int d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  for (std::uint64_t a : kWitnesses) {
    if (!mr_round(n, Int(static_cast<unsigned long>(a)), d, s))
      return {false, true};
  }
  if (n < deterministic_primality_bound()) return {true, true};

  // Beyond the proven range: extra random rounds, reproducible seed.
  struct SeededRng {
    gmp_randclass rng{gmp_randinit_mt};
    SeededRng() { rng.seed(0x9e3779b97f4a7c15UL); }
  };
  static thread_local SeededRng seeded;
  for (int i = 0; i < mr_rounds; ++i) {
    Int a = seeded.rng.get_z_range(n - 3) + 2;
    if (!mr_round(n, a, d, s)) return {false, true};
  }
  ++g_probable_count;
  return {true, false};
}

bool is_prime_signed(const Int& z) {
  return is_prime_signed_ex(z, default_mr_rounds()).is_prime;
}

std::vector<Int> primes_below(const Int& n) {
  if (n < 0) throw std::invalid_argument("primes_below requires n >= 0");
  std::vector<Int> out;
  if (n <= 2) return out;
  if (!n.fits_ulong_p() || n > 100000000)
    throw ResourceLimitError("primes_below bound too large for a sieve");
  std::uint64_t limit = n.get_ui();  // primes strictly below limit
  std::vector<bool> composite(limit, false);
  for (std::uint64_t p = 2; p < limit; ++p) {
    if (composite[p]) continue;
    out.emplace_back(static_cast<unsigned long>(p));
    for (std::uint64_t q = p * p; q < limit; q += p) composite[q] = true;
  }
  return out;
}

std::optional<CongruenceClass> solve_linear_congruence(const Int& m,
                                                       const Int& c,
                                                       const Int& n) {
  if (n < 1) throw std::invalid_argument("modulus must be >= 1");
  Int mm = mod_floor(m, n);
  Int rhs = mod_floor(-c, n);
  Int g = gcd(mm, n);  // gcd(0, n) == n
  if (mod_floor(rhs, g) != 0) return std::nullopt;
  Int n2 = n / g;
  if (n2 == 1) return CongruenceClass::all();
  Int m2 = mm / g;
  Int r2 = rhs / g;
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), m2.get_mpz_t(), n2.get_mpz_t()) == 0)
    return std::nullopt;  // unreachable: m2 and n2 are coprime
  return CongruenceClass(r2 * inv, n2);
}

std::optional<CongruenceClass> crt_merge2(const CongruenceClass& a,
                                          const CongruenceClass& b) {
  Int g = gcd(a.modulus, b.modulus);
  Int diff = b.residue - a.residue;
  if (mod_floor(diff, g) != 0) return std::nullopt;
  Int m2 = b.modulus / g;
  if (m2 == 1) return a;  // b's constraint is implied by a's
  // x = a.r + a.m * t with a.m * t == diff (mod b.m)
  Int inv;
  mpz_invert(inv.get_mpz_t(), mod_floor(a.modulus / g, m2).get_mpz_t(),
             m2.get_mpz_t());
  Int t = mod_floor(diff / g * inv, m2);
  return CongruenceClass(a.residue + a.modulus * t,
                         lcm(a.modulus, b.modulus));
}

std::optional<CongruenceClass> crt_merge(
    const std::vector<CongruenceClass>& classes) {
  CongruenceClass acc = CongruenceClass::all();
  for (const auto& c : classes) {
    auto merged = crt_merge2(acc, c);
    if (!merged) return std::nullopt;
    acc = *merged;
  }
  return acc;
}

}  // namespace primedec
