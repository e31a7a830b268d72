#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>

#include "doctest.h"
#include "primedec/errors.hpp"
#include "primedec/numtheory.hpp"

using namespace primedec;

namespace {

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("signed primality on small integers") {
  CHECK(is_prime_signed(7));
  CHECK(is_prime_signed(-7));
  CHECK_FALSE(is_prime_signed(0));
  CHECK_FALSE(is_prime_signed(1));
  CHECK_FALSE(is_prime_signed(-1));
  CHECK(is_prime_signed(2));
  CHECK(is_prime_signed(-2));
  CHECK_FALSE(is_prime_signed(9));
}

TEST_CASE("primality is deterministic below the documented bound") {
  CHECK(deterministic_primality_bound() > Int("18446744073709551616"));
  PrimalityResult r = is_prime_signed_ex(Int("18446744073709551557"), 1);
  CHECK(r.is_prime);  // largest prime below 2^64
  CHECK(r.proven);

  // 2^89 - 1 is prime and lies beyond the proven range
  Int big = (Int(1) << 89) - 1;
  PrimalityResult rb = is_prime_signed_ex(big, 10);
  CHECK(rb.is_prime);
  CHECK_FALSE(rb.proven);
}

TEST_CASE("primality agrees with trial division up to 10^6") {
  for (std::uint64_t n = 0; n <= 1000000; ++n) {
    bool expect = trial_division_prime(n);
    if (is_prime_signed(Int(static_cast<unsigned long>(n))) != expect) {
      CAPTURE(n);
      REQUIRE(false);
    }
  }
  CHECK(true);
}

TEST_CASE("prime symmetry under negation") {
  for (long z = -100000; z <= 100000; ++z)
    if (is_prime_signed(Int(z)) != is_prime_signed(Int(-z))) {
      CAPTURE(z);
      REQUIRE(false);
    }
  CHECK(true);
}

TEST_CASE("primes_below") {
  CHECK(primes_below(3) == std::vector<Int>{2});
  CHECK(primes_below(2).empty());
  CHECK(primes_below(0).empty());
  CHECK(primes_below(12) == std::vector<Int>{2, 3, 5, 7, 11});
}

TEST_CASE("solve_linear_congruence examples") {
  auto c1 = solve_linear_congruence(1, -5, 6);
  REQUIRE(c1.has_value());
  CHECK(c1->residue == 5);
  CHECK(c1->modulus == 6);

  CHECK_FALSE(solve_linear_congruence(2, -1, 4).has_value());

  auto c3 = solve_linear_congruence(2, -2, 4);
  REQUIRE(c3.has_value());
  CHECK(c3->residue == 1);
  CHECK(c3->modulus == 2);
}

TEST_CASE("solve_linear_congruence agrees with enumeration") {
  for (long m = -20; m <= 20; ++m) {
    for (long c = -20; c <= 20; ++c) {
      for (long n = 1; n <= 30; ++n) {
        auto cls = solve_linear_congruence(Int(m), Int(c), Int(n));
        for (long x = 0; x < n; ++x) {
          bool solves = mod_floor(Int(m) * x + c, Int(n)) == 0;
          bool in_class = cls && cls->contains(Int(x));
          if (solves != in_class) {
            CAPTURE(m);
            CAPTURE(c);
            CAPTURE(n);
            CAPTURE(x);
            REQUIRE(false);
          }
        }
      }
    }
  }
  CHECK(true);
}

TEST_CASE("crt_merge examples") {
  auto m1 = crt_merge({CongruenceClass(1, 2), CongruenceClass(2, 3)});
  REQUIRE(m1.has_value());
  CHECK(m1->residue == 5);
  CHECK(m1->modulus == 6);

  CHECK_FALSE(crt_merge({CongruenceClass(1, 2), CongruenceClass(0, 4)})
                  .has_value());

  auto m3 = crt_merge({});
  REQUIRE(m3.has_value());
  CHECK(m3->residue == 0);
  CHECK(m3->modulus == 1);
}

TEST_CASE("crt_merge members lie in every input class") {
  std::vector<std::vector<CongruenceClass>> inputs = {
      {CongruenceClass(1, 2), CongruenceClass(2, 3), CongruenceClass(3, 5)},
      {CongruenceClass(0, 4), CongruenceClass(2, 6)},
      {CongruenceClass(7, 9), CongruenceClass(4, 12)},
      {CongruenceClass(5, 7)},
      {CongruenceClass(2, 3), CongruenceClass(2, 9)},
  };
  for (const auto& classes : inputs) {
    auto merged = crt_merge(classes);
    if (!merged) continue;
    for (int i = 0; i < 100; ++i) {
      Int member = merged->residue + merged->modulus * i;
      for (const auto& c : classes) CHECK(c.contains(member));
    }
  }
}

TEST_CASE("congruence class normalization") {
  CongruenceClass c(-1, 5);
  CHECK(c.residue == 4);
  CHECK_THROWS_AS(CongruenceClass(0, 0), std::invalid_argument);
  CHECK(CongruenceClass::all().contains(Int("-123456789123456789")));
}

TEST_CASE("mod_floor is a floored remainder") {
  CHECK(mod_floor(-7, 3) == 2);
  CHECK(mod_floor(7, 3) == 1);
  CHECK(mod_floor(-6, 3) == 0);
}

TEST_CASE("factorial and gcd helpers") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(6) == 720);
  CHECK(gcd(12, 18) == 6);
  CHECK(lcm(4, 6) == 12);
  CHECK(gcd(0, 5) == 5);
}
