#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>

#include "doctest.h"
#include "primedec/errors.hpp"
#include "primedec/eval.hpp"
#include "primedec/normal.hpp"

using namespace primedec;

namespace {

bool lit_holds(const NormLit& lit, const Assignment& env) {
  Int val = lit.t.eval(env);
  bool b = false;
  switch (lit.kind) {
    case NormLit::Kind::Eq:
      b = val == 0;
      break;
    case NormLit::Kind::Div:
      b = mod_floor(val, lit.n) == 0;
      break;
    case NormLit::Kind::Prime:
      b = is_prime_signed(val);
      break;
    case NormLit::Kind::PrimeN:
      b = mod_floor(val, lit.n) == 0 && is_prime_signed(val / lit.n);
      break;
  }
  return lit.neg ? !b : b;
}

bool dnf_holds(const std::vector<Cube>& dnf, const Assignment& env) {
  for (const auto& cube : dnf) {
    bool all = true;
    for (const auto& lit : cube) {
      if (!lit_holds(lit, env)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("linearize_term") {
  // (x+x+1) - y
  LinearTerm t1 = linearize_term(
      t_diff(t_sum(t_sum(t_var("x"), t_var("x")), t_int(1)), t_var("y")));
  CHECK(t1.coeff("x") == 2);
  CHECK(t1.coeff("y") == -1);
  CHECK(t1.constant == 1);

  // 3*(x-2)
  LinearTerm t2 = linearize_term(t_scale(3, t_diff(t_var("x"), t_int(2))));
  CHECK(t2.coeff("x") == 3);
  CHECK(t2.constant == -6);

  // 0*x + 5: zero coefficients are dropped
  LinearTerm t3 =
      linearize_term(t_sum(t_scale(0, t_var("x")), t_int(5)));
  CHECK(t3.is_constant());
  CHECK(t3.constant == 5);
}

TEST_CASE("linearize after print-back is the identity") {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    LinearTerm t;
    if (rng() % 2) t.coeffs["x"] = Int(static_cast<long>(rng() % 11)) - 5;
    if (rng() % 2) t.coeffs["y"] = Int(static_cast<long>(rng() % 11)) - 5;
    t.constant = Int(static_cast<long>(rng() % 21)) - 10;
    std::erase_if(t.coeffs, [](const auto& kv) { return kv.second == 0; });
    CHECK(linearize_term(linear_to_term(t)) == t);
  }
}

TEST_CASE("to_dnf distributes") {
  // (A|B) & C
  FormulaPtr a = f_prime(t_var("x"));
  FormulaPtr b = f_prime(t_var("y"));
  FormulaPtr c = f_divides(2, t_var("x"));
  auto d1 = to_dnf(f_and(f_or(a, b), c));
  REQUIRE(d1.size() == 2);
  CHECK(d1[0].size() == 2);
  CHECK(d1[1].size() == 2);

  // !(A & B) -> [!A], [!B]
  auto d2 = to_dnf(f_not(f_and(a, b)));
  REQUIRE(d2.size() == 2);
  REQUIRE(d2[0].size() == 1);
  CHECK(d2[0][0].neg);
  CHECK(d2[1][0].neg);

  // A <-> B -> [A & B], [!A & !B]
  auto d3 = to_dnf(f_iff(a, b));
  REQUIRE(d3.size() == 2);
  CHECK_FALSE(d3[0][0].neg);
  CHECK_FALSE(d3[0][1].neg);
  CHECK(d3[1][0].neg);
  CHECK(d3[1][1].neg);
}

TEST_CASE("to_dnf folds ground literals and merges duplicates") {
  FormulaPtr a = f_prime(t_var("x"));
  // prime(3) is ground-true and disappears
  auto d = to_dnf(f_and(a, f_prime(t_int(3))));
  REQUIRE(d.size() == 1);
  CHECK(d[0].size() == 1);

  // contradictory cube drops
  auto d2 = to_dnf(f_and(a, f_not(a)));
  CHECK(d2.empty());

  // duplicate literal merges
  auto d3 = to_dnf(f_and(a, a));
  REQUIRE(d3.size() == 1);
  CHECK(d3[0].size() == 1);
}

TEST_CASE("to_dnf cap") {
  // (a0|b0) & (a1|b1) & ... blows up to 2^n cubes
  FormulaPtr f = f_true();
  for (int i = 0; i < 18; ++i) {
    std::string v = "v" + std::to_string(i);
    f = f_and(f, f_or(f_prime(t_var(v)), f_divides(2, t_var(v))));
  }
  CHECK_THROWS_AS(to_dnf(f, 1000), ResourceLimitError);
}

TEST_CASE("to_dnf rejects quantifiers") {
  CHECK_THROWS_AS(to_dnf(f_exists("x", f_prime(t_var("x")))),
                  std::logic_error);
}

TEST_CASE("classify buckets and sign normalization") {
  // Prime(-x+5) lands as a positive-coefficient literal on x-5
  Cube cube1 = to_dnf(f_prime(t_diff(t_neg(t_var("x")), t_int(-5))))[0];
  ClassifiedSystem s1 = classify(cube1, "x");
  REQUIRE(s1.prime_literals.size() == 1);
  CHECK(s1.prime_literals[0].m == 1);
  CHECK(s1.prime_literals[0].n == 1);
  CHECK(s1.prime_literals[0].t.is_constant());
  CHECK(s1.prime_literals[0].t.constant == -5);

  // 2x+1 = x+y  =>  1*x = y-1
  Cube cube2 = to_dnf(f_eq(t_sum(t_scale(2, t_var("x")), t_int(1)),
                           t_sum(t_var("x"), t_var("y"))))[0];
  ClassifiedSystem s2 = classify(cube2, "x");
  REQUIRE(s2.equalities.size() == 1);
  CHECK(s2.equalities[0].m == 1);
  CHECK(s2.equalities[0].t.coeff("y") == 1);
  CHECK(s2.equalities[0].t.constant == -1);

  // P[4](2x+6) => congruence (n=4, m=2, t=6)
  Cube cube3 = to_dnf(f_divides(
      4, t_sum(t_scale(2, t_var("x")), t_int(6))))[0];
  ClassifiedSystem s3 = classify(cube3, "x");
  REQUIRE(s3.congruences.size() == 1);
  CHECK(s3.congruences[0].n == 4);
  CHECK(s3.congruences[0].m == 2);
  CHECK(s3.congruences[0].t.constant == 6);
  CHECK_FALSE(s3.congruences[0].neg);
}

TEST_CASE("classify routes var-free literals to parameters") {
  FormulaPtr f = f_and(f_prime(t_sum(t_scale(0, t_var("x")), t_var("y"))),
                       f_prime(t_var("x")));
  Cube cube = to_dnf(f)[0];
  ClassifiedSystem s = classify(cube, "x");
  CHECK(s.prime_literals.size() == 1);
  CHECK(s.parameter_literals.size() == 1);
}

TEST_CASE("classify covers every literal exactly once") {
  FormulaPtr f = parse_formula(
      "prime(3*x+1) & !prime(-x+4) & P[6](2*x) & !P[5](x+y) & x != 7 & "
      "2*x = y & prime[3](x - 1) & prime(y)");
  Cube cube = to_dnf(f)[0];
  ClassifiedSystem s = classify(cube, "x");
  std::size_t total = s.equalities.size() + s.disequalities.size() +
                      s.congruences.size() + s.prime_literals.size() +
                      s.parameter_literals.size();
  CHECK(total == cube.size());
  CHECK(s.equalities.size() == 1);
  CHECK(s.disequalities.size() == 1);
  CHECK(s.congruences.size() == 2);
  CHECK(s.prime_literals.size() == 3);
  CHECK(s.parameter_literals.size() == 1);
  for (const auto& p : s.prime_literals) CHECK(p.m >= 1);
  for (const auto& c : s.congruences) CHECK(c.m >= 1);
  // the t parts never mention the target variable
  for (const auto& e : s.equalities) CHECK_FALSE(e.t.mentions("x"));
  for (const auto& c : s.congruences) CHECK_FALSE(c.t.mentions("x"));
  for (const auto& p : s.prime_literals) CHECK_FALSE(p.t.mentions("x"));
}

namespace {

FormulaPtr random_qf(std::mt19937& rng, int depth) {
  auto term = [&]() {
    TermPtr t = t_int(Int(static_cast<long>(rng() % 11)) - 5);
    if (rng() % 2)
      t = t_sum(t, t_scale(Int(static_cast<long>(rng() % 11)) - 5,
                           t_var("x")));
    if (rng() % 2)
      t = t_sum(t, t_scale(Int(static_cast<long>(rng() % 11)) - 5,
                           t_var("y")));
    return t;
  };
  if (depth <= 0) {
    switch (rng() % 4) {
      case 0:
        return f_eq(term(), term());
      case 1:
        return f_divides(Int(static_cast<long>(2 + rng() % 5)), term());
      case 2:
        return f_prime_n(Int(static_cast<long>(2 + rng() % 5)), term());
      default:
        return f_prime(term());
    }
  }
  switch (rng() % 5) {
    case 0:
      return f_not(random_qf(rng, depth - 1));
    case 1:
      return f_and(random_qf(rng, depth - 1), random_qf(rng, depth - 1));
    case 2:
      return f_or(random_qf(rng, depth - 1), random_qf(rng, depth - 1));
    case 3:
      return f_implies(random_qf(rng, depth - 1), random_qf(rng, depth - 1));
    default:
      return f_iff(random_qf(rng, depth - 1), random_qf(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("DNF preserves semantics on a full assignment grid") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    FormulaPtr f = random_qf(rng, 3);
    std::vector<Cube> dnf = to_dnf(f);
    for (long x = -50; x <= 50; x += 7) {
      for (long y = -50; y <= 50; y += 7) {
        Assignment env{{"x", Int(x)}, {"y", Int(y)}};
        if (eval_ground(f, env) != dnf_holds(dnf, env)) {
          CAPTURE(print_formula(f));
          CAPTURE(x);
          CAPTURE(y);
          REQUIRE(false);
        }
      }
    }
  }
  CHECK(true);
}

TEST_CASE("DNF preserves semantics on dense small grid") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 8; ++trial) {
    FormulaPtr f = random_qf(rng, 2);
    std::vector<Cube> dnf = to_dnf(f);
    for (long x = -50; x <= 50; ++x) {
      for (long y = -50; y <= 50; ++y) {
        Assignment env{{"x", Int(x)}, {"y", Int(y)}};
        if (eval_ground(f, env) != dnf_holds(dnf, env)) {
          CAPTURE(print_formula(f));
          REQUIRE(false);
        }
      }
    }
  }
  CHECK(true);
}

TEST_CASE("classification preserves satisfaction on sampled assignments") {
  std::mt19937 rng(555);
  for (int trial = 0; trial < 60; ++trial) {
    FormulaPtr f = random_qf(rng, 2);
    std::vector<Cube> dnf = to_dnf(f);
    for (const auto& cube : dnf) {
      ClassifiedSystem sys = classify(cube, "x");
      for (long x = -20; x <= 20; x += 3) {
        for (long y = -20; y <= 20; y += 5) {
          Assignment env{{"x", Int(x)}, {"y", Int(y)}};
          bool direct = true;
          for (const auto& lit : cube)
            if (!lit_holds(lit, env)) {
              direct = false;
              break;
            }
          // re-expand the classified system and evaluate
          bool reexp = true;
          auto check_lit = [&](const NormLit& lit) {
            if (!lit_holds(lit, env)) reexp = false;
          };
          for (const auto& e : sys.equalities)
            check_lit(NormLit{false, NormLit::Kind::Eq, 0,
                              LinearTerm::from_var("x").scaled(e.m).minus(
                                  e.t)});
          for (const auto& e : sys.disequalities)
            check_lit(NormLit{true, NormLit::Kind::Eq, 0,
                              LinearTerm::from_var("x").scaled(e.m).minus(
                                  e.t)});
          for (const auto& c : sys.congruences)
            check_lit(NormLit{c.neg, NormLit::Kind::Div, c.n,
                              LinearTerm::from_var("x").scaled(c.m).plus(
                                  c.t)});
          for (const auto& p : sys.prime_literals)
            check_lit(NormLit{
                p.neg,
                p.n == 1 ? NormLit::Kind::Prime : NormLit::Kind::PrimeN,
                p.n == 1 ? Int(0) : p.n,
                LinearTerm::from_var("x").scaled(p.m).plus(p.t)});
          for (const auto& lit : sys.parameter_literals) check_lit(lit);
          if (direct != reexp) {
            CAPTURE(print_formula(f));
            REQUIRE(false);
          }
        }
      }
    }
  }
  CHECK(true);
}

TEST_CASE("sign-flipped prime literals agree everywhere") {
  for (long a = -6; a <= 6; ++a) {
    if (a == 0) continue;
    for (long b = -10; b <= 10; ++b) {
      for (long x = -20; x <= 20; ++x) {
        Int direct = Int(a) * x + b;
        Int flipped = Int(-a) * x - b;
        CHECK(is_prime_signed(direct) == is_prime_signed(flipped));
      }
    }
  }
}
