#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "primedec/eval.hpp"
#include "primedec/normal.hpp"
#include "primedec/syntax.hpp"

using namespace primedec;

namespace {

// Independent reference evaluator: own term recursion, own primality by
// trial division (test inputs stay small).
bool ref_prime(const Int& z) {
  Int n = z < 0 ? Int(-z) : z;
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Int ref_term(const TermPtr& t, const Assignment& env) {
  using TK = TermNode::Kind;
  switch (t->kind) {
    case TK::Var:
      return env.at(t->name);
    case TK::IntLit:
      return t->value;
    case TK::Sum:
      return ref_term(t->lhs, env) + ref_term(t->rhs, env);
    case TK::Diff:
      return ref_term(t->lhs, env) - ref_term(t->rhs, env);
    case TK::Scale:
      return t->value * ref_term(t->lhs, env);
    case TK::Neg:
      return -ref_term(t->lhs, env);
  }
  return 0;
}

bool ref_eval(const FormulaPtr& f, const Assignment& env) {
  using FK = FormulaNode::Kind;
  switch (f->kind) {
    case FK::True:
      return true;
    case FK::False:
      return false;
    case FK::Eq:
      return ref_term(f->t1, env) == ref_term(f->t2, env);
    case FK::Divides: {
      Int v = ref_term(f->t1, env);
      Int r = v % f->n;
      return r == 0;
    }
    case FK::Prime:
      return ref_prime(ref_term(f->t1, env));
    case FK::PrimeN: {
      Int v = ref_term(f->t1, env);
      if (v % f->n != 0) return false;
      return ref_prime(v / f->n);
    }
    case FK::Not:
      return !ref_eval(f->f1, env);
    case FK::And:
      return ref_eval(f->f1, env) && ref_eval(f->f2, env);
    case FK::Or:
      return ref_eval(f->f1, env) || ref_eval(f->f2, env);
    case FK::Implies:
      return !ref_eval(f->f1, env) || ref_eval(f->f2, env);
    case FK::Iff:
      return ref_eval(f->f1, env) == ref_eval(f->f2, env);
    default:
      throw std::logic_error("quantifier");
  }
}

FormulaPtr random_qf(std::mt19937& rng, int depth) {
  auto term = [&]() {
    TermPtr t = t_int(Int(static_cast<long>(rng() % 21)) - 10);
    if (rng() % 2)
      t = t_sum(t, t_scale(Int(static_cast<long>(rng() % 9)) - 4,
                           t_var("x")));
    if (rng() % 3 == 0)
      t = t_diff(t, t_scale(Int(static_cast<long>(rng() % 9)) - 4,
                            t_var("y")));
    if (rng() % 4 == 0) t = t_neg(t);
    return t;
  };
  if (depth <= 0) {
    switch (rng() % 4) {
      case 0:
        return f_eq(term(), term());
      case 1:
        return f_divides(Int(static_cast<long>(2 + rng() % 6)), term());
      case 2:
        return f_prime_n(Int(static_cast<long>(2 + rng() % 6)), term());
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

TEST_CASE("eval_ground on the defining examples") {
  CHECK(eval_ground(f_prime(t_int(-7)), {}));
  CHECK(eval_ground(f_prime_n(2, t_int(6)), {}));       // 2 | 6 and 3 prime
  CHECK_FALSE(eval_ground(f_prime_n(2, t_int(7)), {}));  // 2 does not divide 7
  CHECK_FALSE(eval_ground(f_prime(t_int(1)), {}));
  CHECK(eval_ground(f_prime_n(3, t_int(-21)), {}));     // -21/3 = -7
  CHECK_FALSE(eval_ground(f_prime_n(2, t_int(8)), {})); // 8/2 = 4 composite
}

TEST_CASE("eval_ground handles connectives and environments") {
  FormulaPtr f = parse_formula("P[2](x) -> prime(x + 1)");
  CHECK(eval_ground(f, {{"x", 4}}));         // 5 prime
  CHECK_FALSE(eval_ground(f, {{"x", 8}}));   // 9 composite
  CHECK(eval_ground(f, {{"x", 3}}));         // antecedent false

  CHECK_THROWS_AS(eval_ground(parse_formula("exists x. prime(x)"), {}),
                  std::logic_error);
  CHECK_THROWS_AS(eval_ground(parse_formula("prime(x)"), {}),
                  std::logic_error);
}

TEST_CASE("eval_ground agrees with an independent evaluator") {
  std::mt19937 rng(4242);
  int checked = 0;
  while (checked < 10000) {
    FormulaPtr f = random_qf(rng, 2);
    for (int j = 0; j < 5; ++j, ++checked) {
      Assignment env{{"x", Int(static_cast<long>(rng() % 201)) - 100},
                     {"y", Int(static_cast<long>(rng() % 201)) - 100}};
      if (eval_ground(f, env) != ref_eval(f, env)) {
        CAPTURE(print_formula(f));
        CAPTURE(env.at("x").get_str());
        CAPTURE(env.at("y").get_str());
        REQUIRE(false);
      }
    }
  }
  CHECK(true);
}

TEST_CASE("prime symmetry at the formula level") {
  std::mt19937 rng(11);
  for (int i = 0; i < 500; ++i) {
    TermPtr t = t_sum(t_scale(Int(static_cast<long>(rng() % 9)) - 4,
                              t_var("x")),
                      t_int(Int(static_cast<long>(rng() % 41)) - 20));
    Assignment env{{"x", Int(static_cast<long>(rng() % 81)) - 40}};
    CHECK(eval_ground(f_prime(t), env) ==
          eval_ground(f_prime(t_neg(t)), env));
  }
}

TEST_CASE("witness_search examples") {
  FormulaPtr twin = parse_formula("prime(v) & prime(v+2)");
  auto w1 = witness_search("v", twin, 100);
  REQUIRE(w1.has_value());
  CHECK(*w1 == 3);

  FormulaPtr consec = parse_formula("prime(v) & prime(v+1) & v != 2");
  auto w2 = witness_search("v", consec, 100);
  REQUIRE(w2.has_value());
  CHECK(*w2 == -3);

  FormulaPtr scaled = parse_formula("prime(2*v+1) & P[3](v)");
  auto w3 = witness_search("v", scaled, 100);
  REQUIRE(w3.has_value());
  CHECK(*w3 == 3);
}

TEST_CASE("witness_search returns none exactly when the scan is empty") {
  std::vector<std::string> formulas = {
      "prime(v) & prime(v+2) & P[9](v)",
      "prime(2*v) & v != 1 & v != -1",
      "P[4](v) & P[2](v+1)",
      "prime(v) & prime(v+4) & prime(v+8)",
      "prime(v) & P[6](v+3) & v != 3 & v != -3",
  };
  for (const auto& text : formulas) {
    FormulaPtr f = parse_formula(text);
    auto got = witness_search("v", f, 1000);
    std::optional<Int> expect;
    for (long m = 0; m <= 1000 && !expect; ++m) {
      if (eval_ground(f, {{"v", Int(m)}})) {
        expect = Int(m);
        break;
      }
      if (m > 0 && eval_ground(f, {{"v", Int(-m)}})) expect = Int(-m);
    }
    CAPTURE(text);
    CHECK(got == expect);
  }
}

TEST_CASE("witness_search works on non-conjunctive shapes") {
  FormulaPtr f = parse_formula("prime(v) | prime(v+1)");
  auto w = witness_search("v", f, 100);
  REQUIRE(w.has_value());
  CHECK(*w == 1);  // v+1 = 2 prime; |0| fails both, 1 before -1

  FormulaPtr g = parse_formula("P[5](v) -> prime(v+30)");
  auto wg = witness_search("v", g, 100);
  REQUIRE(wg.has_value());
  CHECK(*wg == 1);  // antecedent false at 1... 0 has P5(0) and prime(30)=f
}

TEST_CASE("witness search respects the bound") {
  FormulaPtr f = parse_formula("v = 50 | v = -50");
  CHECK(witness_search("v", f, 49) == std::nullopt);
  auto w = witness_search("v", f, 50);
  REQUIRE(w.has_value());
  CHECK(*w == 50);  // positive before negative on equal magnitude
}
