#include "primedec/eval.hpp"

#include <stdexcept>
#include <vector>

#include "primedec/normal.hpp"

namespace primedec {

using FK = FormulaNode::Kind;
using TK = TermNode::Kind;

Int eval_term(const TermPtr& t, const Assignment& env) {
  switch (t->kind) {
    case TK::Var: {
      auto it = env.find(t->name);
      if (it == env.end())
        throw std::logic_error("unbound variable in evaluation: " + t->name);
      return it->second;
    }
    case TK::IntLit:
      return t->value;
    case TK::Sum:
    case TK::Diff: {
      // walk long sum chains instead of recursing through them
      std::vector<const TermNode*> spine;
      const TermNode* cur = t.get();
      while (cur->kind == TK::Sum || cur->kind == TK::Diff) {
        spine.push_back(cur);
        cur = cur->lhs.get();
      }
      Int acc = eval_term(spine.back()->lhs, env);
      for (auto it = spine.rbegin(); it != spine.rend(); ++it) {
        Int rhs = eval_term((*it)->rhs, env);
        if ((*it)->kind == TK::Sum)
          acc += rhs;
        else
          acc -= rhs;
      }
      return acc;
    }
    case TK::Scale:
      return t->value * eval_term(t->lhs, env);
    case TK::Neg:
      return -eval_term(t->lhs, env);
  }
  throw std::logic_error("unreachable term kind");
}

bool eval_ground(const FormulaPtr& f, const Assignment& env) {
  switch (f->kind) {
    case FK::True:
      return true;
    case FK::False:
      return false;
    case FK::Eq:
      return eval_term(f->t1, env) == eval_term(f->t2, env);
    case FK::Divides:
      return mod_floor(eval_term(f->t1, env), f->n) == 0;
    case FK::Prime:
      return is_prime_signed(eval_term(f->t1, env));
    case FK::PrimeN: {
      Int v = eval_term(f->t1, env);
      if (mod_floor(v, f->n) != 0) return false;
      return is_prime_signed(v / f->n);
    }
    case FK::Not:
      return !eval_ground(f->f1, env);
    case FK::And:
    case FK::Or: {
      // elimination output can be a very long chain; walk the spine
      bool is_and = f->kind == FK::And;
      std::vector<const FormulaNode*> spine;
      const FormulaNode* cur = f.get();
      while (cur->kind == f->kind) {
        spine.push_back(cur);
        cur = cur->f1.get();
      }
      bool acc = eval_ground(spine.back()->f1, env);
      for (auto it = spine.rbegin(); it != spine.rend(); ++it) {
        if (acc != is_and) break;  // short-circuit
        acc = eval_ground((*it)->f2, env);
      }
      return acc;
    }
    case FK::Implies:
      return !eval_ground(f->f1, env) || eval_ground(f->f2, env);
    case FK::Iff:
      return eval_ground(f->f1, env) == eval_ground(f->f2, env);
    case FK::Exists:
    case FK::Forall:
      throw std::logic_error("eval_ground requires a quantifier-free formula");
  }
  throw std::logic_error("unreachable formula kind");
}

namespace {

bool eval_lit_at(const NormLit& lit, const std::string& v, const Int& x) {
  Int val = lit.t.constant + lit.t.coeff(v) * x;
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

// Collects the literals of a conjunction tree, or fails when the
// formula mixes in other connectives.
bool collect_conj(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (f->kind == FK::And)
    return collect_conj(f->f1, out) && collect_conj(f->f2, out);
  if (is_atom(f->kind)) {
    out.push_back(f);
    return true;
  }
  if (f->kind == FK::Not && is_atom(f->f1->kind) && f->f1->kind != FK::True &&
      f->f1->kind != FK::False) {
    out.push_back(f);
    return true;
  }
  return false;
}

NormLit formula_to_lit(const FormulaPtr& f) {
  bool neg = f->kind == FK::Not;
  const FormulaPtr& a = neg ? f->f1 : f;
  NormLit lit;
  lit.neg = neg;
  switch (a->kind) {
    case FK::Eq:
      lit.kind = NormLit::Kind::Eq;
      lit.t = linearize_term(a->t1).minus(linearize_term(a->t2));
      break;
    case FK::Divides:
      lit.kind = NormLit::Kind::Div;
      lit.n = a->n;
      lit.t = linearize_term(a->t1);
      break;
    case FK::Prime:
      lit.kind = NormLit::Kind::Prime;
      lit.t = linearize_term(a->t1);
      break;
    case FK::PrimeN:
      lit.kind = NormLit::Kind::PrimeN;
      lit.n = a->n;
      lit.t = linearize_term(a->t1);
      break;
    default:
      throw std::logic_error("not a literal");
  }
  return lit;
}

}  // namespace

std::optional<Int> witness_search(const std::string& v, const FormulaPtr& conj,
                                  const Int& bound) {
  // Fast path: a pure conjunction of literals is tested through
  // linearized literals, and the positive congruences cut the candidate
  // stream down to one residue class.
  std::vector<FormulaPtr> parts;
  if (collect_conj(conj, parts)) {
    std::vector<NormLit> lits;
    lits.reserve(parts.size());
    for (const auto& p : parts) {
      if (p->kind == FK::True) continue;
      if (p->kind == FK::False) return std::nullopt;
      lits.push_back(formula_to_lit(p));
    }

    CongruenceClass cls = CongruenceClass::all();
    for (const auto& lit : lits) {
      if (lit.neg || lit.kind != NormLit::Kind::Div) continue;
      if (!lit.t.mentions(v)) continue;
      LinearTerm rest = lit.t.without(v);
      if (!rest.is_constant()) continue;
      auto sol = solve_linear_congruence(lit.t.coeff(v), rest.constant, lit.n);
      if (!sol) return std::nullopt;
      auto merged = crt_merge2(cls, *sol);
      if (!merged) return std::nullopt;
      cls = *merged;
    }

    auto test = [&](const Int& x) {
      for (const auto& lit : lits)
        if (!eval_lit_at(lit, v, x)) return false;
      return true;
    };

    // Walk the class members in |x| order, positive first on ties.
    const Int& L = cls.modulus;
    Int pos = cls.residue;          // smallest member >= 0
    Int neg = cls.residue - L;      // largest member < 0
    if (pos == 0) {
      if (test(0)) return Int(0);
      pos += L;
    }
    while (pos <= bound || -neg <= bound) {
      bool take_pos = pos <= bound && (-neg > bound || pos <= -neg);
      if (take_pos) {
        if (test(pos)) return pos;
        pos += L;
      } else {
        if (test(neg)) return neg;
        neg -= L;
      }
    }
    return std::nullopt;
  }

  // General shape: plain scan.
  Assignment env;
  for (Int m = 0; m <= bound; ++m) {
    env[v] = m;
    if (eval_ground(conj, env)) return m;
    if (m > 0) {
      env[v] = -m;
      if (eval_ground(conj, env)) return -m;
    }
  }
  return std::nullopt;
}

}  // namespace primedec
