#include "primedec/normal.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "primedec/errors.hpp"

namespace primedec {

using FK = FormulaNode::Kind;
using TK = TermNode::Kind;

LinearTerm LinearTerm::from_const(Int c) {
  LinearTerm t;
  t.constant = std::move(c);
  return t;
}

LinearTerm LinearTerm::from_var(const std::string& v) {
  LinearTerm t;
  t.coeffs[v] = 1;
  return t;
}

Int LinearTerm::coeff(const std::string& v) const {
  auto it = coeffs.find(v);
  return it == coeffs.end() ? Int(0) : it->second;
}

LinearTerm LinearTerm::without(const std::string& v) const {
  LinearTerm t = *this;
  t.coeffs.erase(v);
  return t;
}

LinearTerm LinearTerm::negated() const { return scaled(-1); }

LinearTerm LinearTerm::plus(const LinearTerm& o) const {
  LinearTerm t = *this;
  for (const auto& [v, c] : o.coeffs) {
    Int nc = t.coeff(v) + c;
    if (nc == 0)
      t.coeffs.erase(v);
    else
      t.coeffs[v] = nc;
  }
  t.constant += o.constant;
  return t;
}

LinearTerm LinearTerm::minus(const LinearTerm& o) const {
  return plus(o.negated());
}

LinearTerm LinearTerm::scaled(const Int& k) const {
  LinearTerm t;
  if (k == 0) return t;
  for (const auto& [v, c] : coeffs) t.coeffs[v] = c * k;
  t.constant = constant * k;
  return t;
}

LinearTerm LinearTerm::shifted(const Int& c) const {
  LinearTerm t = *this;
  t.constant += c;
  return t;
}

Int LinearTerm::eval(const std::map<std::string, Int>& env) const {
  Int v = constant;
  for (const auto& [name, c] : coeffs) {
    auto it = env.find(name);
    if (it == env.end())
      throw std::logic_error("unbound variable in evaluation: " + name);
    v += c * it->second;
  }
  return v;
}

LinearTerm linearize_term(const TermPtr& t) {
  switch (t->kind) {
    case TK::Var:
      return LinearTerm::from_var(t->name);
    case TK::IntLit:
      return LinearTerm::from_const(t->value);
    case TK::Sum:
    case TK::Diff: {
      // accumulate along the spine so long sums do not recurse deeply
      std::vector<const TermNode*> spine;
      const TermNode* cur = t.get();
      while (cur->kind == TK::Sum || cur->kind == TK::Diff) {
        spine.push_back(cur);
        cur = cur->lhs.get();
      }
      LinearTerm acc = linearize_term(spine.back()->lhs);
      for (auto it = spine.rbegin(); it != spine.rend(); ++it) {
        LinearTerm rhs = linearize_term((*it)->rhs);
        acc = (*it)->kind == TK::Sum ? acc.plus(rhs) : acc.minus(rhs);
      }
      return acc;
    }
    case TK::Scale:
      return linearize_term(t->lhs).scaled(t->value);
    case TK::Neg:
      return linearize_term(t->lhs).negated();
  }
  throw std::logic_error("unreachable term kind");
}

TermPtr linear_to_term(const LinearTerm& t) {
  TermPtr acc;
  for (const auto& [v, c] : t.coeffs) {
    TermPtr piece;
    Int a = abs_int(c);
    piece = a == 1 ? t_var(v) : t_scale(a, t_var(v));
    if (!acc) {
      acc = c < 0 ? t_neg(piece) : piece;
    } else {
      acc = c < 0 ? t_diff(acc, piece) : t_sum(acc, piece);
    }
  }
  if (!acc) return t_int(t.constant);
  if (t.constant > 0) return t_sum(acc, t_int(t.constant));
  if (t.constant < 0) return t_diff(acc, t_int(-t.constant));
  return acc;
}

FormulaPtr lit_to_formula(const NormLit& lit) {
  FormulaPtr atom;
  switch (lit.kind) {
    case NormLit::Kind::Eq:
      atom = f_eq(linear_to_term(lit.t), t_int(0));
      break;
    case NormLit::Kind::Div:
      atom = f_divides(lit.n, linear_to_term(lit.t));
      break;
    case NormLit::Kind::Prime:
      atom = f_prime(linear_to_term(lit.t));
      break;
    case NormLit::Kind::PrimeN:
      atom = f_prime_n(lit.n, linear_to_term(lit.t));
      break;
  }
  return lit.neg ? f_not(atom) : atom;
}

namespace {

// Truth value of a literal whose term carries no variables.
std::optional<bool> ground_value(const NormLit& lit) {
  if (!lit.t.is_constant()) return std::nullopt;
  const Int& c = lit.t.constant;
  bool v = false;
  switch (lit.kind) {
    case NormLit::Kind::Eq:
      v = c == 0;
      break;
    case NormLit::Kind::Div:
      v = mod_floor(c, lit.n) == 0;
      break;
    case NormLit::Kind::Prime:
      v = is_prime_signed(c);
      break;
    case NormLit::Kind::PrimeN:
      v = mod_floor(c, lit.n) == 0 && is_prime_signed(c / lit.n);
      break;
  }
  return lit.neg ? !v : v;
}

bool complementary(const NormLit& a, const NormLit& b) {
  return a.neg != b.neg && a.kind == b.kind && a.n == b.n && a.t == b.t;
}

// Appends lit to the cube unless redundant; false means the cube died.
bool cube_add(Cube& cube, const NormLit& lit) {
  for (const auto& l : cube) {
    if (l == lit) return true;
    if (complementary(l, lit)) return false;
  }
  cube.push_back(lit);
  return true;
}

class DnfBuilder {
 public:
  explicit DnfBuilder(std::size_t cap) : cap_(cap) {}

  std::vector<Cube> run(const FormulaPtr& f, bool positive) {
    switch (f->kind) {
      case FK::True:
        return positive ? one_empty() : none();
      case FK::False:
        return positive ? none() : one_empty();
      case FK::Eq:
      case FK::Divides:
      case FK::Prime:
      case FK::PrimeN: {
        NormLit lit = make_lit(f, !positive);
        if (auto v = ground_value(lit)) return *v ? one_empty() : none();
        return {{lit}};
      }
      case FK::Not:
        return run(f->f1, !positive);
      case FK::And:
      case FK::Or: {
        // process chains along the spine, not by recursion depth
        FK op = f->kind;
        std::vector<const FormulaNode*> spine;
        const FormulaNode* cur = f.get();
        while (cur->kind == op) {
          spine.push_back(cur);
          cur = cur->f1.get();
        }
        bool conjunctive = (op == FK::And) == positive;
        std::vector<Cube> acc = run(spine.back()->f1, positive);
        for (auto it = spine.rbegin(); it != spine.rend(); ++it) {
          if (conjunctive && acc.empty()) break;  // false crossed is false
          std::vector<Cube> next = run((*it)->f2, positive);
          acc = conjunctive ? cross_lists(std::move(acc), std::move(next))
                            : join(std::move(acc), std::move(next));
        }
        return acc;
      }
      case FK::Implies:
        return positive ? concat(f->f1, false, f->f2, true)
                        : cross(f->f1, true, f->f2, false);
      case FK::Iff: {
        if (positive) {
          auto a = cross(f->f1, true, f->f2, true);
          auto b = cross(f->f1, false, f->f2, false);
          return join(std::move(a), std::move(b));
        }
        auto a = cross(f->f1, true, f->f2, false);
        auto b = cross(f->f1, false, f->f2, true);
        return join(std::move(a), std::move(b));
      }
      case FK::Exists:
      case FK::Forall:
        throw std::logic_error("to_dnf requires a quantifier-free formula");
    }
    throw std::logic_error("unreachable formula kind");
  }

 private:
  static NormLit make_lit(const FormulaPtr& f, bool neg) {
    NormLit lit;
    lit.neg = neg;
    switch (f->kind) {
      case FK::Eq:
        lit.kind = NormLit::Kind::Eq;
        lit.t = linearize_term(f->t1).minus(linearize_term(f->t2));
        break;
      case FK::Divides:
        lit.kind = NormLit::Kind::Div;
        lit.n = f->n;
        lit.t = linearize_term(f->t1);
        break;
      case FK::Prime:
        lit.kind = NormLit::Kind::Prime;
        lit.t = linearize_term(f->t1);
        break;
      case FK::PrimeN:
        lit.kind = NormLit::Kind::PrimeN;
        lit.n = f->n;
        lit.t = linearize_term(f->t1);
        break;
      default:
        throw std::logic_error("not an atom");
    }
    return lit;
  }

  static std::vector<Cube> one_empty() { return {Cube{}}; }
  static std::vector<Cube> none() { return {}; }

  void check(std::size_t size) const {
    if (size > cap_)
      throw ResourceLimitError(
          "DNF disjunct cap exceeded (" + std::to_string(cap_) +
          "); the formula is too large for this configuration");
  }

  std::vector<Cube> join(std::vector<Cube> a, std::vector<Cube> b) const {
    check(a.size() + b.size());
    a.insert(a.end(), std::make_move_iterator(b.begin()),
             std::make_move_iterator(b.end()));
    return a;
  }

  std::vector<Cube> concat(const FormulaPtr& x, bool px, const FormulaPtr& y,
                           bool py) {
    return join(run(x, px), run(y, py));
  }

  std::vector<Cube> cross(const FormulaPtr& x, bool px, const FormulaPtr& y,
                          bool py) {
    return cross_lists(run(x, px), run(y, py));
  }

  std::vector<Cube> cross_lists(std::vector<Cube> xs,
                                std::vector<Cube> ys) const {
    std::vector<Cube> out;
    for (const auto& a : xs) {
      for (const auto& b : ys) {
        Cube cube = a;
        bool alive = true;
        for (const auto& lit : b) {
          if (!cube_add(cube, lit)) {
            alive = false;
            break;
          }
        }
        if (alive) {
          out.push_back(std::move(cube));
          check(out.size());
        }
      }
    }
    return out;
  }

  std::size_t cap_;
};

}  // namespace

std::vector<Cube> to_dnf(const FormulaPtr& f, std::size_t cap) {
  return DnfBuilder(cap).run(f, true);
}

ClassifiedSystem classify(const Cube& cube, const std::string& v) {
  ClassifiedSystem sys;
  sys.var = v;
  for (const NormLit& lit : cube) {
    Int m = lit.t.coeff(v);
    if (m == 0) {
      sys.parameter_literals.push_back(lit);
      continue;
    }
    LinearTerm rest = lit.t.without(v);
    switch (lit.kind) {
      case NormLit::Kind::Eq: {
        // m*v + rest = 0  ==>  m'*v = t with m' >= 1
        ClassifiedSystem::Equality e;
        if (m > 0) {
          e.m = m;
          e.t = rest.negated();
        } else {
          e.m = -m;
          e.t = rest;
        }
        (lit.neg ? sys.disequalities : sys.equalities).push_back(e);
        break;
      }
      case NormLit::Kind::Div: {
        ClassifiedSystem::Congruence c;
        c.neg = lit.neg;
        c.n = lit.n;
        if (m > 0) {
          c.m = m;
          c.t = rest;
        } else {
          c.m = -m;
          c.t = rest.negated();
        }
        sys.congruences.push_back(c);
        break;
      }
      case NormLit::Kind::Prime:
      case NormLit::Kind::PrimeN: {
        ClassifiedSystem::PrimeLit p;
        p.neg = lit.neg;
        p.n = lit.kind == NormLit::Kind::Prime ? 1 : lit.n;
        if (m > 0) {
          p.m = m;
          p.t = rest;
        } else {
          p.m = -m;
          p.t = rest.negated();
        }
        sys.prime_literals.push_back(p);
        break;
      }
    }
  }
  return sys;
}

}  // namespace primedec
