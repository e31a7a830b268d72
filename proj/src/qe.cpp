#include "primedec/qe.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "primedec/dickson.hpp"
#include "primedec/errors.hpp"
#include "primedec/eval.hpp"

namespace primedec {

using FK = FormulaNode::Kind;

namespace {

bool is_const_true(const FormulaPtr& f) { return f->kind == FK::True; }
bool is_const_false(const FormulaPtr& f) { return f->kind == FK::False; }

std::optional<bool> lit_ground_value(const NormLit& lit) {
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

FormulaPtr lit_fold(const NormLit& lit) {
  if (auto v = lit_ground_value(lit)) return *v ? f_true() : f_false();
  return lit_to_formula(lit);
}

FormulaPtr mk_implies(const FormulaPtr& a, const FormulaPtr& b) {
  if (is_const_false(a) || is_const_true(b)) return f_true();
  if (is_const_true(a)) return b;
  if (is_const_false(b)) return mk_not(a);
  return f_implies(a, b);
}

FormulaPtr mk_iff(const FormulaPtr& a, const FormulaPtr& b) {
  if (is_const_true(a)) return b;
  if (is_const_true(b)) return a;
  if (is_const_false(a)) return mk_not(b);
  if (is_const_false(b)) return mk_not(a);
  return f_iff(a, b);
}

// [!]Prime((M*w + u)/n): a prime constraint on the residue-substituted
// variable, kept in cleared-denominator form (n | M, and P_n(u) holds
// on the branch that owns the entry).
struct Entry {
  bool neg;
  Int n;
  Int M;
  LinearTerm u;

  bool operator==(const Entry& o) const = default;
};

// !(M*w = u)
struct Diseq {
  Int M;
  LinearTerm u;
};

std::string entry_term_string(const Entry& e) {
  std::string s = print_term(linear_to_term(e.u));
  if (e.n > 1) s = "(" + s + ")/" + e.n.get_str();
  return s;
}

class Eliminator {
 public:
  Eliminator(const QeOptions& opt, std::vector<DicksonInstance>& uses,
             std::vector<std::string>& witnesses)
      : opt_(opt), uses_(uses), witnesses_(witnesses) {}

  FormulaPtr eliminate_with_var(const ClassifiedSystem& sys) {
    var_ = sys.var;
    return eliminate(sys);
  }

 private:
  FormulaPtr eliminate(const ClassifiedSystem& sys) {
    std::vector<FormulaPtr> params;
    for (const auto& lit : sys.parameter_literals)
      params.push_back(lit_fold(lit));
    FormulaPtr param_f = mk_and(params);
    if (is_const_false(param_f)) return f_false();

    if (!sys.equalities.empty())
      return mk_and(param_f, equality_route(sys));
    return mk_and(param_f, residue_route(sys));
  }

  // One equality m*v = t pins v to t/m; everything else maps through
  // the division substitution under the guard P_m(t).
  FormulaPtr equality_route(const ClassifiedSystem& sys) {
    const auto& e0 = sys.equalities.front();
    std::vector<FormulaPtr> parts;
    if (e0.m > 1)
      parts.push_back(lit_fold(NormLit{false, NormLit::Kind::Div, e0.m, e0.t}));

    auto push_subst = [&](NormLit lit) {
      parts.push_back(lit_fold(subst_av_c(lit, e0.t, e0.m)));
    };
    for (std::size_t i = 1; i < sys.equalities.size(); ++i)
      push_subst(equality_lit(sys.equalities[i], false));
    for (const auto& d : sys.disequalities)
      push_subst(equality_lit(d, true));
    for (const auto& c : sys.congruences) {
      NormLit lit{c.neg, NormLit::Kind::Div, c.n, with_var(c.m, c.t)};
      push_subst(lit);
    }
    for (const auto& p : sys.prime_literals) {
      NormLit lit{p.neg,
                  p.n == 1 ? NormLit::Kind::Prime : NormLit::Kind::PrimeN,
                  p.n == 1 ? Int(0) : p.n, with_var(p.m, p.t)};
      push_subst(lit);
    }
    return mk_and(parts);
  }

  // Literal m*v = t (or its negation) as a NormLit in var_.
  NormLit equality_lit(const ClassifiedSystem::Equality& e, bool neg) const {
    NormLit lit;
    lit.neg = neg;
    lit.kind = NormLit::Kind::Eq;
    lit.t = with_var(e.m, e.t.negated());
    return lit;
  }

  LinearTerm with_var(const Int& m, const LinearTerm& rest) const {
    return LinearTerm::from_var(var_).scaled(m).plus(rest);
  }

  // substitute_division on a literal known to mention var_
  NormLit subst_av_c(const NormLit& lit, const LinearTerm& t,
                     const Int& m) const {
    return substitute_division(lit, var_, t, m);
  }

  // No equalities: fold congruences into a residue class per case
  // branch, substitute v = L*w + r, and eliminate the remaining prime
  // system over w.
  FormulaPtr residue_route(const ClassifiedSystem& sys) {
    struct ResBranch {
      std::vector<FormulaPtr> guards;
      CongruenceClass cls = CongruenceClass::all();
    };
    std::vector<ResBranch> rbranches{ResBranch{}};
    for (const auto& cong : sys.congruences) {
      if (cong.neg) continue;
      std::vector<ResBranch> next;
      for (const auto& br : rbranches) {
        if (cong.t.is_constant()) {
          Int rho = mod_floor(cong.t.constant, cong.n);
          extend_branch(br, cong, rho, nullptr, next);
        } else {
          for (Int rho = 0; rho < cong.n; ++rho) {
            FormulaPtr guard = lit_to_formula(
                NormLit{false, NormLit::Kind::Div, cong.n,
                        cong.t.shifted(-rho)});
            extend_branch(br, cong, rho, guard, next);
          }
        }
      }
      rbranches = std::move(next);
      if (rbranches.size() > opt_.dnf_cap)
        throw ResourceLimitError("residue case split exceeds the branch cap");
    }

    // Every negated congruence modulus and prime subscript must divide
    // L so those literals reduce to parameter conditions.
    Int ext = 1;
    for (const auto& cong : sys.congruences)
      if (cong.neg) ext = lcm(ext, cong.n);
    for (const auto& p : sys.prime_literals)
      if (p.n >= 2) ext = lcm(ext, p.n);

    std::vector<FormulaPtr> results;
    std::size_t branch_count = 0;
    for (const auto& rb : rbranches) {
      Int L = lcm(rb.cls.modulus, ext);
      if (L > opt_.lcm_cap)
        throw ResourceLimitError(
            "residue modulus " + L.get_str() + " exceeds the lcm cap " +
            opt_.lcm_cap.get_str());
      for (Int j = 0; j * rb.cls.modulus < L; ++j) {
        if (++branch_count > opt_.dnf_cap)
          throw ResourceLimitError(
              "residue case split exceeds the branch cap");
        Int r = rb.cls.residue + j * rb.cls.modulus;
        emit_residue_branch(sys, rb.guards, r, L, results);
      }
    }
    return mk_or(results);
  }

  template <typename Next>
  void extend_branch(const auto& br, const ClassifiedSystem::Congruence& cong,
                     const Int& rho, FormulaPtr guard, Next& next) {
    auto sol = solve_linear_congruence(cong.m, rho, cong.n);
    if (!sol) return;
    auto merged = crt_merge2(br.cls, *sol);
    if (!merged) return;
    auto b2 = br;
    if (guard) b2.guards.push_back(std::move(guard));
    b2.cls = *merged;
    next.push_back(std::move(b2));
  }

  void emit_residue_branch(const ClassifiedSystem& sys,
                           const std::vector<FormulaPtr>& base_guards,
                           const Int& r, const Int& L,
                           std::vector<FormulaPtr>& results) {
    std::vector<FormulaPtr> guards = base_guards;
    for (const auto& cong : sys.congruences) {
      if (!cong.neg) continue;
      FormulaPtr g = lit_fold(NormLit{true, NormLit::Kind::Div, cong.n,
                                      cong.t.shifted(cong.m * r)});
      if (is_const_false(g)) return;
      if (!is_const_true(g)) guards.push_back(g);
    }

    struct PBranch {
      std::vector<FormulaPtr> guards;
      std::vector<Entry> entries;
    };
    std::vector<PBranch> pbs{{guards, {}}};
    for (const auto& pl : sys.prime_literals) {
      LinearTerm u = pl.t.shifted(pl.m * r);
      Int M = pl.m * L;
      if (pl.n == 1) {
        for (auto& pb : pbs) pb.entries.push_back({pl.neg, 1, M, u});
        continue;
      }
      if (u.is_constant()) {
        if (mod_floor(u.constant, pl.n) == 0) {
          Entry e{pl.neg, 1, M / pl.n,
                  LinearTerm::from_const(u.constant / pl.n)};
          for (auto& pb : pbs) pb.entries.push_back(e);
        } else if (!pl.neg) {
          return;  // positive Prime_n without its divisibility: false
        }          // negative one is simply true
        continue;
      }
      FormulaPtr g =
          lit_to_formula(NormLit{false, NormLit::Kind::Div, pl.n, u});
      if (!pl.neg) {
        for (auto& pb : pbs) {
          pb.guards.push_back(g);
          pb.entries.push_back({false, pl.n, M, u});
        }
      } else {
        std::vector<PBranch> next;
        for (const auto& pb : pbs) {
          PBranch without = pb;
          without.guards.push_back(mk_not(g));
          next.push_back(std::move(without));
          PBranch with = pb;
          with.guards.push_back(g);
          with.entries.push_back({true, pl.n, M, u});
          next.push_back(std::move(with));
        }
        pbs = std::move(next);
        if (pbs.size() > opt_.dnf_cap)
          throw ResourceLimitError(
              "prime-subscript case split exceeds the branch cap");
      }
    }

    std::vector<Diseq> diseqs;
    for (const auto& d : sys.disequalities)
      diseqs.push_back({d.m * L, d.t.shifted(-(d.m * r))});

    for (const auto& pb : pbs) {
      FormulaPtr sys_f = emit_prime_system(pb.entries, diseqs, L, r);
      FormulaPtr combined = mk_and(mk_and(pb.guards), sys_f);
      if (!is_const_false(combined)) results.push_back(combined);
    }
  }

  // The Dickson dichotomy for {[!]Prime(a_i*w + c_i)} with the c_i in
  // cleared-denominator form: either the star condition holds and the
  // positive/negative maps are pairwise distinct (infinitely many
  // solutions), or every solution pins some a_i*w + c_i to +-p for a
  // prime p below the bound.
  FormulaPtr emit_prime_system(const std::vector<Entry>& entries_in,
                               const std::vector<Diseq>& diseqs, const Int& L,
                               const Int& r) {
    std::vector<Entry> entries;
    for (const auto& e : entries_in) {
      if (std::find(entries.begin(), entries.end(), e) == entries.end())
        entries.push_back(e);
    }
    for (std::size_t i = 0; i < entries.size(); ++i)
      for (std::size_t j = i + 1; j < entries.size(); ++j)
        if (entries[i].neg != entries[j].neg && entries[i].n == entries[j].n &&
            entries[i].M == entries[j].M && entries[i].u == entries[j].u)
          return f_false();

    std::vector<Entry> pos, neg;
    for (const auto& e : entries) (e.neg ? neg : pos).push_back(e);

    // No positive prime requirement: composites are plentiful enough
    // that the negative literals and finitely many disequalities cannot
    // block existence, with no appeal to the conjecture.
    if (pos.empty()) return f_true();

    bool star_impossible = false;
    std::vector<FormulaPtr> star_parts;
    for (const auto& pi : pos) {
      for (const auto& nj : neg) {
        if (pi.M * nj.n != nj.M * pi.n) continue;
        LinearTerm diff = pi.u.scaled(nj.n).minus(nj.u.scaled(pi.n));
        if (diff.is_constant()) {
          if (diff.constant == 0) star_impossible = true;
        } else {
          star_parts.push_back(
              lit_to_formula(NormLit{true, NormLit::Kind::Eq, 0, diff}));
        }
      }
    }

    Int bound = Int(static_cast<unsigned long>(pos.size()));
    std::vector<Int> divided;
    for (const auto& e : pos) {
      divided.push_back(e.M / e.n);
      bound = std::max(bound, divided.back());
    }
    bound += 1;
    std::vector<Int> primes = primes_below(bound);

    for (const Int& q : primes) {
      std::vector<FormulaPtr> options;
      for (Int rho = 0; rho < q; ++rho) {
        std::vector<FormulaPtr> atoms;
        for (const auto& e : pos)
          atoms.push_back(lit_fold(NormLit{true, NormLit::Kind::Div, q * e.n,
                                           e.u.shifted(e.M * rho)}));
        options.push_back(mk_and(atoms));
      }
      star_parts.push_back(mk_or(options));
    }
    FormulaPtr star_branch =
        star_impossible ? f_false() : mk_and(star_parts);

    std::vector<FormulaPtr> fins;
    bool witnessed = false;
    for (const auto& pi : pos) {
      for (const Int& q : primes) {
        for (int sign : {+1, -1}) {
          LinearTerm tsub = pi.u.negated().shifted(sign * q * pi.n);
          const Int& msub = pi.M;
          std::vector<FormulaPtr> parts;
          if (msub > 1)
            parts.push_back(
                lit_fold(NormLit{false, NormLit::Kind::Div, msub, tsub}));
          for (const auto& e : entries) {
            LinearTerm arg = tsub.scaled(e.M).plus(e.u.scaled(msub));
            Int sub = e.n * msub;
            NormLit lit{e.neg,
                        sub == 1 ? NormLit::Kind::Prime : NormLit::Kind::PrimeN,
                        sub, arg};
            parts.push_back(lit_fold(lit));
          }
          for (const auto& d : diseqs) {
            NormLit lit{true, NormLit::Kind::Eq, 0,
                        tsub.scaled(d.M).minus(d.u.scaled(msub))};
            parts.push_back(lit_fold(lit));
          }
          FormulaPtr fin = mk_and(parts);
          if (is_const_false(fin)) continue;
          if (is_const_true(fin)) {
            witnessed = true;
            if (tsub.is_constant() &&
                mod_floor(tsub.constant, msub) == 0) {
              Int w = tsub.constant / msub;
              Int v_val = L * w + r;
              witnesses_.push_back(v_val.get_str());
            }
          }
          fins.push_back(fin);
        }
      }
    }

    if (!is_const_false(star_branch) && !witnessed) {
      DicksonInstance inst;
      inst.coeffs = divided;
      for (const auto& e : pos) inst.terms.push_back(entry_term_string(e));
      uses_.push_back(std::move(inst));
    }
    return mk_or(star_branch, mk_or(fins));
  }

  const QeOptions& opt_;
  std::vector<DicksonInstance>& uses_;
  std::vector<std::string>& witnesses_;
  std::string var_;
};

FormulaPtr eliminate_block(const std::string& v, const FormulaPtr& matrix,
                           const QeOptions& opt,
                           std::vector<DicksonInstance>& uses,
                           std::vector<std::string>& witnesses) {
  std::vector<Cube> cubes = to_dnf(matrix, opt.dnf_cap);
  std::vector<FormulaPtr> outs;
  for (const auto& cube : cubes) {
    Eliminator e(opt, uses, witnesses);
    outs.push_back(e.eliminate_with_var(classify(cube, v)));
  }
  return mk_or(outs);
}

FormulaPtr qe_rec(const FormulaPtr& f, const QeOptions& opt,
                  std::vector<DicksonInstance>& uses,
                  std::vector<std::string>& witnesses) {
  if (!has_quantifier(f)) return f;
  switch (f->kind) {
    case FK::Not:
      return mk_not(qe_rec(f->f1, opt, uses, witnesses));
    case FK::And:
      return mk_and(qe_rec(f->f1, opt, uses, witnesses),
                    qe_rec(f->f2, opt, uses, witnesses));
    case FK::Or:
      return mk_or(qe_rec(f->f1, opt, uses, witnesses),
                   qe_rec(f->f2, opt, uses, witnesses));
    case FK::Implies:
      return mk_implies(qe_rec(f->f1, opt, uses, witnesses),
                        qe_rec(f->f2, opt, uses, witnesses));
    case FK::Iff:
      return mk_iff(qe_rec(f->f1, opt, uses, witnesses),
                    qe_rec(f->f2, opt, uses, witnesses));
    case FK::Exists:
      return eliminate_block(f->var, qe_rec(f->f1, opt, uses, witnesses), opt,
                             uses, witnesses);
    case FK::Forall:
      return mk_not(eliminate_block(
          f->var, mk_not(qe_rec(f->f1, opt, uses, witnesses)), opt, uses,
          witnesses));
    default:
      return f;  // atoms carry no quantifier
  }
}

}  // namespace

NormLit substitute_division(const NormLit& lit, const std::string& v,
                            const LinearTerm& t, const Int& m) {
  if (m < 1) throw std::invalid_argument("division substitution needs m >= 1");
  Int a = lit.t.coeff(v);
  LinearTerm c = lit.t.without(v);
  NormLit out;
  out.neg = lit.neg;
  out.t = t.scaled(a).plus(c.scaled(m));
  switch (lit.kind) {
    case NormLit::Kind::Eq:
      out.kind = NormLit::Kind::Eq;
      break;
    case NormLit::Kind::Div:
      out.kind = NormLit::Kind::Div;
      out.n = lit.n * m;
      break;
    case NormLit::Kind::Prime:
      out.kind = m == 1 ? NormLit::Kind::Prime : NormLit::Kind::PrimeN;
      out.n = m == 1 ? Int(0) : m;
      break;
    case NormLit::Kind::PrimeN:
      out.kind = NormLit::Kind::PrimeN;
      out.n = lit.n * m;
      break;
  }
  return out;
}

ElimResult eliminate_exists(const ClassifiedSystem& sys,
                            const QeOptions& opt) {
  ElimResult out;
  Eliminator e(opt, out.dickson_uses, out.finite_witnesses);
  out.formula = e.eliminate_with_var(sys);
  return out;
}

QEOutput qe_formula(const FormulaPtr& f, const QeOptions& opt) {
  QEOutput out;
  out.formula = qe_rec(f, opt, out.dickson_uses, out.finite_witnesses);
  return out;
}

Verdict decide_sentence(const FormulaPtr& f, const QeOptions& opt) {
  std::set<std::string> fv = free_vars(f);
  if (!fv.empty())
    throw NotASentenceError(std::vector<std::string>(fv.begin(), fv.end()));
  long probable_before = probable_primality_count();
  QEOutput qe = qe_formula(f, opt);
  Verdict v;
  v.value = eval_ground(qe.formula, {});
  v.conditional_on_dickson = !qe.dickson_uses.empty();
  v.used_probable_primality = probable_primality_count() != probable_before;
  v.dickson_uses = std::move(qe.dickson_uses);
  v.finite_witnesses = std::move(qe.finite_witnesses);
  return v;
}

}  // namespace primedec
