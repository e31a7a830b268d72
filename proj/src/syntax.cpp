#include "primedec/syntax.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

#include "primedec/errors.hpp"

namespace primedec {

namespace {

using FK = FormulaNode::Kind;
using TK = TermNode::Kind;

// Deep chains (wide conjunctions from elimination, long sums from
// input) would overflow the stack under the default recursive
// shared_ptr teardown; the deleters detach children onto a worklist.
void delete_term_node(const TermNode* p) {
  std::vector<TermPtr> work;
  auto strip = [&](const TermNode* n) {
    auto* m = const_cast<TermNode*>(n);
    if (m->lhs && m->lhs.use_count() == 1) work.push_back(std::move(m->lhs));
    m->lhs.reset();
    if (m->rhs && m->rhs.use_count() == 1) work.push_back(std::move(m->rhs));
    m->rhs.reset();
  };
  strip(p);
  delete p;
  while (!work.empty()) {
    TermPtr q = std::move(work.back());
    work.pop_back();
    strip(q.get());
  }
}

void delete_formula_node(const FormulaNode* p) {
  std::vector<FormulaPtr> work;
  auto strip = [&](const FormulaNode* n) {
    auto* m = const_cast<FormulaNode*>(n);
    if (m->f1 && m->f1.use_count() == 1) work.push_back(std::move(m->f1));
    m->f1.reset();
    if (m->f2 && m->f2.use_count() == 1) work.push_back(std::move(m->f2));
    m->f2.reset();
  };
  strip(p);
  delete p;
  while (!work.empty()) {
    FormulaPtr q = std::move(work.back());
    work.pop_back();
    strip(q.get());
  }
}

TermPtr make_term(TermNode n) {
  return TermPtr(new TermNode(std::move(n)), delete_term_node);
}
FormulaPtr make_formula(FormulaNode n) {
  return FormulaPtr(new FormulaNode(std::move(n)), delete_formula_node);
}

}  // namespace

TermPtr t_var(std::string name) {
  return make_term({TK::Var, std::move(name), 0, nullptr, nullptr});
}
TermPtr t_int(Int value) {
  return make_term({TK::IntLit, "", std::move(value), nullptr, nullptr});
}
TermPtr t_sum(TermPtr a, TermPtr b) {
  return make_term({TK::Sum, "", 0, std::move(a), std::move(b)});
}
TermPtr t_diff(TermPtr a, TermPtr b) {
  return make_term({TK::Diff, "", 0, std::move(a), std::move(b)});
}
TermPtr t_scale(Int k, TermPtr t) {
  return make_term({TK::Scale, "", std::move(k), std::move(t), nullptr});
}
TermPtr t_neg(TermPtr t) {
  return make_term({TK::Neg, "", 0, std::move(t), nullptr});
}

FormulaPtr f_true() {
  static const FormulaPtr t =
      make_formula({FK::True, 0, nullptr, nullptr, nullptr, nullptr, ""});
  return t;
}
FormulaPtr f_false() {
  static const FormulaPtr f =
      make_formula({FK::False, 0, nullptr, nullptr, nullptr, nullptr, ""});
  return f;
}
FormulaPtr f_eq(TermPtr a, TermPtr b) {
  return make_formula(
      {FK::Eq, 0, std::move(a), std::move(b), nullptr, nullptr, ""});
}
FormulaPtr f_divides(Int n, TermPtr t) {
  if (n < 2) throw std::invalid_argument("divisibility modulus must be >= 2");
  return make_formula(
      {FK::Divides, std::move(n), std::move(t), nullptr, nullptr, nullptr, ""});
}
FormulaPtr f_prime(TermPtr t) {
  return make_formula(
      {FK::Prime, 0, std::move(t), nullptr, nullptr, nullptr, ""});
}
FormulaPtr f_prime_n(Int n, TermPtr t) {
  if (n < 2) throw std::invalid_argument("prime_n subscript must be >= 2");
  return make_formula(
      {FK::PrimeN, std::move(n), std::move(t), nullptr, nullptr, nullptr, ""});
}
FormulaPtr f_not(FormulaPtr f) {
  return make_formula(
      {FK::Not, 0, nullptr, nullptr, std::move(f), nullptr, ""});
}
FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  return make_formula(
      {FK::And, 0, nullptr, nullptr, std::move(a), std::move(b), ""});
}
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  return make_formula(
      {FK::Or, 0, nullptr, nullptr, std::move(a), std::move(b), ""});
}
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
  return make_formula(
      {FK::Implies, 0, nullptr, nullptr, std::move(a), std::move(b), ""});
}
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) {
  return make_formula(
      {FK::Iff, 0, nullptr, nullptr, std::move(a), std::move(b), ""});
}
FormulaPtr f_exists(std::string var, FormulaPtr f) {
  return make_formula(
      {FK::Exists, 0, nullptr, nullptr, std::move(f), nullptr, std::move(var)});
}
FormulaPtr f_forall(std::string var, FormulaPtr f) {
  return make_formula(
      {FK::Forall, 0, nullptr, nullptr, std::move(f), nullptr, std::move(var)});
}

FormulaPtr mk_not(FormulaPtr f) {
  if (f->kind == FK::True) return f_false();
  if (f->kind == FK::False) return f_true();
  if (f->kind == FK::Not) return f->f1;
  return f_not(std::move(f));
}

FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) {
  if (a->kind == FK::False || b->kind == FK::False) return f_false();
  if (a->kind == FK::True) return b;
  if (b->kind == FK::True) return a;
  return f_and(std::move(a), std::move(b));
}

FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) {
  if (a->kind == FK::True || b->kind == FK::True) return f_true();
  if (a->kind == FK::False) return b;
  if (b->kind == FK::False) return a;
  return f_or(std::move(a), std::move(b));
}

FormulaPtr mk_and(const std::vector<FormulaPtr>& fs) {
  FormulaPtr acc = f_true();
  for (const auto& f : fs) acc = mk_and(acc, f);
  return acc;
}

FormulaPtr mk_or(const std::vector<FormulaPtr>& fs) {
  FormulaPtr acc = f_false();
  for (const auto& f : fs) acc = mk_or(acc, f);
  return acc;
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  std::vector<std::pair<const TermNode*, const TermNode*>> work{
      {a.get(), b.get()}};
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    if (x == y) continue;
    if (!x || !y || x->kind != y->kind) return false;
    switch (x->kind) {
      case TK::Var:
        if (x->name != y->name) return false;
        break;
      case TK::IntLit:
        if (x->value != y->value) return false;
        break;
      case TK::Scale:
        if (x->value != y->value) return false;
        [[fallthrough]];
      case TK::Sum:
      case TK::Diff:
      case TK::Neg:
        work.push_back({x->lhs.get(), y->lhs.get()});
        work.push_back({x->rhs.get(), y->rhs.get()});
        break;
    }
  }
  return true;
}

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  std::vector<std::pair<const FormulaNode*, const FormulaNode*>> work{
      {a.get(), b.get()}};
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    if (x == y) continue;
    if (!x || !y || x->kind != y->kind) return false;
    switch (x->kind) {
      case FK::True:
      case FK::False:
        break;
      case FK::Eq:
        if (!term_equal(x->t1, y->t1) || !term_equal(x->t2, y->t2))
          return false;
        break;
      case FK::Prime:
        if (!term_equal(x->t1, y->t1)) return false;
        break;
      case FK::Divides:
      case FK::PrimeN:
        if (x->n != y->n || !term_equal(x->t1, y->t1)) return false;
        break;
      case FK::Exists:
      case FK::Forall:
        if (x->var != y->var) return false;
        [[fallthrough]];
      default:
        work.push_back({x->f1.get(), y->f1.get()});
        work.push_back({x->f2.get(), y->f2.get()});
        break;
    }
  }
  return true;
}

bool is_atom(const FormulaNode::Kind k) {
  return k == FK::True || k == FK::False || k == FK::Eq || k == FK::Divides ||
         k == FK::Prime || k == FK::PrimeN;
}

bool has_quantifier(const FormulaPtr& f) {
  std::vector<const FormulaNode*> work{f.get()};
  while (!work.empty()) {
    const FormulaNode* n = work.back();
    work.pop_back();
    if (!n) continue;
    if (n->kind == FK::Exists || n->kind == FK::Forall) return true;
    work.push_back(n->f1.get());
    work.push_back(n->f2.get());
  }
  return false;
}

namespace {

void term_vars(const TermPtr& t, std::set<std::string>& out) {
  std::vector<const TermNode*> work{t.get()};
  while (!work.empty()) {
    const TermNode* n = work.back();
    work.pop_back();
    if (!n) continue;
    if (n->kind == TK::Var) {
      out.insert(n->name);
      continue;
    }
    work.push_back(n->lhs.get());
    work.push_back(n->rhs.get());
  }
}

}  // namespace

std::set<std::string> free_vars(const FormulaPtr& f) {
  // bound-variable scopes are shared between siblings and only extended
  // at quantifiers
  using Scope = std::shared_ptr<const std::set<std::string>>;
  std::set<std::string> out;
  Scope empty = std::make_shared<const std::set<std::string>>();
  std::vector<std::pair<const FormulaNode*, Scope>> work{{f.get(), empty}};
  while (!work.empty()) {
    auto [n, bound] = work.back();
    work.pop_back();
    if (!n) continue;
    if (is_atom(n->kind)) {
      std::set<std::string> vs;
      term_vars(n->t1, vs);
      term_vars(n->t2, vs);
      for (const auto& v : vs)
        if (!bound->count(v)) out.insert(v);
      continue;
    }
    if (n->kind == FK::Exists || n->kind == FK::Forall) {
      auto extended = std::make_shared<std::set<std::string>>(*bound);
      extended->insert(n->var);
      work.push_back({n->f1.get(), std::move(extended)});
      continue;
    }
    work.push_back({n->f1.get(), bound});
    if (n->f2) work.push_back({n->f2.get(), bound});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
  Ident,
  Number,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Dot,
  Equal,
  NotEqual,
  Amp,
  Pipe,
  Bang,
  Arrow,
  IffArrow,
  Plus,
  Minus,
  Star,
  End
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "integer";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Dot: return "'.'";
    case Tok::Equal: return "'='";
    case Tok::NotEqual: return "'!='";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Bang: return "'!'";
    case Tok::Arrow: return "'->'";
    case Tok::IffArrow: return "'<->'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string s, int l, int c) {
    out.push_back({k, std::move(s), l, c});
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    int l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '_'))
        ++j;
      push(Tok::Ident, text.substr(i, j - i), l, cl);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[j])))
        ++j;
      push(Tok::Number, text.substr(i, j - i), l, cl);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    auto two = [&](const char* s) {
      return text.compare(i, 2, s) == 0;
    };
    if (text.compare(i, 3, "<->") == 0) {
      push(Tok::IffArrow, "<->", l, cl);
      i += 3;
      col += 3;
      continue;
    }
    if (i + 1 < text.size() && two("->")) {
      push(Tok::Arrow, "->", l, cl);
      i += 2;
      col += 2;
      continue;
    }
    if (i + 1 < text.size() && two("!=")) {
      push(Tok::NotEqual, "!=", l, cl);
      i += 2;
      col += 2;
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '[': k = Tok::LBracket; break;
      case ']': k = Tok::RBracket; break;
      case '.': k = Tok::Dot; break;
      case '=': k = Tok::Equal; break;
      case '&': k = Tok::Amp; break;
      case '|': k = Tok::Pipe; break;
      case '!': k = Tok::Bang; break;
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      default:
        throw ParseError(l, cl, {"a formula token"},
                         "'" + std::string(1, c) + "'");
    }
    push(k, std::string(1, c), l, cl);
    ++i;
    ++col;
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

bool is_keyword(const std::string& s) {
  return s == "exists" || s == "forall" || s == "prime" || s == "P" ||
         s == "true" || s == "false";
}

// ---------------------------------------------------------------------------
// Recursive-descent parser
// ---------------------------------------------------------------------------

class Parser {
 public:
  static constexpr std::size_t kMaxTokens = 50000;
  static constexpr int kMaxDepth = 5000;

  explicit Parser(const std::string& text) : toks_(lex(text)) {
    if (toks_.size() > kMaxTokens)
      throw ResourceLimitError("formula longer than " +
                               std::to_string(kMaxTokens) + " tokens");
  }

  FormulaPtr formula() {
    FormulaPtr f = iff_level();
    expect_end();
    return f;
  }

  TermPtr term_only() {
    TermPtr t = term();
    expect_end();
    return t;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  void advance() { ++pos_; }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    const Token& t = cur();
    std::string found = t.kind == Tok::End
                            ? "end of input"
                            : "'" + t.text + "'";
    throw ParseError(t.line, t.col, std::move(expected), found);
  }

  void expect(Tok k) {
    if (cur().kind != k) fail({tok_name(k)});
    advance();
  }

  void expect_end() {
    if (cur().kind != Tok::End) fail({"end of input"});
  }

  bool at_ident(const char* s) const {
    return cur().kind == Tok::Ident && cur().text == s;
  }

  FormulaPtr iff_level() {
    FormulaPtr f = imp_level();
    while (cur().kind == Tok::IffArrow) {
      advance();
      f = f_iff(f, imp_level());
    }
    return f;
  }

  // '->' chains associate to the right.
  FormulaPtr imp_level() {
    std::vector<FormulaPtr> parts{or_level()};
    while (cur().kind == Tok::Arrow) {
      advance();
      parts.push_back(or_level());
    }
    FormulaPtr f = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;)
      f = f_implies(parts[i], f);
    return f;
  }

  FormulaPtr or_level() {
    FormulaPtr f = and_level();
    while (cur().kind == Tok::Pipe) {
      advance();
      f = f_or(f, and_level());
    }
    return f;
  }

  FormulaPtr and_level() {
    FormulaPtr f = unary();
    while (cur().kind == Tok::Amp) {
      advance();
      f = f_and(f, unary());
    }
    return f;
  }

  std::string binder() {
    if (cur().kind != Tok::Ident || is_keyword(cur().text))
      fail({"variable name"});
    std::string v = cur().text;
    advance();
    expect(Tok::Dot);
    return v;
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      // a resource error, not a ParseError: the paren backtracking must
      // not swallow it
      if (++parser.depth_ > kMaxDepth)
        throw ResourceLimitError("formula nesting deeper than " +
                                 std::to_string(kMaxDepth));
    }
    ~DepthGuard() { --parser.depth_; }
    Parser& parser;
  };

  FormulaPtr unary() {
    DepthGuard guard(*this);
    if (cur().kind == Tok::Bang) {
      advance();
      return f_not(unary());
    }
    if (at_ident("exists")) {
      advance();
      std::string v = binder();
      return f_exists(v, iff_level());  // quantifier scope is maximal
    }
    if (at_ident("forall")) {
      advance();
      std::string v = binder();
      return f_forall(v, iff_level());
    }
    if (cur().kind == Tok::LParen) {
      // either a parenthesised formula or a parenthesised term starting
      // an equality atom; backtrack on the term interpretation
      std::size_t save = pos_;
      advance();
      try {
        FormulaPtr f = iff_level();
        expect(Tok::RParen);
        // "(t1) = t2" would have parsed t1 as a formula only if t1 were
        // a formula, which terms are not, so this is unambiguous
        return f;
      } catch (const ParseError&) {
        pos_ = save;
        return atom();
      }
    }
    return atom();
  }

  FormulaPtr atom() {
    if (at_ident("true")) {
      advance();
      return f_true();
    }
    if (at_ident("false")) {
      advance();
      return f_false();
    }
    if (at_ident("prime")) {
      advance();
      if (cur().kind == Tok::LBracket) {
        advance();
        Int n = nat_subscript();
        expect(Tok::RBracket);
        expect(Tok::LParen);
        TermPtr t = term();
        expect(Tok::RParen);
        return f_prime_n(n, t);
      }
      expect(Tok::LParen);
      TermPtr t = term();
      expect(Tok::RParen);
      return f_prime(t);
    }
    if (at_ident("P")) {
      advance();
      expect(Tok::LBracket);
      Int n = nat_subscript();
      expect(Tok::RBracket);
      expect(Tok::LParen);
      TermPtr t = term();
      expect(Tok::RParen);
      return f_divides(n, t);
    }
    TermPtr t1 = term();
    if (cur().kind == Tok::Equal) {
      advance();
      return f_eq(t1, term());
    }
    if (cur().kind == Tok::NotEqual) {
      advance();
      return f_not(f_eq(t1, term()));  // '!=' desugars at parse time
    }
    fail({"'='", "'!='"});
  }

  Int nat_subscript() {
    if (cur().kind != Tok::Number) fail({"integer >= 2"});
    Int n(cur().text);
    if (n < 2) fail({"integer >= 2"});
    advance();
    return n;
  }

  TermPtr term() {
    TermPtr t = factor();
    while (cur().kind == Tok::Plus || cur().kind == Tok::Minus) {
      bool plus = cur().kind == Tok::Plus;
      advance();
      TermPtr r = factor();
      t = plus ? t_sum(t, r) : t_diff(t, r);
    }
    return t;
  }

  TermPtr factor() {
    DepthGuard guard(*this);
    if (cur().kind == Tok::Minus) {
      advance();
      return t_neg(factor());
    }
    if (cur().kind == Tok::Number) {
      Int k(cur().text);
      advance();
      if (cur().kind == Tok::Star) {
        advance();
        return t_scale(k, factor());
      }
      return t_int(k);
    }
    if (cur().kind == Tok::Ident) {
      if (is_keyword(cur().text)) fail({"variable name", "integer", "'('"});
      TermPtr v = t_var(cur().text);
      advance();
      return v;
    }
    if (cur().kind == Tok::LParen) {
      advance();
      TermPtr t = term();
      expect(Tok::RParen);
      return t;
    }
    fail({"variable name", "integer", "'-'", "'('"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

// ---------------------------------------------------------------------------
// Alpha renaming: bound variables made distinct from each other and
// from every free variable.
// ---------------------------------------------------------------------------

std::string fresh_name(const std::string& base, std::set<std::string>& used) {
  for (int k = 1;; ++k) {
    std::string cand = base + "_" + std::to_string(k);
    if (!used.count(cand)) return cand;
  }
}

TermPtr rename_term(const TermPtr& t,
                    const std::map<std::string, std::vector<std::string>>& env) {
  if (!t) return t;
  if (t->kind == TK::Var) {
    auto it = env.find(t->name);
    if (it != env.end() && !it->second.empty() && it->second.back() != t->name)
      return t_var(it->second.back());
    return t;
  }
  if (t->kind == TK::IntLit) return t;
  TermPtr l = rename_term(t->lhs, env);
  TermPtr r = rename_term(t->rhs, env);
  if (l == t->lhs && r == t->rhs) return t;
  TermNode n = *t;
  n.lhs = l;
  n.rhs = r;
  return make_term(std::move(n));
}

FormulaPtr rename_rec(const FormulaPtr& f, std::set<std::string>& used,
                      std::map<std::string, std::vector<std::string>>& env) {
  if (!f) return f;
  if (is_atom(f->kind)) {
    TermPtr a = rename_term(f->t1, env);
    TermPtr b = rename_term(f->t2, env);
    if (a == f->t1 && b == f->t2) return f;
    FormulaNode n = *f;
    n.t1 = a;
    n.t2 = b;
    return make_formula(std::move(n));
  }
  if (f->kind == FK::Exists || f->kind == FK::Forall) {
    std::string target = f->var;
    if (used.count(target)) target = fresh_name(f->var, used);
    used.insert(target);
    env[f->var].push_back(target);
    FormulaPtr body = rename_rec(f->f1, used, env);
    env[f->var].pop_back();
    if (target == f->var && body == f->f1) return f;
    FormulaNode n = *f;
    n.var = target;
    n.f1 = body;
    return make_formula(std::move(n));
  }
  FormulaPtr a = rename_rec(f->f1, used, env);
  FormulaPtr b = f->f2 ? rename_rec(f->f2, used, env) : nullptr;
  if (a == f->f1 && b == f->f2) return f;
  FormulaNode n = *f;
  n.f1 = a;
  n.f2 = b;
  return make_formula(std::move(n));
}

FormulaPtr alpha_rename(const FormulaPtr& f) {
  std::set<std::string> used = free_vars(f);
  std::map<std::string, std::vector<std::string>> env;
  return rename_rec(f, used, env);
}

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
  Parser p(text);
  return alpha_rename(p.formula());
}

TermPtr parse_term(const std::string& text) {
  Parser p(text);
  return p.term_only();
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace {

// term levels: 1 = sum/difference chain, 2 = factor
void print_term_rec(std::ostream& os, const TermPtr& t, int min_level) {
  int level;
  switch (t->kind) {
    case TK::Sum:
    case TK::Diff:
      level = 1;
      break;
    default:
      level = 2;
  }
  bool parens = level < min_level;
  if (parens) os << "(";
  switch (t->kind) {
    case TK::Var:
      os << t->name;
      break;
    case TK::IntLit:
      os << t->value.get_str();
      break;
    case TK::Sum:
    case TK::Diff: {
      // left-leaning chains are printed by walking the spine, not by
      // recursing through it
      std::vector<const TermNode*> spine;
      const TermNode* cur = t.get();
      while (cur->kind == TK::Sum || cur->kind == TK::Diff) {
        spine.push_back(cur);
        cur = cur->lhs.get();
      }
      print_term_rec(os, spine.back()->lhs, 1);
      for (auto it = spine.rbegin(); it != spine.rend(); ++it) {
        os << ((*it)->kind == TK::Sum ? " + " : " - ");
        print_term_rec(os, (*it)->rhs, 2);
      }
      break;
    }
    case TK::Scale:
      os << t->value.get_str() << "*";
      print_term_rec(os, t->lhs, 2);
      break;
    case TK::Neg:
      os << "-";
      print_term_rec(os, t->lhs, 2);
      break;
  }
  if (parens) os << ")";
}

// formula levels: 0 = quantifier (weakest: maximal scope), 1 = iff,
// 2 = implies, 3 = or, 4 = and, 5 = unary/atom
int formula_level(const FormulaPtr& f) {
  switch (f->kind) {
    case FK::Exists:
    case FK::Forall:
      return 0;
    case FK::Iff:
      return 1;
    case FK::Implies:
      return 2;
    case FK::Or:
      return 3;
    case FK::And:
      return 4;
    default:
      return 5;
  }
}

void print_formula_rec(std::ostream& os, const FormulaPtr& f, int min_level) {
  bool parens = formula_level(f) < min_level;
  if (parens) os << "(";
  switch (f->kind) {
    case FK::True:
      os << "true";
      break;
    case FK::False:
      os << "false";
      break;
    case FK::Eq: {
      // a negated equality prints through Not as '!'; '!=' sugar is only
      // accepted on input
      print_term_rec(os, f->t1, 1);
      os << " = ";
      print_term_rec(os, f->t2, 1);
      break;
    }
    case FK::Divides:
      os << "P[" << f->n.get_str() << "](";
      print_term_rec(os, f->t1, 1);
      os << ")";
      break;
    case FK::Prime:
      os << "prime(";
      print_term_rec(os, f->t1, 1);
      os << ")";
      break;
    case FK::PrimeN:
      os << "prime[" << f->n.get_str() << "](";
      print_term_rec(os, f->t1, 1);
      os << ")";
      break;
    case FK::Not:
      os << "!";
      print_formula_rec(os, f->f1, 5);
      break;
    case FK::And:
    case FK::Or:
    case FK::Iff: {
      // left-associative chains: walk the spine instead of recursing
      FK op = f->kind;
      int self = formula_level(f);
      const char* sep = op == FK::And ? " & " : op == FK::Or ? " | " : " <-> ";
      std::vector<const FormulaNode*> spine;
      const FormulaNode* cur = f.get();
      while (cur->kind == op) {
        spine.push_back(cur);
        cur = cur->f1.get();
      }
      print_formula_rec(os, spine.back()->f1, self);
      for (auto it = spine.rbegin(); it != spine.rend(); ++it) {
        os << sep;
        print_formula_rec(os, (*it)->f2, self + 1);
      }
      break;
    }
    case FK::Implies: {
      // right-associative chain
      std::vector<const FormulaNode*> spine;
      const FormulaNode* cur = f.get();
      while (cur->kind == FK::Implies) {
        spine.push_back(cur);
        cur = cur->f2.get();
      }
      for (const FormulaNode* n : spine) {
        print_formula_rec(os, n->f1, 3);
        os << " -> ";
      }
      print_formula_rec(os, spine.back()->f2, 2);
      break;
    }
    case FK::Exists:
    case FK::Forall:
      os << (f->kind == FK::Exists ? "exists " : "forall ") << f->var << ". ";
      print_formula_rec(os, f->f1, 0);
      break;
  }
  if (parens) os << ")";
}

}  // namespace

std::string print_term(const TermPtr& t) {
  std::ostringstream os;
  print_term_rec(os, t, 1);
  return os.str();
}

std::string print_formula(const FormulaPtr& f) {
  std::ostringstream os;
  print_formula_rec(os, f, 0);
  return os.str();
}

// ---------------------------------------------------------------------------
// Absorption-only simplifier
// ---------------------------------------------------------------------------

namespace {

void flatten(const FormulaPtr& f, FK op, std::vector<FormulaPtr>& out) {
  std::vector<FormulaPtr> work{f};
  while (!work.empty()) {
    FormulaPtr cur = std::move(work.back());
    work.pop_back();
    if (cur->kind == op) {
      work.push_back(cur->f2);
      work.push_back(cur->f1);
    } else {
      out.push_back(std::move(cur));
    }
  }
}

bool contains_formula(const std::vector<FormulaPtr>& xs, const FormulaPtr& f) {
  for (const auto& x : xs)
    if (formula_equal(x, f)) return true;
  return false;
}

}  // namespace

FormulaPtr simplify_absorb(const FormulaPtr& f) {
  if (is_atom(f->kind)) return f;
  if (f->kind == FK::Not) return mk_not(simplify_absorb(f->f1));
  if (f->kind == FK::Exists)
    return f_exists(f->var, simplify_absorb(f->f1));
  if (f->kind == FK::Forall)
    return f_forall(f->var, simplify_absorb(f->f1));
  if (f->kind == FK::Implies)
    return f_implies(simplify_absorb(f->f1), simplify_absorb(f->f2));
  if (f->kind == FK::Iff)
    return f_iff(simplify_absorb(f->f1), simplify_absorb(f->f2));

  FK op = f->kind;
  FK dual = op == FK::And ? FK::Or : FK::And;
  std::vector<FormulaPtr> kids_raw;
  flatten(f, op, kids_raw);
  std::vector<FormulaPtr> kids;
  for (const auto& k : kids_raw) {
    FormulaPtr s = simplify_absorb(k);
    if (!contains_formula(kids, s)) kids.push_back(s);
  }
  // absorption: within AND drop a disjunction containing another
  // conjunct; dually for OR
  std::vector<FormulaPtr> kept;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    bool absorbed = false;
    if (kids[i]->kind == dual) {
      std::vector<FormulaPtr> inner;
      flatten(kids[i], dual, inner);
      for (std::size_t j = 0; j < kids.size() && !absorbed; ++j)
        if (j != i && contains_formula(inner, kids[j])) absorbed = true;
    }
    if (!absorbed) kept.push_back(kids[i]);
  }
  if (op == FK::And) return mk_and(kept);
  return mk_or(kept);
}

}  // namespace primedec
