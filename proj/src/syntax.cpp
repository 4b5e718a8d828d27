#include "indkit/syntax.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace indkit {

// ---------------------------------------------------------------------------
// S-expressions

const SExpr& SExpr::at(size_t i) const {
  if (is_atom || i >= items.size()) fail("malformed expression, missing item " + std::to_string(i));
  return items[i];
}

namespace {

struct Lexer {
  const std::string& text;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& t) : text(t) {}

  void advance() {
    if (pos < text.size()) {
      if (text[pos] == '\n') { line++; col = 1; } else { col++; }
      pos++;
    }
  }

  void skip_ws() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == ';') {
        while (pos < text.size() && text[pos] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  bool eof() { skip_ws(); return pos >= text.size(); }

  SExpr read() {
    skip_ws();
    if (pos >= text.size()) throw ParseError(line, col, "unexpected end of input");
    int l = line, c = col;
    char ch = text[pos];
    if (ch == '(') {
      advance();
      SExpr e; e.is_atom = false; e.line = l; e.col = c;
      while (true) {
        skip_ws();
        if (pos >= text.size()) throw ParseError(l, c, "unclosed '('");
        if (text[pos] == ')') { advance(); break; }
        e.items.push_back(read());
      }
      return e;
    }
    if (ch == ')') throw ParseError(l, c, "unexpected ')'");
    SExpr e; e.is_atom = true; e.line = l; e.col = c;
    while (pos < text.size()) {
      char d = text[pos];
      if (d == '(' || d == ')' || d == ';' || d == ' ' || d == '\t' || d == '\r' || d == '\n') break;
      e.atom.push_back(d);
      advance();
    }
    return e;
  }
};

}  // namespace

SExpr read_sexpr(const std::string& text) {
  Lexer lx(text);
  SExpr e = lx.read();
  if (!lx.eof()) throw ParseError(lx.line, lx.col, "trailing input after expression");
  return e;
}

std::vector<SExpr> read_sexprs(const std::string& text) {
  Lexer lx(text);
  std::vector<SExpr> out;
  while (!lx.eof()) out.push_back(lx.read());
  return out;
}

std::string print_sexpr(const SExpr& e) {
  if (e.is_atom) return e.atom;
  std::string s = "(";
  for (size_t i = 0; i < e.items.size(); i++) {
    if (i) s += ' ';
    s += print_sexpr(e.items[i]);
  }
  s += ')';
  return s;
}

// ---------------------------------------------------------------------------
// Terms

TermPtr t_var(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Var;
  t->var = std::move(name);
  return t;
}

TermPtr t_zero() {
  static TermPtr z = [] {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::Zero;
    return t;
  }();
  return z;
}

TermPtr t_succ(TermPtr t) {
  auto s = std::make_shared<Term>();
  s->kind = TermKind::Succ;
  s->arg = std::move(t);
  return s;
}

TermPtr t_elem(MElement e) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Elem;
  t->elem = std::move(e);
  return t;
}

TermPtr t_num(unsigned n) { return t_succs(t_zero(), n); }

TermPtr t_succs(TermPtr t, unsigned n) {
  for (unsigned i = 0; i < n; i++) t = t_succ(t);
  return t;
}

int cmp(const Term& a, const Term& b) {
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind) ? -1 : 1;
  switch (a.kind) {
    case TermKind::Zero: return 0;
    case TermKind::Var: return a.var.compare(b.var);
    case TermKind::Succ: return cmp(*a.arg, *b.arg);
    case TermKind::Elem:
      if (a.elem == b.elem) return 0;
      return a.elem < b.elem ? -1 : 1;
  }
  return 0;
}

bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  return cmp(*a, *b) == 0;
}

// ---------------------------------------------------------------------------
// Formulas

namespace {
FormulaPtr mk(FormulaKind k) {
  auto f = std::make_shared<Formula>();
  const_cast<Formula&>(*f).kind = k;
  return f;
}
}  // namespace

FormulaPtr f_pred(std::string name, std::vector<TermPtr> args) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Pred;
  f->name = std::move(name);
  f->args = std::move(args);
  return f;
}

FormulaPtr f_eq(TermPtr a, TermPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Eq;
  f->args = {std::move(a), std::move(b)};
  return f;
}

FormulaPtr f_rel(std::string rel, TermPtr a, TermPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Rel;
  f->name = std::move(rel);
  f->args = {std::move(a), std::move(b)};
  return f;
}

FormulaPtr f_true() { static FormulaPtr t = mk(FormulaKind::Truth); return t; }
FormulaPtr f_false() { static FormulaPtr t = mk(FormulaKind::Falsity); return t; }

FormulaPtr f_not(FormulaPtr a) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Not;
  f->lhs = std::move(a);
  return f;
}

namespace {
FormulaPtr binop(FormulaKind k, FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}
FormulaPtr quant(FormulaKind k, std::string var, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->name = std::move(var);
  f->lhs = std::move(body);
  return f;
}
}  // namespace

FormulaPtr f_and(FormulaPtr a, FormulaPtr b) { return binop(FormulaKind::And, std::move(a), std::move(b)); }
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) { return binop(FormulaKind::Or, std::move(a), std::move(b)); }
FormulaPtr f_imp(FormulaPtr a, FormulaPtr b) { return binop(FormulaKind::Imp, std::move(a), std::move(b)); }
FormulaPtr f_ex(std::string var, FormulaPtr body) { return quant(FormulaKind::Exists, std::move(var), std::move(body)); }
FormulaPtr f_all(std::string var, FormulaPtr body) { return quant(FormulaKind::Forall, std::move(var), std::move(body)); }

FormulaPtr f_and_all(const std::vector<FormulaPtr>& fs) {
  assert(!fs.empty());
  FormulaPtr acc = fs.back();
  for (size_t i = fs.size() - 1; i-- > 0;) acc = f_and(fs[i], acc);
  return acc;
}

int cmp(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind) ? -1 : 1;
  if (int c = a.name.compare(b.name)) return c;
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  for (size_t i = 0; i < a.args.size(); i++)
    if (int c = cmp(*a.args[i], *b.args[i])) return c;
  auto cmp_child = [](const FormulaPtr& x, const FormulaPtr& y) -> int {
    if (!x && !y) return 0;
    if (!x) return -1;
    if (!y) return 1;
    return cmp(*x, *y);
  };
  if (int c = cmp_child(a.lhs, b.lhs)) return c;
  return cmp_child(a.rhs, b.rhs);
}

bool formula_eq(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  return cmp(*a, *b) == 0;
}

std::set<std::string> free_vars_term(const TermPtr& t) {
  std::set<std::string> out;
  const Term* p = t.get();
  while (p) {
    if (p->kind == TermKind::Var) { out.insert(p->var); break; }
    if (p->kind == TermKind::Succ) { p = p->arg.get(); continue; }
    break;
  }
  return out;
}

namespace {
void fv(const FormulaPtr& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f->kind) {
    case FormulaKind::Pred:
    case FormulaKind::Eq:
    case FormulaKind::Rel:
      for (auto& t : f->args)
        for (auto& v : free_vars_term(t))
          if (!bound.count(v)) out.insert(v);
      return;
    case FormulaKind::Truth:
    case FormulaKind::Falsity:
      return;
    case FormulaKind::Not:
      fv(f->lhs, bound, out);
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp:
      fv(f->lhs, bound, out);
      fv(f->rhs, bound, out);
      return;
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      bool fresh = bound.insert(f->name).second;
      fv(f->lhs, bound, out);
      if (fresh) bound.erase(f->name);
      return;
    }
  }
}
}  // namespace

std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  fv(f, bound, out);
  return out;
}

std::string fresh_var(const std::string& base, const std::set<std::string>& avoid) {
  std::string v = base;
  while (avoid.count(v)) v += '\'';
  return v;
}

TermPtr substitute(const TermPtr& t, const Subst& s) {
  switch (t->kind) {
    case TermKind::Var: {
      auto it = s.find(t->var);
      return it == s.end() ? t : it->second;
    }
    case TermKind::Succ: {
      TermPtr a = substitute(t->arg, s);
      return a == t->arg ? t : t_succ(a);
    }
    default:
      return t;
  }
}

FormulaPtr substitute(const FormulaPtr& f, const Subst& s) {
  if (s.empty()) return f;
  switch (f->kind) {
    case FormulaKind::Pred:
    case FormulaKind::Eq:
    case FormulaKind::Rel: {
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      bool changed = false;
      for (auto& t : f->args) {
        args.push_back(substitute(t, s));
        changed |= args.back() != t;
      }
      if (!changed) return f;
      if (f->kind == FormulaKind::Pred) return f_pred(f->name, std::move(args));
      if (f->kind == FormulaKind::Eq) return f_eq(args[0], args[1]);
      return f_rel(f->name, args[0], args[1]);
    }
    case FormulaKind::Truth:
    case FormulaKind::Falsity:
      return f;
    case FormulaKind::Not:
      return f_not(substitute(f->lhs, s));
    case FormulaKind::And:
      return f_and(substitute(f->lhs, s), substitute(f->rhs, s));
    case FormulaKind::Or:
      return f_or(substitute(f->lhs, s), substitute(f->rhs, s));
    case FormulaKind::Imp:
      return f_imp(substitute(f->lhs, s), substitute(f->rhs, s));
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      Subst inner = s;
      inner.erase(f->name);
      if (inner.empty()) return f;
      // Rename the binder when it would capture a substituted term.
      std::set<std::string> range_fv;
      for (auto& [v, t] : inner) {
        (void)v;
        auto tv = free_vars_term(t);
        range_fv.insert(tv.begin(), tv.end());
      }
      std::string bv = f->name;
      FormulaPtr body = f->lhs;
      if (range_fv.count(bv)) {
        std::set<std::string> avoid = range_fv;
        auto bfv = free_vars(body);
        avoid.insert(bfv.begin(), bfv.end());
        for (auto& [v, t] : inner) { (void)t; avoid.insert(v); }
        std::string nv = fresh_var(bv, avoid);
        Subst ren;
        ren[bv] = t_var(nv);
        body = substitute(body, ren);
        bv = nv;
      }
      body = substitute(body, inner);
      return f->kind == FormulaKind::Exists ? f_ex(bv, body) : f_all(bv, body);
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Signatures

Signature sigma_n() {
  Signature s;
  s.preds = {{"N", 1}, {"p", 2}};
  s.inductive = {"N"};
  return s;
}

Signature sigma_n_le() {
  Signature s = sigma_n();
  s.preds["le"] = 2;
  s.inductive.insert("le");
  return s;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

const std::set<std::string> kReserved = {"true", "false", "not", "and", "or", "imp", "ex",
                                         "all",  "s",     "rel", "=",  "0",  "elemN", "elemZ",
                                         "seq",  "ante",  "succ", "node", "rule", "children",
                                         "bud",  "root"};

bool is_integer(const std::string& s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-') ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); i++)
    if (!isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

TermPtr parse_term(const SExpr& e) {
  if (e.is_atom) {
    if (e.atom == "0") return t_zero();
    if (is_integer(e.atom)) e.fail("bare integer is not a term; use 0, (s ..), (elemN k) or (elemZ k)");
    if (kReserved.count(e.atom)) e.fail("reserved word '" + e.atom + "' used as a variable");
    return t_var(e.atom);
  }
  if (e.items.empty() || !e.items[0].is_atom) e.fail("malformed term");
  const std::string& h = e.items[0].atom;
  if (h == "s") {
    if (e.size() != 2) e.fail("(s T) takes one argument");
    return t_succ(parse_term(e.at(1)));
  }
  if (h == "elemN" || h == "elemZ") {
    if (e.size() != 2 || !e.at(1).is_atom || !is_integer(e.at(1).atom)) e.fail("(" + h + " INT) takes an integer");
    Int k(e.at(1).atom);
    if (h == "elemN") {
      if (k < 0) e.fail("(elemN k) requires k >= 0");
      return t_elem(MElement::nat(k));
    }
    return t_elem(MElement::zet(k));
  }
  e.fail("unknown term constructor '" + h + "'");
}

FormulaPtr formula_of_sexpr(const SExpr& e, const Signature& sig) {
  if (e.is_atom) {
    if (e.atom == "true") return f_true();
    if (e.atom == "false") return f_false();
    e.fail("expected a formula, got atom '" + e.atom + "'");
  }
  if (e.items.empty() || !e.items[0].is_atom) e.fail("malformed formula");
  const std::string& h = e.items[0].atom;
  auto need = [&](size_t n, const std::string& what) {
    if (e.size() != n + 1) e.fail("(" + h + " ...) takes " + what);
  };
  if (h == "not") { need(1, "one formula"); return f_not(formula_of_sexpr(e.at(1), sig)); }
  if (h == "and") { need(2, "two formulas"); return f_and(formula_of_sexpr(e.at(1), sig), formula_of_sexpr(e.at(2), sig)); }
  if (h == "or") { need(2, "two formulas"); return f_or(formula_of_sexpr(e.at(1), sig), formula_of_sexpr(e.at(2), sig)); }
  if (h == "imp") { need(2, "two formulas"); return f_imp(formula_of_sexpr(e.at(1), sig), formula_of_sexpr(e.at(2), sig)); }
  if (h == "ex" || h == "all") {
    need(2, "a variable and a formula");
    if (!e.at(1).is_atom || is_integer(e.at(1).atom) || kReserved.count(e.at(1).atom))
      e.at(1).fail("expected a bound variable name");
    auto body = formula_of_sexpr(e.at(2), sig);
    return h == "ex" ? f_ex(e.at(1).atom, body) : f_all(e.at(1).atom, body);
  }
  if (h == "=") { need(2, "two terms"); return f_eq(parse_term(e.at(1)), parse_term(e.at(2))); }
  if (h == "rel") {
    need(3, "a relation name and two terms");
    if (!e.at(1).is_atom) e.at(1).fail("expected a relation name");
    return f_rel(e.at(1).atom, parse_term(e.at(2)), parse_term(e.at(3)));
  }
  auto it = sig.preds.find(h);
  if (it == sig.preds.end()) e.fail("unknown predicate symbol '" + h + "'");
  if (e.size() != static_cast<size_t>(it->second) + 1)
    e.fail("arity mismatch: '" + h + "' takes " + std::to_string(it->second) + " argument(s)");
  std::vector<TermPtr> args;
  for (size_t i = 1; i < e.size(); i++) args.push_back(parse_term(e.at(i)));
  return f_pred(h, std::move(args));
}

FormulaPtr parse_formula(const std::string& text, const Signature& sig) {
  return formula_of_sexpr(read_sexpr(text), sig);
}

// ---------------------------------------------------------------------------
// Printing

std::string print_term(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Zero: return "0";
    case TermKind::Var: return t->var;
    case TermKind::Succ: return "(s " + print_term(t->arg) + ")";
    case TermKind::Elem: {
      const MElement& e = t->elem;
      return std::string(e.zeta ? "(elemZ " : "(elemN ") + e.index.str() + ")";
    }
  }
  return "?";
}

std::string print_formula(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Truth: return "true";
    case FormulaKind::Falsity: return "false";
    case FormulaKind::Pred: {
      std::string s = "(" + f->name;
      for (auto& t : f->args) s += " " + print_term(t);
      return s + ")";
    }
    case FormulaKind::Eq: return "(= " + print_term(f->args[0]) + " " + print_term(f->args[1]) + ")";
    case FormulaKind::Rel:
      return "(rel " + f->name + " " + print_term(f->args[0]) + " " + print_term(f->args[1]) + ")";
    case FormulaKind::Not: return "(not " + print_formula(f->lhs) + ")";
    case FormulaKind::And: return "(and " + print_formula(f->lhs) + " " + print_formula(f->rhs) + ")";
    case FormulaKind::Or: return "(or " + print_formula(f->lhs) + " " + print_formula(f->rhs) + ")";
    case FormulaKind::Imp: return "(imp " + print_formula(f->lhs) + " " + print_formula(f->rhs) + ")";
    case FormulaKind::Exists: return "(ex " + f->name + " " + print_formula(f->lhs) + ")";
    case FormulaKind::Forall: return "(all " + f->name + " " + print_formula(f->lhs) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Sequents

std::vector<FormulaPtr> fset(std::vector<FormulaPtr> fs) {
  std::sort(fs.begin(), fs.end(), FormulaLess{});
  fs.erase(std::unique(fs.begin(), fs.end(),
                       [](const FormulaPtr& a, const FormulaPtr& b) { return formula_eq(a, b); }),
           fs.end());
  return fs;
}

std::vector<FormulaPtr> fset_insert(const std::vector<FormulaPtr>& fs, const FormulaPtr& f) {
  auto out = fs;
  out.push_back(f);
  return fset(std::move(out));
}

std::vector<FormulaPtr> fset_erase(const std::vector<FormulaPtr>& fs, const FormulaPtr& f) {
  std::vector<FormulaPtr> out;
  for (auto& g : fs)
    if (!formula_eq(g, f)) out.push_back(g);
  return out;
}

std::vector<FormulaPtr> fset_union(const std::vector<FormulaPtr>& a, const std::vector<FormulaPtr>& b) {
  auto out = a;
  out.insert(out.end(), b.begin(), b.end());
  return fset(std::move(out));
}

bool fset_has(const std::vector<FormulaPtr>& fs, const FormulaPtr& f) {
  return std::binary_search(fs.begin(), fs.end(), f, FormulaLess{});
}

bool fset_subset(const std::vector<FormulaPtr>& a, const std::vector<FormulaPtr>& b) {
  for (auto& f : a)
    if (!fset_has(b, f)) return false;
  return true;
}

bool fset_eq(const std::vector<FormulaPtr>& a, const std::vector<FormulaPtr>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); i++)
    if (!formula_eq(a[i], b[i])) return false;
  return true;
}

Sequent Sequent::make(std::vector<FormulaPtr> a, std::vector<FormulaPtr> s) {
  Sequent q;
  q.ante = fset(std::move(a));
  q.succ = fset(std::move(s));
  return q;
}

bool Sequent::operator==(const Sequent& o) const { return fset_eq(ante, o.ante) && fset_eq(succ, o.succ); }

bool Sequent::ante_has(const FormulaPtr& f) const { return fset_has(ante, f); }
bool Sequent::succ_has(const FormulaPtr& f) const { return fset_has(succ, f); }

std::set<std::string> free_vars(const Sequent& s) {
  std::set<std::string> out;
  for (auto& f : s.ante) { auto v = free_vars(f); out.insert(v.begin(), v.end()); }
  for (auto& f : s.succ) { auto v = free_vars(f); out.insert(v.begin(), v.end()); }
  return out;
}

Sequent substitute(const Sequent& s, const Subst& theta) {
  std::vector<FormulaPtr> a, c;
  for (auto& f : s.ante) a.push_back(substitute(f, theta));
  for (auto& f : s.succ) c.push_back(substitute(f, theta));
  return Sequent::make(std::move(a), std::move(c));
}

Sequent sequent_of_sexpr(const SExpr& e, const Signature& sig) {
  if (e.is_atom || e.size() != 3 || !e.at(0).is_atom || e.at(0).atom != "seq")
    e.fail("expected (seq (ante ...) (succ ...))");
  auto side = [&](const SExpr& x, const char* tag) {
    if (x.is_atom || x.items.empty() || !x.items[0].is_atom || x.items[0].atom != tag)
      x.fail(std::string("expected (") + tag + " ...)");
    std::vector<FormulaPtr> fs;
    for (size_t i = 1; i < x.size(); i++) fs.push_back(formula_of_sexpr(x.at(i), sig));
    return fs;
  };
  return Sequent::make(side(e.at(1), "ante"), side(e.at(2), "succ"));
}

std::string print_sequent(const Sequent& s) {
  std::string out = "(seq (ante";
  for (auto& f : s.ante) out += " " + print_formula(f);
  out += ") (succ";
  for (auto& f : s.succ) out += " " + print_formula(f);
  return out + "))";
}

}  // namespace indkit
