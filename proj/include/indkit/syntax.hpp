// Abstract syntax, s-expression parser and printer for terms, formulas and
// sequents of L(Sigma_N) and its extensions.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "indkit/model.hpp"

namespace indkit {

// ---------------------------------------------------------------------------
// S-expressions

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(int line_, int col_, const std::string& msg)
      : std::runtime_error(std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
        line(line_), col(col_) {}
};

struct SExpr {
  bool is_atom = true;
  std::string atom;             // valid when is_atom
  std::vector<SExpr> items;     // valid when !is_atom
  int line = 0, col = 0;

  const SExpr& at(size_t i) const;
  size_t size() const { return items.size(); }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, col, msg); }
};

// Tokenizes and reads one s-expression; trailing input is an error.
SExpr read_sexpr(const std::string& text);
// Reads a whole file: a sequence of top-level s-expressions.
std::vector<SExpr> read_sexprs(const std::string& text);
std::string print_sexpr(const SExpr& e);

// ---------------------------------------------------------------------------
// Terms

enum class TermKind { Var, Zero, Succ, Elem };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermKind kind;
  std::string var;   // Var
  TermPtr arg;       // Succ
  MElement elem;     // Elem
};

TermPtr t_var(std::string name);
TermPtr t_zero();
TermPtr t_succ(TermPtr t);
TermPtr t_elem(MElement e);
// s^n(0)
TermPtr t_num(unsigned n);
// s^n(t)
TermPtr t_succs(TermPtr t, unsigned n);

int cmp(const Term& a, const Term& b);
bool term_eq(const TermPtr& a, const TermPtr& b);

// ---------------------------------------------------------------------------
// Formulas

enum class FormulaKind { Pred, Eq, Rel, Truth, Falsity, Not, And, Or, Imp, Exists, Forall };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind;
  std::string name;             // Pred: predicate; Rel: relation; Exists/Forall: bound var
  std::vector<TermPtr> args;    // Pred, Eq (2), Rel (2)
  FormulaPtr lhs, rhs;          // connectives; quantifier body in lhs
};

FormulaPtr f_pred(std::string name, std::vector<TermPtr> args);
FormulaPtr f_eq(TermPtr a, TermPtr b);
FormulaPtr f_rel(std::string rel, TermPtr a, TermPtr b);
FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_imp(FormulaPtr a, FormulaPtr b);
FormulaPtr f_ex(std::string var, FormulaPtr body);
FormulaPtr f_all(std::string var, FormulaPtr body);
// Right-nested conjunction of one or more formulas.
FormulaPtr f_and_all(const std::vector<FormulaPtr>& fs);

int cmp(const Formula& a, const Formula& b);
bool formula_eq(const FormulaPtr& a, const FormulaPtr& b);

struct FormulaLess {
  bool operator()(const FormulaPtr& a, const FormulaPtr& b) const { return cmp(*a, *b) < 0; }
};

// Free variables, in sorted order.
std::set<std::string> free_vars_term(const TermPtr& t);
std::set<std::string> free_vars(const FormulaPtr& f);

using Subst = std::map<std::string, TermPtr>;

TermPtr substitute(const TermPtr& t, const Subst& s);
// Capture-avoiding simultaneous substitution; bound variables get primes.
FormulaPtr substitute(const FormulaPtr& f, const Subst& s);

// A variable not in `avoid`, formed from `base` by appending primes.
std::string fresh_var(const std::string& base, const std::set<std::string>& avoid);

// ---------------------------------------------------------------------------
// Signatures

struct Signature {
  std::map<std::string, int> preds;       // name -> arity (ordinary + inductive)
  std::set<std::string> inductive;        // subset of preds

  bool is_inductive(const std::string& n) const { return inductive.count(n) > 0; }
};

// {0, s, p, N} with N inductive.
Signature sigma_n();
// sigma_n plus the inductive order predicate le.
Signature sigma_n_le();

// ---------------------------------------------------------------------------
// Parsing / printing

TermPtr parse_term(const SExpr& e);
FormulaPtr formula_of_sexpr(const SExpr& e, const Signature& sig);
FormulaPtr parse_formula(const std::string& text, const Signature& sig = sigma_n());

std::string print_term(const TermPtr& t);
std::string print_formula(const FormulaPtr& f);

// ---------------------------------------------------------------------------
// Sequents: duplicate-free, canonically sorted formula sets.

struct Sequent {
  std::vector<FormulaPtr> ante, succ;  // sorted, unique

  static Sequent make(std::vector<FormulaPtr> a, std::vector<FormulaPtr> s);
  bool operator==(const Sequent& o) const;

  bool ante_has(const FormulaPtr& f) const;
  bool succ_has(const FormulaPtr& f) const;
};

// Set helpers on sorted formula vectors.
std::vector<FormulaPtr> fset(std::vector<FormulaPtr> fs);
std::vector<FormulaPtr> fset_insert(const std::vector<FormulaPtr>& fs, const FormulaPtr& f);
std::vector<FormulaPtr> fset_erase(const std::vector<FormulaPtr>& fs, const FormulaPtr& f);
std::vector<FormulaPtr> fset_union(const std::vector<FormulaPtr>& a, const std::vector<FormulaPtr>& b);
bool fset_subset(const std::vector<FormulaPtr>& a, const std::vector<FormulaPtr>& b);
bool fset_has(const std::vector<FormulaPtr>& fs, const FormulaPtr& f);
bool fset_eq(const std::vector<FormulaPtr>& a, const std::vector<FormulaPtr>& b);

std::set<std::string> free_vars(const Sequent& s);
Sequent substitute(const Sequent& s, const Subst& theta);

Sequent sequent_of_sexpr(const SExpr& e, const Signature& sig);
std::string print_sequent(const Sequent& s);

}  // namespace indkit
