#include "eqa/rewrite.hpp"

#include <limits>
#include <map>

namespace eqa {

bool match(const Term& pattern, const Term& term, Substitution& s) {
  if (pattern.is_var()) {
    if (const Term* bound = s.get(pattern.var_index())) return *bound == term;
    s.set(pattern.var_index(), term);
    return true;
  }
  if (term.is_var() || pattern.symbol() != term.symbol() || pattern.arity() != term.arity()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    if (!match(pattern.args()[i], term.args()[i], s)) return false;
  }
  return true;
}

namespace {

Term resolve(const Term& t, const std::map<Term::VarIndex, Term>& bind) {
  if (t.is_var()) {
    auto it = bind.find(t.var_index());
    return it == bind.end() ? t : resolve(it->second, bind);
  }
  if (t.is_constant()) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(resolve(a, bind));
  return Term::app(t.symbol(), std::move(args));
}

bool occurs(Term::VarIndex v, const Term& t, const std::map<Term::VarIndex, Term>& bind) {
  if (t.is_var()) {
    if (t.var_index() == v) return true;
    auto it = bind.find(t.var_index());
    return it != bind.end() && occurs(v, it->second, bind);
  }
  for (const auto& a : t.args()) {
    if (occurs(v, a, bind)) return true;
  }
  return false;
}

Term walk(Term t, const std::map<Term::VarIndex, Term>& bind) {
  while (t.is_var()) {
    auto it = bind.find(t.var_index());
    if (it == bind.end()) break;
    t = it->second;
  }
  return t;
}

bool unify_into(const Term& a0, const Term& b0, std::map<Term::VarIndex, Term>& bind) {
  Term a = walk(a0, bind);
  Term b = walk(b0, bind);
  if (a.is_var() && b.is_var() && a.var_index() == b.var_index()) return true;
  if (a.is_var()) {
    if (occurs(a.var_index(), b, bind)) return false;
    bind.emplace(a.var_index(), b);
    return true;
  }
  if (b.is_var()) return unify_into(b, a, bind);
  if (a.symbol() != b.symbol() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!unify_into(a.args()[i], b.args()[i], bind)) return false;
  }
  return true;
}

void rename_walk(const Term& t, Substitution& s, Term::VarIndex& next) {
  if (t.is_var()) {
    if (!s.contains(t.var_index())) s.set(t.var_index(), Term::var(next++));
    return;
  }
  for (const auto& a : t.args()) rename_walk(a, s, next);
}

}  // namespace

std::optional<Substitution> unify(const Term& a, const Term& b) {
  std::map<Term::VarIndex, Term> bind;
  if (!unify_into(a, b, bind)) return std::nullopt;
  Substitution s;
  for (const auto& [v, t] : bind) s.set(v, resolve(t, bind));
  return s;
}

Term shift_variables(const Term& t, Term::VarIndex offset) {
  if (offset == 0 || t.var_bound() == 0) return t;
  if (t.is_var()) return Term::var(t.var_index() + offset);
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(shift_variables(a, offset));
  return Term::app(t.symbol(), std::move(args));
}

Substitution canonical_renaming(const Equation& eq) {
  Substitution s;
  Term::VarIndex next = 0;
  rename_walk(eq.lhs, s, next);
  rename_walk(eq.rhs, s, next);
  return s;
}

long Precedence::rank(Symbol s) const {
  auto it = rank_.find(s.id());
  return it == rank_.end() ? std::numeric_limits<long>::min() : it->second;
}

int Precedence::compare(Symbol a, Symbol b) const {
  if (a == b) return 0;
  long ra = rank(a), rb = rank(b);
  if (ra != rb) return ra < rb ? -1 : 1;
  return compare_symbols(a, b);
}

namespace {

void count_vars(const Term& t, std::map<Term::VarIndex, int>& c, int delta) {
  if (t.is_var()) {
    c[t.var_index()] += delta;
    return;
  }
  for (const auto& a : t.args()) count_vars(a, c, delta);
}

bool kbo_core(const Term& s, const Term& t, const Precedence& prec) {
  if (s.size() != t.size()) return s.size() > t.size();
  if (s.is_var() || t.is_var()) return false;
  int c = prec.compare(s.symbol(), t.symbol());
  if (c != 0) return c > 0;
  for (std::size_t i = 0; i < s.arity(); ++i) {
    if (s.args()[i] != t.args()[i]) return kbo_greater(s.args()[i], t.args()[i], prec);
  }
  return false;
}

}  // namespace

bool kbo_greater(const Term& s, const Term& t, const Precedence& prec) {
  if (s == t) return false;
  if (t.var_bound() != 0) {
    std::map<Term::VarIndex, int> c;
    count_vars(s, c, 1);
    count_vars(t, c, -1);
    for (const auto& [v, n] : c) {
      if (n < 0) return false;
    }
  }
  return kbo_core(s, t, prec);
}

}  // namespace eqa
