#include <doctest.h>

#include <algorithm>
#include <random>
#include <unordered_set>

#include "eqa/rewrite.hpp"
#include "eqa/term.hpp"
#include "test_support.hpp"

using namespace eqa;
using eqa::testing::jsig;
using eqa::testing::random_substitution;
using eqa::testing::random_term;

TEST_CASE("terms print infix for operators, prefix for identifiers") {
  const Term t = binop("->", binop("*", var(0), Term::constant("e")), var(1));
  CHECK(to_string(t) == "((x0 * e) -> x1)");
  CHECK(to_string(Term::app("t", {var(0), var(2)})) == "t(x0, x2)");
  CHECK(to_string(Equation{var(0), Term::constant("e")}) == "x0 = e");
}

TEST_CASE("structural equality, hashing and metrics") {
  const Term a = binop("*", var(0), binop("->", var(1), var(0)));
  const Term b = binop("*", var(0), binop("->", var(1), var(0)));
  CHECK(a == b);
  CHECK(a.hash() == b.hash());
  CHECK(a.size() == 5);
  CHECK(a.depth() == 2);
  CHECK(term_metrics(a) == TermMetrics{5, 2});
  CHECK(a != binop("*", var(0), binop("->", var(0), var(1))));
  std::unordered_set<Term, TermHash> set{a, b};
  CHECK(set.size() == 1);
}

TEST_CASE("compare_terms is a strict total order on random terms") {
  std::mt19937 rng(7);
  std::vector<Term> ts;
  for (int i = 0; i < 200; ++i) ts.push_back(random_term(rng, jsig(), 3));
  for (const auto& a : ts) {
    CHECK(compare_terms(a, a) == 0);
    for (const auto& b : ts) {
      CHECK(compare_terms(a, b) == -compare_terms(b, a));
      CHECK((compare_terms(a, b) == 0) == (a == b));
    }
  }
  std::sort(ts.begin(), ts.end(), TermLess{});
  CHECK(std::is_sorted(ts.begin(), ts.end(), TermLess{}));
}

TEST_CASE("free variables and balance") {
  const Term t = binop("*", var(2), binop("->", var(0), var(2)));
  CHECK(free_variables(t) == VarSet{0, 2});
  CHECK(is_balanced(Equation{binop("*", var(0), var(1)), binop("*", var(1), var(0))}));
  CHECK_FALSE(is_balanced(Equation{binop("->", var(0), var(0)), Term::constant("e")}));
  CHECK(is_balanced(Equation{binop("*", var(0), var(0)), var(0)}));
  CHECK_FALSE(is_balanced(Equation{binop("*", var(0), var(1)), var(0)}));
}

TEST_CASE("balance survives substitution") {
  std::mt19937 rng(5);
  int balanced_seen = 0;
  for (int i = 0; i < 2000; ++i) {
    const Equation eq{random_term(rng, jsig(), 3), random_term(rng, jsig(), 3)};
    if (!is_balanced(eq)) continue;
    ++balanced_seen;
    CHECK(is_balanced(substitute(eq, random_substitution(rng, jsig()))));
  }
  CHECK(balanced_seen > 50);
}

TEST_CASE("substitution composition law on random terms") {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    const Term t = random_term(rng, jsig(), 4);
    const Substitution s1 = random_substitution(rng, jsig());
    const Substitution s2 = random_substitution(rng, jsig());
    CHECK(substitute(substitute(t, s1), s2) == substitute(t, compose(s1, s2)));
    CHECK(substitute(t, Substitution{}) == t);
  }
}

TEST_CASE("substitution leaves terms outside its domain unchanged") {
  std::mt19937 rng(13);
  for (int i = 0; i < 100; ++i) {
    const Term t = random_term(rng, jsig(), 3);
    Substitution s;
    s.set(7, Term::constant("e"));
    CHECK(substitute(t, s) == t);
  }
}

TEST_CASE("positions, subterm_at and replace_at agree") {
  std::mt19937 rng(17);
  for (int i = 0; i < 100; ++i) {
    const Term t = random_term(rng, jsig(), 4);
    const auto ps = positions(t);
    CHECK(ps.size() == t.size());
    CHECK(ps.front().empty());
    for (const auto& p : ps) {
      CHECK(replace_at(t, p, subterm_at(t, p)) == t);
      const Term r = replace_at(t, p, var(9));
      CHECK(subterm_at(r, p) == var(9));
    }
  }
}

TEST_CASE("match finds the instance and unify a common instance") {
  std::mt19937 rng(19);
  for (int i = 0; i < 300; ++i) {
    const Term pattern = random_term(rng, jsig(), 3);
    const Substitution s = random_substitution(rng, jsig());
    const Term inst = substitute(pattern, s);
    Substitution found;
    REQUIRE(match(pattern, inst, found));
    CHECK(substitute(pattern, found) == inst);

    const Term a = random_term(rng, jsig(), 3);
    const Term b = shift_variables(random_term(rng, jsig(), 3), 10);
    if (auto u = unify(a, b)) {
      CHECK(substitute(a, *u) == substitute(b, *u));
      CHECK(compose(*u, *u) == *u);
    }
  }
  CHECK_FALSE(unify(var(0), binop("*", var(0), var(1))).has_value());
  CHECK_FALSE(unify(Term::constant("e"), binop("*", var(0), var(1))).has_value());
}

TEST_CASE("KBO is irreflexive, asymmetric and contains the strict subterm relation") {
  Precedence prec;
  prec.set(Symbol("e"), 0);
  prec.set(Symbol("*"), 1);
  prec.set(Symbol("->"), 2);
  std::mt19937 rng(23);
  for (int i = 0; i < 200; ++i) {
    const Term s = random_term(rng, jsig(), 3);
    const Term t = random_term(rng, jsig(), 3);
    CHECK_FALSE(kbo_greater(s, s, prec));
    CHECK_FALSE((kbo_greater(s, t, prec) && kbo_greater(t, s, prec)));
    for (const auto& p : positions(s)) {
      if (!p.empty()) CHECK(kbo_greater(s, subterm_at(s, p), prec));
    }
    // Closed under substitution.
    const Substitution sub = random_substitution(rng, jsig());
    if (kbo_greater(s, t, prec)) {
      CHECK(kbo_greater(substitute(s, sub), substitute(t, sub), prec));
    }
  }
}

TEST_CASE("canonical renaming numbers variables by first occurrence") {
  Equation eq{binop("*", var(5), var(2)), var(5)};
  const Substitution r = canonical_renaming(eq);
  const Equation c = substitute(eq, r);
  CHECK(to_string(c) == "(x0 * x1) = x0");
}

TEST_CASE("well-formedness check rejects unknown symbols and arities") {
  const Signature sig = jsig();
  CHECK_NOTHROW(check_well_formed(binop("*", var(0), Term::constant("e")), sig));
  CHECK_THROWS_AS(check_well_formed(binop("+", var(0), var(1)), sig), std::invalid_argument);
  CHECK_THROWS_AS(check_well_formed(Term::app("*", {var(0)}), sig), std::invalid_argument);
}
