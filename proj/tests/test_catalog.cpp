#include <doctest.h>

#include "eqa/catalog.hpp"
#include "eqa/dsl.hpp"
#include "eqa/model.hpp"
#include "eqa/proof.hpp"
#include "eqa/prover.hpp"
#include "test_support.hpp"

using namespace eqa;
using eqa::testing::small_budget;

namespace {

Equation eq(const Theory& t, std::string_view text) { return parse_equation(text, t.signature); }

std::vector<std::string> labels(const Theory& t) {
  std::vector<std::string> out;
  for (const auto& a : t.axioms) out.push_back(a.label);
  return out;
}

void require_proved(const Theory& t, const Equation& goal, double seconds = 30) {
  const auto r = prove(t, goal, small_budget(seconds));
  REQUIRE_MESSAGE(r.proved(), t.name << " |- " << to_string(goal));
  CHECK(check_proof(t, *r.proof).valid);
}

}  // namespace

TEST_CASE("axiom lookup by index, alias and label") {
  CHECK(catalog_axioms().size() == 22);
  const Term t = named_term("t");
  const Signature sig = testing::jsig();
  CHECK(axiom(19).equation ==
        eq(Theory{"", sig, {}}, "(((x -> y) -> y) * (((x -> y) -> y) -> x)) = x"));
  CHECK(axiom("M-axiom").index == 21);
  CHECK(axiom("m_axiom").index == 21);
  CHECK(axiom("monotone exchange").index == 21);
  CHECK(axiom("21").index == 21);
  CHECK(to_string(axiom(5).equation) == "(x0 -> x0) = e");
  CHECK_THROWS_AS(axiom(23), std::invalid_argument);
  CHECK_THROWS_AS(axiom("nothing"), std::invalid_argument);
  for (int i = 1; i <= 22; ++i) CHECK(axiom(i).index == i);
}

TEST_CASE("named theories") {
  CHECK(labels(theory_by_code("J").theory) == std::vector<std::string>{"refl", "unit", "mdiv"});
  const Theory hoop = theory_by_code("hoop").theory;
  REQUIRE(hoop.axioms.size() == 8);
  for (int i = 1; i <= 8; ++i) CHECK(hoop.axioms[i - 1].label == axiom(i).label);
  CHECK(labels(theory_by_code("MC").theory) ==
        std::vector<std::string>{"refl", "unit", "m_axiom", "c_axiom"});
  CHECK(labels(theory_by_code("heyting").theory).back() == "fusion");
  CHECK(theory_by_code("CB").theory == theory_by_code("BC").theory);
  CHECK(theory_by_code("CB").code == "BC");
  CHECK_THROWS_AS(theory_by_code("XYZ"), std::invalid_argument);
}

TEST_CASE("letter-code theories use only the symbols they mention") {
  const Theory c = theory_by_code("C").theory;
  CHECK_FALSE(c.signature.contains("*"));
  CHECK(c.signature.contains("->"));
}

TEST_CASE("every axiom and catalog theory is well-formed and round-trips") {
  for (const auto& a : catalog_axioms()) {
    CHECK_NOTHROW(theory_from_axioms("one", {a.index}));
    CHECK_NOTHROW(check_well_formed(theory_from_axioms("one", {a.index})));
  }
  for (const auto& code : named_theory_codes()) {
    const Theory t = theory_by_code(code).theory;
    CHECK_NOTHROW(check_well_formed(t));
    CHECK(parse_theory(print_theory(t)) == t);
  }
}

TEST_CASE("named terms") {
  const Signature sig = testing::jsig();
  auto term = [&](std::string_view s) { return parse_term(s, sig); };
  CHECK(named_term("t") == term("((x -> y) -> y)"));
  CHECK(named_term("theta2") == term("(((x -> y) -> y) -> x)"));
  CHECK(named_term("p-johnstone") == term("(((y -> z) -> x) * (((y -> z) -> z) -> y))"));
  CHECK(t_of(var(2), var(0)) == term("((z -> x) -> x)"));
  for (const auto& k : named_term_keys()) CHECK_NOTHROW(named_term(k));
  CHECK_THROWS_AS(named_term("nothing"), std::invalid_argument);
}

TEST_CASE("group theory proves the divisions and reflexivity") {
  const Theory g = theory_by_code("group").theory;
  require_proved(g, axiom(12).equation);
  require_proved(g, axiom(13).equation);
  require_proved(g, axiom(5).equation);
}

TEST_CASE("unit-absorption follows from reflexivity and the K-axiom") {
  require_proved(theory_by_code("K").theory, axiom(11).equation);
}

TEST_CASE("J proves right identity and satisfies the order axioms on small models") {
  const Theory j = theory_by_code("J").theory;
  require_proved(j, eq(j, "(x * e) = x"));
}

TEST_CASE("letter codes are literal: C alone does not give the B-axiom") {
  const Theory c = theory_by_code("C").theory;
  const auto cm = find_countermodel(c, axiom(17).equation, 4);
  REQUIRE(cm);
  CHECK(satisfies_all(cm->model, c));
  CHECK_FALSE(satisfies(cm->model, axiom(17).equation).holds);
  // With the B-axiom added the two codes differ as theories, not as labels.
  CHECK(theory_by_code("BC").theory.axioms.size() == c.axioms.size() + 1);
}
