#include <doctest.h>

#include <random>

#include "eqa/catalog.hpp"
#include "eqa/dsl.hpp"
#include "eqa/model.hpp"
#include "eqa/prover.hpp"
#include "test_support.hpp"

using namespace eqa;
using eqa::testing::random_term;

namespace {

const char* kJohnstone =
    "theory J\nsig * : 2; -> : 2; e : 0;\naxiom refl: (x -> x) = e;\naxiom unit: (e -> x) = x;\n"
    "axiom mdiv: (((x -> y) -> y) * (((x -> y) -> y) -> x)) = x;";

Term sized_term(std::mt19937& rng, const Signature& sig, std::size_t max_size) {
  for (;;) {
    Term t = random_term(rng, sig, 1 + rng() % 4);
    if (t.size() <= max_size) return t;
  }
}

Theory random_theory(std::mt19937& rng, int index) {
  static const std::vector<std::string> names{"*", "->", "+", "/\\", "\\/", "f", "g", "k", "c",
                                              "e", "neg", "m3"};
  Theory t;
  t.name = "R" + std::to_string(index);
  std::vector<std::string> pool = names;
  std::shuffle(pool.begin(), pool.end(), rng);
  const std::size_t nsym = 1 + rng() % 5;
  for (std::size_t i = 0; i < nsym; ++i) {
    const std::string& n = pool[i];
    std::size_t arity;
    if (is_operator_name(n)) {
      arity = 2;
    } else {
      arity = rng() % 4;
    }
    t.signature.add(n, arity);
  }
  const std::size_t nax = rng() % 9;
  for (std::size_t i = 0; i < nax; ++i) {
    t.axioms.push_back({"ax" + std::to_string(i),
                        {sized_term(rng, t.signature, 15), sized_term(rng, t.signature, 15)}});
  }
  return t;
}

}  // namespace

TEST_CASE("parse the Johnstone theory") {
  const Theory t = parse_theory(kJohnstone);
  CHECK(t.name == "J");
  CHECK(t.signature.size() == 3);
  REQUIRE(t.axioms.size() == 3);
  CHECK(t.axioms[2].label == "mdiv");
  CHECK(to_string(t.axioms[0].equation) == "(x0 -> x0) = e");
  CHECK(parse_theory(print_theory(t)) == t);
}

TEST_CASE("monoid theory with several axioms on one line") {
  const Theory t = parse_theory(
      "theory M\nsig * : 2; e : 0;\naxiom assoc: ((x*y)*z) = (x*(y*z)); axiom rid: (x*e) = x; "
      "axiom lid: (e*x) = x;");
  CHECK(t.axioms.size() == 3);
  CHECK(to_string(t.axioms[0].equation) == "((x0 * x1) * x2) = (x0 * (x1 * x2))");
  CHECK(is_balanced(t));
}

TEST_CASE("parse errors carry spans inside the input") {
  const std::string text = "theory T\nsig f : 2;\naxiom a: f(x, y = x;";
  try {
    parse_theory(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK_FALSE(e.message().empty());
    CHECK(e.span().line == 3);
    // Column of the '=' token.
    CHECK(e.span().column_start == text.substr(text.rfind('\n') + 1).find('=') + 1);
    CHECK(e.span().column_end >= e.span().column_start);
  }
}

TEST_CASE("unknown symbols, arity mismatches and duplicate labels are rejected") {
  CHECK_THROWS_AS(parse_theory("theory T\nsig * : 2;\naxiom a: (x + y) = x;"), ParseError);
  CHECK_THROWS_AS(parse_theory("theory T\nsig f : 2;\naxiom a: f(x) = x;"), ParseError);
  CHECK_THROWS_AS(parse_theory("theory T\nsig * : 2;\naxiom a: (x * y) = x;\naxiom a: x = x;"),
                  ParseError);
  const Signature sig({{"f", 2}});
  CHECK_THROWS_AS(parse_term("f(x)", sig), ParseError);
}

TEST_CASE("random malformed input never produces a span outside the text") {
  std::mt19937 rng(3);
  const std::string base(kJohnstone);
  for (int i = 0; i < 300; ++i) {
    std::string text = base;
    const std::size_t cut = rng() % text.size();
    text.erase(cut, 1 + rng() % 5);
    try {
      parse_theory(text);
    } catch (const ParseError& e) {
      std::size_t lines = 1;
      for (char ch : text) lines += ch == '\n';
      CHECK(e.span().line >= 1);
      CHECK(e.span().line <= lines);
      CHECK(e.span().column_start >= 1);
    }
  }
}

TEST_CASE("terms parse with aliases and constants") {
  const Signature sig({{"*", 2}, {"->", 2}, {"e", 0}});
  CHECK(parse_term("((x -> y) -> y)", sig) == named_term("t"));
  CHECK(parse_term("e", sig).is_constant());
  CHECK(parse_term("x2", sig) == parse_term("z", sig));
}

TEST_CASE("print_theory round-trips every catalog theory") {
  for (const auto& code : named_theory_codes()) {
    const Theory t = theory_by_code(code).theory;
    CHECK_MESSAGE(parse_theory(print_theory(t)) == t, code);
  }
  const Theory hoop = theory_by_code("hoop").theory;
  CHECK(hoop.axioms.size() == 8);
}

TEST_CASE("print_theory of an axiom-free theory has header and signature only") {
  Theory t;
  t.name = "E";
  t.signature.add("*", 2);
  const std::string text = print_theory(t);
  CHECK(text.find("axiom") == std::string::npos);
  CHECK(parse_theory(text) == t);
}

TEST_CASE("print_theory round-trips 500 random theories") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 500; ++i) {
    const Theory t = random_theory(rng, i);
    const std::string text = print_theory(t);
    CHECK_MESSAGE(parse_theory(text) == t, text);
  }
}

TEST_CASE("models and proofs round-trip through their text formats") {
  const Theory j = parse_theory(kJohnstone);
  for (const auto& m : enumerate_models(j, 3, true)) {
    Model back = parse_model(print_model(m), j.signature);
    CHECK(back == m);
  }
  const auto r = prove(j, parse_equation("(x * e) = x", j.signature), testing::small_budget());
  REQUIRE(r.proved());
  CHECK(parse_proof(print_proof(*r.proof), j.signature) == *r.proof);

  const auto q = entails_quasi(j, {parse_equation("(x -> y) = e", j.signature)},
                               parse_equation("((x -> y) -> y) = y", j.signature),
                               testing::small_budget());
  if (q.proved()) CHECK(parse_proof(print_proof(*q.proof), j.signature) == *q.proof);
}

TEST_CASE("model files reject out-of-range entries") {
  const Signature sig({{"*", 2}});
  CHECK_THROWS(parse_model("model M over T size 2\ntable * = [[0, 2], [1, 0]];", sig));
  CHECK_THROWS(parse_model("model M over T size 2\ntable * = [[0, 1]];", sig));
}
