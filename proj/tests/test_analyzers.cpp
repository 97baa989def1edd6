#include <doctest.h>

#include "eqa/analyzers.hpp"
#include "eqa/catalog.hpp"
#include "eqa/dsl.hpp"
#include "eqa/model.hpp"
#include "eqa/proof.hpp"
#include "test_support.hpp"

using namespace eqa;

namespace {

AnalyzerOptions quick(double seconds = 10) {
  AnalyzerOptions o;
  o.budget = testing::small_budget(seconds);
  return o;
}

Term tx(const Theory& t, std::string_view s) { return parse_term(s, t.signature); }
Equation eq(const Theory& t, std::string_view s) { return parse_equation(s, t.signature); }

Theory implicative() {
  return parse_theory(
      "theory implicative\nsig -> : 2; e : 0;\naxiom refl: (x -> x) = e;\naxiom unit: (e -> x) = x;");
}

Model b2_reduct() {
  Model m(implicative().signature, 2);
  m.set_table("->", {1, 1, 0, 1});
  m.set_constant("e", 1);
  return m;
}

Model z2_group() {
  Model m(testing::jsig(), 2);
  m.set_table("*", {0, 1, 1, 0});
  m.set_table("->", {0, 1, 1, 0});
  m.set_constant("e", 0);
  return m;
}

Model chain2() {
  Model m(theory_by_code("lattice").theory.signature, 2);
  m.set_table("/\\", {0, 0, 0, 1});
  m.set_table("\\/", {0, 1, 1, 1});
  return m;
}

// Each verdict is checked against the small models: Proved goals hold in
// all of them and Refuted ones carry a real countermodel.
void check_verdict(const Theory& t, const Verdict& v) {
  if (v.kind == Verdict::Kind::Proved) {
    REQUIRE(v.proof);
    CHECK(check_proof(t, *v.proof).valid);
    if (v.premises.empty()) {
      for (const auto& m : small_models(t, 3)) CHECK(satisfies(m, v.equation).holds);
    }
  } else if (v.kind == Verdict::Kind::Refuted) {
    REQUIRE(v.countermodel);
    CHECK(satisfies_all(v.countermodel->model, t));
    for (const auto& p : v.premises) {
      CHECK(evaluate(v.countermodel->model, p.lhs, v.countermodel->assignment) ==
            evaluate(v.countermodel->model, p.rhs, v.countermodel->assignment));
    }
    CHECK(evaluate(v.countermodel->model, v.equation.lhs, v.countermodel->assignment) !=
          evaluate(v.countermodel->model, v.equation.rhs, v.countermodel->assignment));
  }
}

}  // namespace

TEST_CASE("decide refutes before proving") {
  const Theory j = theory_by_code("J").theory;
  const auto r = decide(j, eq(j, "(x * y) = (y * x)"), quick());
  CHECK(r.kind == Verdict::Kind::Refuted);
  check_verdict(j, r);
  const auto p = decide(j, eq(j, "(x * e) = x"), quick());
  CHECK(p.kind == Verdict::Kind::Proved);
  check_verdict(j, p);
}

TEST_CASE("determination reports") {
  const Theory j = theory_by_code("J").theory;
  const Equation le = eq(j, "(x -> y) = e");
  const auto rj = determination_report(j, named_term("t"), le, quick());
  CHECK(rj.semi.kind == Verdict::Kind::Proved);
  check_verdict(j, rj.semi);
  check_verdict(j, rj.converse);
  check_verdict(j, rj.p_of_t);

  const Theory c = theory_from_axioms("RUC", {5, 6, 16});
  const auto rc = determination_report(c, named_term("t"), eq(c, "(x -> y) = e"), quick());
  CHECK(rc.strong == Verdict::Kind::Proved);

  const auto ry = determination_report(j, var(1), le, quick());
  CHECK(ry.semi.kind == Verdict::Kind::Proved);
}

TEST_CASE("determination: determined implies reflexive order iff t(x,x) = x on models") {
  for (const char* code : {"J", "C", "K", "MC", "hoop"}) {
    const Theory t = theory_by_code(code).theory;
    const auto r = determination_report(t, named_term("t"), eq(t, "(x -> y) = e"), quick(5));
    if (r.determined != Verdict::Kind::Proved) continue;
    const Equation idem{t_of(var(0), var(0)), var(0)};
    for (const auto& m : small_models(t, 3)) {
      CHECK(order_from_implication(m).reflexive == satisfies(m, idem).holds);
    }
  }
}

TEST_CASE("closure equations") {
  const auto eqs = closure_equations(named_term("t"));
  REQUIRE(eqs.size() == 9);
  CHECK(eqs[0].name == "idempotency");
  CHECK(eqs[6].name == "flattening");
  for (const auto& e : eqs) CHECK(is_balanced(e.equation));
}

TEST_CASE("the empty theory refutes all nine equations for x*y") {
  Theory empty;
  empty.name = "empty";
  empty.signature.add("*", 2);
  const auto r = closure_term_report(empty, binop("*", var(0), var(1)), quick());
  for (const auto& v : r.verdicts) {
    CHECK(v.kind == Verdict::Kind::Refuted);
    REQUIRE(v.countermodel);
    CHECK(v.countermodel->model.size() == 2);
    check_verdict(empty, v);
  }
  CHECK(r.relative_closure == Tri::False);
  CHECK(r.preorder_term == Tri::False);
}

TEST_CASE("meet and join of the 2-element lattice satisfy all nine equations") {
  const Model m = chain2();
  for (const char* op : {"/\\", "\\/"}) {
    const auto holds = closure_equations_hold(m, binop(op, var(0), var(1)));
    for (bool h : holds) CHECK(h);
  }
}

TEST_CASE("closure verdicts for MBC are consistent with small models") {
  const Theory t = theory_by_code("MBC").theory;
  const auto r = closure_term_report(t, named_term("t"), quick(3));
  for (const auto& v : r.verdicts) check_verdict(t, v);
  CHECK(r.verdicts[0].kind == Verdict::Kind::Proved);  // idempotency
  CHECK(r.relative_closure != Tri::False);
}

TEST_CASE("protomodularity of J with the Johnstone terms") {
  const Theory j = theory_by_code("J").theory;
  const auto r = check_protomodular_terms(j, named_term("theta"),
                                          {named_term("theta1"), named_term("theta2")},
                                          {Term::constant("e"), Term::constant("e")}, quick(30));
  CHECK(r.form == ProtomodularForm::Printed);
  CHECK(r.all_proved == Tri::True);
  for (const auto& v : r.verdicts) check_verdict(j, v);
}

TEST_CASE("protomodularity of left loops with x0*x1 and x->y") {
  const Theory l = theory_by_code("left-loop").theory;
  const auto r = check_protomodular_terms(l, tx(l, "(x0 * x1)"), {tx(l, "(x -> y)")},
                                          {Term::constant("e")}, quick(30),
                                          ProtomodularForm::Swapped);
  CHECK(r.all_proved == Tri::True);
  for (const auto& v : r.verdicts) check_verdict(l, v);
}

TEST_CASE("groups: theta1 = x*y fails theta1(x,x) = e") {
  const Theory g = theory_by_code("group").theory;
  const auto r = check_protomodular_terms(g, tx(g, "(x0 * x1)"), {tx(g, "(x * y)")},
                                          {Term::constant("e")}, quick());
  REQUIRE_FALSE(r.verdicts.empty());
  CHECK(r.verdicts[0].kind == Verdict::Kind::Refuted);
  check_verdict(g, r.verdicts[0]);
  CHECK(r.all_proved == Tri::False);
}

TEST_CASE("derive_malcev_from_protomodular") {
  const Signature sig = testing::jsig();
  const Term theta = named_term("theta");
  const std::vector<Term> thetas{named_term("theta1"), named_term("theta2")};
  CHECK(derive_malcev_from_protomodular(theta, thetas, ProtomodularForm::Swapped) ==
        named_term("p-johnstone"));
  CHECK(derive_malcev_from_protomodular(theta, thetas, ProtomodularForm::Printed) ==
        parse_term("(((x -> y) -> z) * (((x -> y) -> y) -> x))", sig));
  CHECK(derive_malcev_from_protomodular(parse_term("(x0 * x1)", sig), {parse_term("(x -> y)", sig)},
                                        ProtomodularForm::Swapped) ==
        parse_term("(x * (y -> z))", sig));
  CHECK(derive_malcev_from_protomodular(var(0), {}) == var(0));
}

TEST_CASE("the Printed-form derived term is a Malcev operation in every small J-model") {
  const Theory j = theory_by_code("J").theory;
  const Term p = derive_malcev_from_protomodular(
      named_term("theta"), {named_term("theta1"), named_term("theta2")}, ProtomodularForm::Printed);
  const Equation xyy{substitute(p, Substitution{{2, var(1)}}), var(0)};
  const Equation xxy{substitute(p, Substitution{{1, var(0)}, {2, var(1)}}), var(1)};
  for (const auto& m : small_models(j, 3)) {
    CHECK(satisfies(m, xyy).holds);
    CHECK(satisfies(m, xxy).holds);
  }
}

TEST_CASE("Malcev search") {
  const auto mon = malcev_search(theory_by_code("monoid").theory);
  CHECK(mon.kind == MalcevResult::Kind::ImpossibleBalanced);
  CHECK(mon.detail == "balanced");

  const auto lat = malcev_search(theory_by_code("lattice").theory);
  CHECK(lat.kind == MalcevResult::Kind::ImpossibleModel);
  REQUIRE(lat.clone_model);
  const auto clone = clone_closure(*lat.clone_model, 3, 256);
  CHECK(clone.size() == lat.clone_size);
  for (const auto& op : clone) CHECK_FALSE(is_malcev_operation(op, lat.clone_model->size()));

  const Theory l = theory_by_code("left-loop").theory;
  const auto ll = malcev_search(l);
  REQUIRE(ll.kind == MalcevResult::Kind::Found);
  CHECK(*ll.term == tx(l, "(x * (y -> z))"));
  REQUIRE(ll.proof_xyy);
  REQUIRE(ll.proof_xxy);
  CHECK(check_proof(l, *ll.proof_xyy).valid);
  CHECK(check_proof(l, *ll.proof_xxy).valid);
}

TEST_CASE("no-go certificates") {
  const Theory lat = theory_by_code("lattice").theory;
  const auto mono = nogo_certificate(lat, chain2(), natural_order(2));
  REQUIRE(mono.certificate);
  CHECK(mono.certificate->kind == NoGoCertificate::Kind::Monotone);
  CHECK(mono.certificate->conclusion == NoGoCertificate::Conclusion::NotMalcev);
  CHECK(verify_certificate(lat, *mono.certificate));

  const Theory imp = implicative();
  const Model b2 = b2_reduct();
  const auto infl = nogo_certificate(imp, b2, order_from_implication(b2));
  REQUIRE(infl.certificate);
  CHECK(infl.certificate->kind == NoGoCertificate::Kind::Inflationary);
  CHECK(infl.certificate->conclusion == NoGoCertificate::Conclusion::NotMalcev);
  CHECK(infl.certificate->inflationary_component[0] == 1);  // y <= x -> y
  CHECK(verify_certificate(imp, *infl.certificate));

  const Theory g = theory_by_code("group").theory;
  const Model z2 = z2_group();
  const auto none = nogo_certificate(g, z2, order_from_implication(z2));
  CHECK_FALSE(none.certificate);
  CHECK_FALSE(none.reason.empty());

  CHECK_THROWS_AS(nogo_certificate(theory_by_code("monoid").theory, Model(Signature({{"*", 2}, {"e", 0}}), 2),
                                   natural_order(2)),
                  std::invalid_argument);
}

TEST_CASE("no model of a theory with a Malcev term carries a NotMalcev certificate") {
  for (const char* code : {"left-loop", "J"}) {
    const Theory t = theory_by_code(code).theory;
    for (const auto& m : small_models(t, 3)) {
      if (m.size() < 2) continue;
      for (const auto& order : {natural_order(m.size()), order_from_implication(m)}) {
        const auto r = nogo_certificate(t, m, order, true);
        if (r.certificate) CHECK(r.certificate->conclusion != NoGoCertificate::Conclusion::NotMalcev);
      }
    }
  }
}

TEST_CASE("anti-symmetry check on examples") {
  const Model b2 = [] {
    Model m(testing::jsig(), 2);
    m.set_table("*", {0, 0, 0, 1});
    m.set_table("->", {1, 1, 0, 1});
    m.set_constant("e", 1);
    return m;
  }();
  const auto r = antisymmetry_equivalence_check(b2, named_term("t"));
  CHECK((r.antisym && r.x_eq_xy && r.cornish));
  const auto one = antisymmetry_equivalence_check(Model(testing::jsig(), 1), named_term("t"));
  CHECK((one.antisym && one.x_eq_xy && one.cornish));
}

TEST_CASE("anti-symmetry equationalized on every binary table up to size 3") {
  const Signature sig({{"t", 2}});
  const Term xy = Term::app("t", {var(0), var(1)});
  std::size_t weak = 0, non_antisym = 0, cornish_models = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::size_t cells = n * n;
    std::vector<Element> v(cells, 0);
    for (;;) {
      Model m(sig, n);
      m.set_table("t", v);
      const auto h = closure_equations_hold(m, xy);
      if (h[4] && h[6] && h[8]) {
        ++weak;
        const auto r = antisymmetry_equivalence_check(m, xy);
        CHECK(r.antisym == r.x_eq_xy);
        non_antisym += !r.antisym;
        // y <= xy, i.e. t(y, t(x, y)) = t(x, y).
        const Equation y_le_xy{Term::app("t", {var(1), xy}), xy};
        if (satisfies(m, y_le_xy).holds && r.x_eq_xy) {
          ++cornish_models;
          CHECK(r.cornish);
        }
      }
      std::size_t i = 0;
      while (i < cells && ++v[i] == n) v[i++] = 0;
      if (i == cells) break;
    }
  }
  CHECK(weak > 0);
  CHECK(non_antisym > 0);
  CHECK(cornish_models > 0);
}
