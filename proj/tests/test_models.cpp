#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "eqa/catalog.hpp"
#include "eqa/dsl.hpp"
#include "eqa/model.hpp"
#include "test_support.hpp"

using namespace eqa;

namespace {

// Independent evaluator: reads tables by symbol name.
int naive_eval(const Model& m, const Term& t, const std::vector<int>& env) {
  if (t.is_var()) return env.at(t.var_index());
  const OperationTable& tab = m.table(t.symbol().name());
  std::size_t idx = 0;
  for (const auto& a : t.args()) idx = idx * m.size() + naive_eval(m, a, env);
  return tab.values.at(idx);
}

bool naive_satisfies(const Model& m, const Equation& eq) {
  const std::size_t nv = std::max(eq.lhs.var_bound(), eq.rhs.var_bound());
  std::vector<int> env(nv, 0);
  for (;;) {
    if (naive_eval(m, eq.lhs, env) != naive_eval(m, eq.rhs, env)) return false;
    std::size_t i = 0;
    while (i < nv && ++env[i] == static_cast<int>(m.size())) env[i++] = 0;
    if (i == nv) return true;
  }
}

bool naive_model_of(const Model& m, const Theory& t) {
  return std::all_of(t.axioms.begin(), t.axioms.end(),
                     [&](const LabeledAxiom& a) { return naive_satisfies(m, a.equation); });
}

// Every assignment of every table of `sig` over a carrier of size n.
std::vector<Model> naive_all_models(const Theory& t, std::size_t n) {
  const auto& syms = t.signature.symbols();
  std::vector<std::size_t> cells;
  for (const auto& s : syms) {
    std::size_t c = 1;
    for (std::size_t i = 0; i < s.arity; ++i) c *= n;
    cells.push_back(c);
  }
  const std::size_t total = std::accumulate(cells.begin(), cells.end(), std::size_t{0});
  std::vector<Element> digits(total, 0);
  std::vector<Model> out;
  for (;;) {
    Model m(t.signature, n);
    std::size_t off = 0;
    for (std::size_t k = 0; k < syms.size(); ++k) {
      m.set_table(syms[k].name, std::vector<Element>(digits.begin() + off,
                                                     digits.begin() + off + cells[k]));
      off += cells[k];
    }
    if (naive_model_of(m, t)) out.push_back(m);
    std::size_t i = 0;
    while (i < total && ++digits[i] == n) digits[i++] = 0;
    if (i == total) return out;
  }
}

bool naive_isomorphic(const Model& a, const Model& b) {
  if (a.size() != b.size()) return false;
  std::vector<Element> perm(a.size());
  std::iota(perm.begin(), perm.end(), Element{0});
  do {
    if (permute(a, perm) == b) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::vector<Element> naive_canonical(const Model& m) {
  std::vector<Element> perm(m.size());
  std::iota(perm.begin(), perm.end(), Element{0});
  std::vector<Element> best = m.serialize();
  do {
    best = std::min(best, permute(m, perm).serialize());
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Model b2() {
  Model m(testing::jsig(), 2);
  m.set_table("*", {0, 0, 0, 1});
  m.set_table("->", {1, 1, 0, 1});
  m.set_constant("e", 1);
  return m;
}

Model z2() {
  Model m(testing::jsig(), 2);
  m.set_table("*", {0, 1, 1, 0});
  m.set_table("->", {0, 1, 1, 0});
  m.set_constant("e", 0);
  return m;
}

Model lattice2() {
  const Theory l = theory_by_code("lattice").theory;
  Model m(l.signature, 2);
  m.set_table("/\\", {0, 0, 0, 1});
  m.set_table("\\/", {0, 1, 1, 1});
  return m;
}

// Ternary clone by fixpoint over value vectors at the 8 (or 27) points.
std::set<std::vector<Element>> naive_clone3(const Model& m) {
  const std::size_t n = m.size(), pts = n * n * n;
  std::set<std::vector<Element>> clone;
  for (int p = 0; p < 3; ++p) {
    std::vector<Element> proj(pts);
    for (std::size_t i = 0; i < pts; ++i) {
      const std::size_t digit[3] = {i / (n * n), (i / n) % n, i % n};
      proj[i] = static_cast<Element>(digit[p]);
    }
    clone.insert(proj);
  }
  for (const auto& s : m.signature().symbols()) {
    if (s.arity == 0) clone.insert(std::vector<Element>(pts, m.constant(s.name)));
  }
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<std::vector<Element>> cur(clone.begin(), clone.end());
    for (const auto& s : m.signature().symbols()) {
      if (s.arity != 2) continue;
      const auto& tab = m.table(s.name).values;
      for (const auto& f : cur) {
        for (const auto& g : cur) {
          std::vector<Element> h(pts);
          for (std::size_t i = 0; i < pts; ++i) h[i] = tab[f[i] * n + g[i]];
          grew |= clone.insert(h).second;
        }
      }
    }
  }
  return clone;
}

}  // namespace

TEST_CASE("evaluate on B2 and Z2 matches truth tables") {
  const Term t = named_term("t");
  CHECK(evaluate(b2(), t, {{0, 0}, {1, 1}}) == 1);
  CHECK(evaluate(z2(), t, {{0, 1}, {1, 1}}) == 1);
  CHECK(evaluate(b2(), Term::constant("e"), {}) == 1);
  CHECK_THROWS_AS(evaluate(b2(), var(3), {}), std::invalid_argument);
}

TEST_CASE("satisfies with witnesses") {
  CHECK(satisfies(b2(), axiom(19).equation).holds);
  Model c(Signature({{"*", 2}}), 2);
  c.set_table("*", {0, 0, 0, 0});
  const auto r = satisfies(c, Equation{binop("*", var(0), var(1)), var(0)});
  CHECK_FALSE(r.holds);
  CHECK(r.witness == Assignment{{0, 1}, {1, 0}});
  const Term cc = binop("*", var(0), binop("*", var(1), var(0)));
  CHECK(satisfies(c, Equation{cc, cc}).holds);
}

TEST_CASE("evaluate is compatible with substitution") {
  std::mt19937 rng(31);
  const Theory j = theory_by_code("J").theory;
  const auto models = enumerate_models(j, 3, true);
  for (int i = 0; i < 300; ++i) {
    const Model& m = models[rng() % models.size()];
    const Term t = testing::random_term(rng, j.signature, 3);
    const Substitution s = testing::random_substitution(rng, j.signature);
    Assignment a{{0, Element(rng() % 3)}, {1, Element(rng() % 3)}, {2, Element(rng() % 3)}};
    Assignment composed;
    for (Term::VarIndex v = 0; v < 3; ++v) {
      const Term* img = s.get(v);
      composed[v] = img ? evaluate(m, *img, a) : a[v];
    }
    CHECK(evaluate(m, substitute(t, s), a) == evaluate(m, t, composed));
  }
}

TEST_CASE("J enumeration against the 512-candidate oracle") {
  const Theory j = theory_by_code("J").theory;
  CHECK(enumerate_models(j, 1).size() == 1);
  const auto got = enumerate_models(j, 2);
  const auto want = naive_all_models(j, 2);
  CHECK(want.size() == 12);
  CHECK(got.size() == want.size());
  for (const auto& m : got) {
    CHECK(naive_model_of(m, j));
    CHECK(std::find(want.begin(), want.end(), m) != want.end());
  }
}

TEST_CASE("group enumeration of size 2 gives the two labelings of Z2") {
  const Theory g = theory_by_code("group").theory;
  const auto got = enumerate_models(g, 2);
  const auto want = naive_all_models(g, 2);
  CHECK(want.size() == 2);
  CHECK(got.size() == 2);
  for (const auto& m : got) CHECK(std::find(want.begin(), want.end(), m) != want.end());
}

TEST_CASE("enumeration has no false positives or omissions for assorted theories") {
  for (const char* code : {"hoop", "left-loop", "monoid", "pointed-semilattice", "MC", "lattice"}) {
    const Theory t = theory_by_code(code).theory;
    for (std::size_t n = 1; n <= 2; ++n) {
      const auto got = enumerate_models(t, n);
      const auto want = naive_all_models(t, n);
      INFO(code << " size " << n);
      CHECK(got.size() == want.size());
      for (const auto& m : got) CHECK(naive_model_of(m, t));
    }
  }
}

TEST_CASE("iso filter yields pairwise non-isomorphic, covering representatives") {
  const Theory j = theory_by_code("J").theory;
  for (std::size_t n = 2; n <= 3; ++n) {
    const auto reps = enumerate_models(j, n, true);
    std::set<std::vector<Element>> keys;
    for (const auto& r : reps) keys.insert(naive_canonical(r));
    CHECK(keys.size() == reps.size());
    for (const auto& m : enumerate_models(j, n)) CHECK(keys.count(naive_canonical(m)) == 1);
    if (n == 2) {
      for (std::size_t a = 0; a < reps.size(); ++a) {
        for (std::size_t b = a + 1; b < reps.size(); ++b) {
          CHECK_FALSE(naive_isomorphic(reps[a], reps[b]));
        }
      }
    }
  }
  CHECK(isomorphic(b2(), permute(b2(), {1, 0})));
  CHECK_FALSE(isomorphic(b2(), z2()));
}

TEST_CASE("countermodels") {
  const Theory comm = theory_from_axioms("C", {4});
  const auto c1 = find_countermodel(comm, Equation{binop("*", var(0), var(1)), var(0)}, 3);
  REQUIRE(c1);
  CHECK(c1->model.size() == 2);

  const Theory j = theory_by_code("J").theory;
  const auto c2 = find_countermodel(j, axiom(20).equation, 3);
  REQUIRE(c2);
  CHECK(c2->model.size() == 2);
  CHECK(naive_model_of(c2->model, j));
  CHECK_FALSE(naive_satisfies(c2->model, axiom(20).equation));
  // The implication is "equal gives e": XNOR up to relabeling.
  const Element e = c2->model.constant("e");
  for (Element a = 0; a < 2; ++a) {
    for (Element b = 0; b < 2; ++b) {
      CHECK((c2->model.table("->").values[a * 2 + b] == e) == (a == b));
    }
  }
  CHECK_FALSE(find_countermodel(j, axiom(5).equation, 3));
}

TEST_CASE("clone closure of the 2-element lattice has no Malcev operation") {
  const Model l = lattice2();
  const auto clone = clone_closure(l, 3, 256);
  const auto oracle = naive_clone3(l);
  CHECK(clone.size() == oracle.size());
  for (const auto& op : clone) {
    CHECK(oracle.count(op.values) == 1);
    CHECK_FALSE(is_malcev_operation(op, 2));
    // Monotone in every argument.
    for (std::size_t i = 0; i < 8; ++i) {
      for (int bit = 0; bit < 3; ++bit) {
        if (i & (1u << bit)) CHECK(op.values[i ^ (1u << bit)] <= op.values[i]);
      }
    }
  }
  CHECK_FALSE(find_in_clone(l, 3, 256, [](const OperationTable& op) {
    return is_malcev_operation(op, 2);
  }));
}

TEST_CASE("clone closure of Z2 contains x xor y xor z") {
  const auto clone = clone_closure(z2(), 3, 256);
  CHECK(clone.size() == naive_clone3(z2()).size());
  OperationTable x3{3, {0, 1, 1, 0, 1, 0, 0, 1}};
  CHECK(clone.count(x3) == 1);
  CHECK(is_malcev_operation(x3, 2));
  const auto unary = clone_closure(z2(), 1, 16);
  CHECK(unary.count(OperationTable{1, {0, 1}}) == 1);
}

TEST_CASE("clone closure is closed under the basic operations") {
  const Theory j = theory_by_code("J").theory;
  for (const auto& m : enumerate_models(j, 2, true)) {
    const auto clone = clone_closure(m, 2, 4096);
    for (std::size_t k = 0; k < m.signature().size(); ++k) {
      if (m.signature().symbols()[k].arity != 2) continue;
      for (const auto& f : clone) {
        for (const auto& g : clone) {
          OperationTable h{2, std::vector<Element>(4)};
          for (std::size_t i = 0; i < 4; ++i) {
            const Element args[2] = {f.values[i], g.values[i]};
            h.values[i] = m.apply(k, args);
          }
          CHECK(clone.count(h) == 1);
        }
      }
    }
  }
}

TEST_CASE("clone cap is enforced") {
  CHECK_THROWS_AS(clone_closure(z2(), 3, 2), CloneCapExceeded);
}

TEST_CASE("orders from the implication") {
  const auto o = order_from_implication(b2());
  CHECK(o(0, 1));
  CHECK_FALSE(o(1, 0));
  CHECK(o.is_partial_order());
  CHECK_FALSE(o.discrete);
  const auto d = order_from_implication(z2());
  CHECK(d.is_partial_order());
  CHECK(d.discrete);
  Model one(testing::jsig(), 1);
  const auto t = order_from_implication(one);
  CHECK((t.reflexive && t.antisymmetric && t.transitive));
}

TEST_CASE("every J-model of size <= 3 gives a reflexive antisymmetric order") {
  const Theory j = theory_by_code("J").theory;
  std::size_t count = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    for_each_model(j, n, [&](const Model& m) {
      const auto o = order_from_implication(m);
      CHECK(o.reflexive);
      CHECK(o.antisymmetric);
      ++count;
      return true;
    });
  }
  CHECK(count > 12);
}

TEST_CASE("Galois connection") {
  CHECK(check_galois(b2()).holds);
  CHECK(check_galois(z2()).holds);
  // Boolean implication with 0*0 = 1.
  const Theory j = theory_by_code("J").theory;
  bool found = false;
  for (const auto& m : enumerate_models(j, 2)) {
    if (m.table("->").values == std::vector<Element>{1, 1, 0, 1} && m.constant("e") == 1 &&
        m.table("*").values[0] == 1) {
      found = true;
      const auto g = check_galois(m);
      CHECK_FALSE(g.holds);
      CHECK(g.witness == std::array<Element, 3>{0, 0, 0});
    }
  }
  CHECK(found);
}

TEST_CASE("model validation") {
  Model m(testing::jsig(), 2);
  m.mutable_table(0).values[0] = 5;
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}
