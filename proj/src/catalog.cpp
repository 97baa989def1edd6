#include "eqa/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace eqa {

namespace {

const Term X = var(0), Y = var(1), Z = var(2);
const Term E = Term::constant("e");

Term mul(const Term& a, const Term& b) { return binop("*", a, b); }
Term imp(const Term& a, const Term& b) { return binop("->", a, b); }

std::vector<AxiomEntry> build_axioms() {
  const Term txy = t_of(X, Y);
  const Term v_xy = t_of(t_of(X, Y), X);
  const Term v_yx = t_of(t_of(Y, X), Y);
  std::vector<AxiomEntry> a;
  auto add = [&](std::string name, std::string label, std::vector<std::string> aliases,
                 Term l, Term r) {
    a.push_back({static_cast<int>(a.size()) + 1, std::move(name), std::move(label),
                 std::move(aliases), {std::move(l), std::move(r)}});
  };
  add("Associativity", "assoc", {}, mul(mul(X, Y), Z), mul(X, mul(Y, Z)));
  add("Right identity", "rid", {}, mul(X, E), X);
  add("Left identity", "lid", {}, mul(E, X), X);
  add("Commutativity", "comm", {}, mul(X, Y), mul(Y, X));
  add("Reflexivity", "refl", {}, imp(X, X), E);
  add("Unit-reduction", "unit", {}, imp(E, X), X);
  add("Hoop-symmetry", "hoop_sym", {}, mul(X, imp(X, Y)), mul(Y, imp(Y, X)));
  add("Residuation", "resid", {}, imp(X, imp(Y, Z)), imp(mul(Y, X), Z));
  add("Idempotency", "idem", {}, mul(X, X), X);
  add("Fusion", "fusion", {}, mul(X, Y), mul(Y, imp(Y, X)));
  add("Unit-absorption", "t_axiom", {"T-axiom", "T"}, imp(X, E), E);
  add("Lower division", "ldiv", {}, mul(X, imp(X, Y)), Y);
  add("Upper division", "udiv", {}, imp(X, mul(X, Y)), Y);
  add("Projection", "k_axiom", {"K-axiom", "K"}, imp(X, imp(Y, X)), E);
  add("Modus ponens", "mp", {}, imp(X, txy), E);
  add("Implicative commutativity", "c_axiom", {"C-axiom", "C"}, imp(X, imp(Y, Z)),
      imp(Y, imp(X, Z)));
  add("Compositionality", "b_axiom", {"B-axiom", "B"},
      imp(imp(X, Y), imp(imp(Z, X), imp(Z, Y))), E);
  add("Self-distributivity", "s_axiom", {"S-axiom", "S"},
      imp(imp(Z, imp(X, Y)), imp(imp(Z, X), imp(Z, Y))), E);
  add("Monotone division", "mdiv", {}, mul(txy, imp(txy, X)), X);
  add("Conditional exchange", "h_axiom", {"H-axiom", "H"}, imp(imp(X, Y), imp(X, Z)),
      imp(imp(Y, X), imp(Y, Z)));
  add("Monotone exchange", "m_axiom", {"M-axiom", "M"}, imp(imp(txy, X), imp(txy, Z)),
      imp(X, Z));
  add("Cornish condition J", "cornish", {"J-condition"}, v_xy, v_yx);
  return a;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void collect_symbols(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) return;
  out.insert(t.symbol().name());
  for (const auto& a : t.args()) collect_symbols(a, out);
}

constexpr std::string_view kLetters = "HMSBCKT";
constexpr int kLetterAxiom[] = {20, 21, 18, 17, 16, 14, 11};

struct Named {
  const char* code;
  const char* description;
  std::vector<int> axioms;
};

const std::vector<Named>& named_table() {
  static const std::vector<Named> table = {
      {"J", "Johnstone algebras", {5, 6, 19}},
      {"hoop", "hoops", {1, 2, 3, 4, 5, 6, 7, 8}},
      {"heyting", "Heyting semilattices (hoops with Fusion)", {1, 2, 3, 4, 5, 6, 7, 8, 10}},
      {"group", "groups (left loops with Associativity)", {12, 13, 2, 3, 1}},
      {"left-loop", "left loops", {12, 13, 2, 3}},
      {"monoid", "monoids", {1, 2, 3}},
      {"pointed-semilattice", "pointed semilattices", {1, 2, 3, 4, 9}},
      {"RBJ", "Johnstone algebras with Residuation and Compositionality", {5, 6, 19, 8, 17}},
      {"RBCJ", "RBJ with Commutativity", {5, 6, 19, 8, 17, 4}},
      {"RBCJ-commutative", "alias of RBCJ", {5, 6, 19, 8, 17, 4}},
  };
  return table;
}

Theory lattice_theory() {
  Theory t;
  t.name = "lattice";
  t.signature.add("/\\", 2);
  t.signature.add("\\/", 2);
  auto meet = [](Term a, Term b) { return binop("/\\", std::move(a), std::move(b)); };
  auto join = [](Term a, Term b) { return binop("\\/", std::move(a), std::move(b)); };
  t.axioms = {
      {"meet_assoc", {meet(meet(X, Y), Z), meet(X, meet(Y, Z))}},
      {"join_assoc", {join(join(X, Y), Z), join(X, join(Y, Z))}},
      {"meet_comm", {meet(X, Y), meet(Y, X)}},
      {"join_comm", {join(X, Y), join(Y, X)}},
      {"meet_absorb", {meet(X, join(X, Y)), X}},
      {"join_absorb", {join(X, meet(X, Y)), X}},
  };
  return t;
}

}  // namespace

Term t_of(const Term& a, const Term& b) { return imp(imp(a, b), b); }

const std::vector<AxiomEntry>& catalog_axioms() {
  static const std::vector<AxiomEntry> axioms = build_axioms();
  return axioms;
}

const AxiomEntry& axiom(int index) {
  const auto& all = catalog_axioms();
  if (index < 1 || index > static_cast<int>(all.size())) {
    throw std::invalid_argument("unknown axiom index " + std::to_string(index));
  }
  return all[static_cast<std::size_t>(index - 1)];
}

const AxiomEntry& axiom(std::string_view key) {
  if (!key.empty() && std::all_of(key.begin(), key.end(),
                                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return axiom(std::stoi(std::string(key)));
  }
  const std::string k = lower(key);
  for (const auto& a : catalog_axioms()) {
    if (lower(a.name) == k || lower(a.label) == k) return a;
    for (const auto& alias : a.aliases) {
      if (lower(alias) == k) return a;
    }
  }
  throw std::invalid_argument("unknown axiom '" + std::string(key) + "'");
}

Theory theory_from_axioms(std::string name, const std::vector<int>& indices) {
  Theory t;
  t.name = std::move(name);
  std::set<std::string> used;
  for (int i : indices) {
    const auto& a = axiom(i);
    collect_symbols(a.equation.lhs, used);
    collect_symbols(a.equation.rhs, used);
    t.axioms.push_back({a.label, a.equation});
  }
  for (auto [sym, arity] : {std::pair{"*", 2}, {"->", 2}, {"e", 0}}) {
    if (used.count(sym)) t.signature.add(sym, static_cast<std::size_t>(arity));
  }
  return t;
}

NamedTheory theory_by_code(std::string_view code) {
  for (const auto& n : named_table()) {
    if (code == n.code) return {n.code, n.description, theory_from_axioms(n.code, n.axioms)};
  }
  if (code == "lattice") return {"lattice", "lattices", lattice_theory()};
  if (code.empty()) throw std::invalid_argument("empty theory code");
  std::vector<bool> present(kLetters.size(), false);
  for (char c : code) {
    auto pos = kLetters.find(c);
    if (pos == std::string_view::npos) {
      throw std::invalid_argument("unknown theory code '" + std::string(code) + "'");
    }
    present[pos] = true;
  }
  std::string normalized;
  std::vector<int> axioms = {5, 6};
  for (std::size_t i = 0; i < kLetters.size(); ++i) {
    if (!present[i]) continue;
    normalized += kLetters[i];
    axioms.push_back(kLetterAxiom[i]);
  }
  return {normalized, normalized + "-algebras (equational part)",
          theory_from_axioms(normalized, axioms)};
}

std::vector<std::string> named_theory_codes() {
  std::vector<std::string> out;
  for (const auto& n : named_table()) out.emplace_back(n.code);
  out.emplace_back("lattice");
  return out;
}

Term named_term(std::string_view key) {
  const Term txy = t_of(X, Y);
  if (key == "t" || key == "xbar") return txy;
  if (key == "v" || key == "X") return t_of(txy, X);
  if (key == "theta") return mul(imp(Y, X), Z);
  if (key == "theta1") return imp(X, Y);
  if (key == "theta2") return imp(txy, X);
  if (key == "p-johnstone") {
    // theta(x, theta1(y, z), theta2(y, z))
    Substitution shift{{0, Y}, {1, Z}};
    Substitution s{{0, X},
                   {1, substitute(named_term("theta1"), shift)},
                   {2, substitute(named_term("theta2"), shift)}};
    return substitute(named_term("theta"), s);
  }
  throw std::invalid_argument("unknown term '" + std::string(key) + "'");
}

std::vector<std::string> named_term_keys() {
  return {"t", "v", "xbar", "X", "theta", "theta1", "theta2", "p-johnstone"};
}

}  // namespace eqa
