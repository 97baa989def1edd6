#include "eqa/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "eqa/analyzers.hpp"
#include "eqa/catalog.hpp"
#include "eqa/dsl.hpp"
#include "eqa/model.hpp"
#include "eqa/proof.hpp"
#include "eqa/prover.hpp"

#ifndef EQA_DATA_DIR
#define EQA_DATA_DIR "data"
#endif

namespace eqa {

namespace fs = std::filesystem;

std::vector<int> suite_criteria(std::string_view suite) {
  if (suite == "core") return {1, 2, 3, 4, 5, 9};
  if (suite == "nogo") return {6, 9};
  if (suite == "closure") return {3, 7, 8};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9};
  throw std::invalid_argument("unknown suite '" + std::string(suite) +
                              "' (expected core, nogo, closure or all)");
}

std::string default_data_dir() {
  if (const char* env = std::getenv("EQA_DATA_DIR"); env && *env) return env;
  return EQA_DATA_DIR;
}

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw std::invalid_argument("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Theory resolve_theory(std::string_view name, const std::string& data_dir) {
  try {
    return theory_by_code(name).theory;
  } catch (const std::invalid_argument&) {
  }
  fs::path p = fs::path(data_dir) / "theories" / (std::string(name) + ".eqt");
  if (!fs::exists(p)) throw std::invalid_argument("unknown theory '" + std::string(name) + "'");
  return parse_theory(slurp(p));
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  out << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title << " (" << r.seconds
      << " s / " << r.limit_seconds << " s)";
  if (!r.detail.empty()) out << ": " << r.detail;
  return out.str();
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

// A proved statement to be re-checked on small models (criterion 9).
struct Obligation {
  Theory theory;
  std::vector<Equation> premises;
  Equation conclusion;
  std::string what;
};

struct Context {
  std::string data_dir;
  std::vector<Obligation> proved;
};

Equation eq_of(const Theory& t, std::string_view text) { return parse_equation(text, t.signature); }

// Proved, with a proof that check_proof accepts.
bool sound_proof(const Theory& t, const ProveResult& r) {
  return r.proved() && r.proof && check_proof(t, *r.proof).valid;
}

CriterionResult criterion1(Context& ctx) {
  CriterionResult res{1, "derivation suite: five goals proved and checked", false, 0, 30, ""};
  struct Goal {
    std::string what;
    Theory theory;
    Equation eq;
  };
  const Theory j = theory_by_code("J").theory;
  const Theory hoop = theory_by_code("hoop").theory;
  const Theory t5_6_8_19 = theory_from_axioms("T5_6_8_19", {5, 6, 8, 19});
  const Theory ll = theory_by_code("left-loop").theory;
  const std::vector<Goal> goals = {
      {"J |- x*e = x", j, eq_of(j, "(x * e) = x")},
      {"J |- e*e = e", j, eq_of(j, "(e * e) = e")},
      {"hoop |- (19)", hoop, axiom(19).equation},
      {"{5,6,8,19} |- (21)", t5_6_8_19, axiom(21).equation},
      {"left-loop |- y->y = e", ll, eq_of(ll, "(y -> y) = e")},
  };
  bool all = true;
  double worst = 0;
  for (const auto& g : goals) {
    const auto start = Clock::now();
    ProveResult r = prove(g.theory, g.eq);
    const double dt = since(start);
    worst = std::max(worst, dt);
    const bool ok = sound_proof(g.theory, r) && dt < res.limit_seconds;
    if (ok) ctx.proved.push_back({g.theory, {}, g.eq, g.what});
    all = all && ok;
    if (!res.detail.empty()) res.detail += "; ";
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << g.what << " " << (ok ? "ok" : (r.proved() ? "bad proof" : "unknown " + r.reason)) << " "
      << dt << "s";
    res.detail += s.str();
  }
  res.passed = all;
  res.seconds = worst;
  return res;
}

CriterionResult criterion2(Context& ctx) {
  CriterionResult res{2, "quasi-entailment suite", false, 0, 60, ""};
  const Theory j = theory_by_code("J").theory;
  const Theory mc = theory_by_code("MC").theory;
  struct Goal {
    std::string what;
    Theory theory;
    std::vector<Equation> premises;
    Equation conclusion;
  };
  const std::vector<Goal> goals = {
      {"J, a->b = e, b->a = e => a = b", j,
       {eq_of(j, "(x -> y) = e"), eq_of(j, "(y -> x) = e")}, eq_of(j, "x = y")},
      {"MC, a->b = e, b->c = e => a->c = e", mc,
       {eq_of(mc, "(x -> y) = e"), eq_of(mc, "(y -> z) = e")}, eq_of(mc, "(x -> z) = e")},
  };
  bool all = true;
  double worst = 0;
  for (const auto& g : goals) {
    const auto start = Clock::now();
    ProveResult r = entails_quasi(g.theory, g.premises, g.conclusion);
    const double dt = since(start);
    worst = std::max(worst, dt);
    const bool ok = sound_proof(g.theory, r) && dt < res.limit_seconds;
    if (ok) ctx.proved.push_back({g.theory, g.premises, g.conclusion, g.what});
    all = all && ok;
    if (!res.detail.empty()) res.detail += "; ";
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << g.what << " " << (ok ? "ok" : (r.proved() ? "bad proof" : "unknown " + r.reason)) << " "
      << dt << "s";
    res.detail += s.str();
  }
  res.passed = all;
  res.seconds = worst;
  return res;
}

CriterionResult criterion3(Context& ctx) {
  CriterionResult res{3, "proof-checker replay of transcribed chains", false, 0, 1, ""};
  const std::vector<std::string> expected = {"mc_flattening", "mc_closure_stability",
                                             "antisym_x_le_xy", "antisym_xy_le_x", "antisym_x_y"};
  const std::regex header(R"(^\s*proof\s+\S+\s+over\s+(\S+))");
  bool all = true;
  double worst = 0;
  for (const auto& name : expected) {
    const fs::path p = fs::path(ctx.data_dir) / "proofs" / (name + ".eqp");
    const auto start = Clock::now();
    std::string verdict;
    bool ok = false;
    try {
      const std::string text = slurp(p);
      std::string theory_name;
      std::istringstream lines(text);
      for (std::string line; std::getline(lines, line);) {
        std::smatch m;
        if (std::regex_search(line, m, header)) {
          theory_name = m[1];
          break;
        }
      }
      const Theory t = resolve_theory(theory_name, ctx.data_dir);
      const Proof proof = parse_proof(text, t.signature);
      const CheckResult c = check_proof(t, proof);
      ok = c.valid;
      verdict = ok ? "valid (" + std::to_string(proof.lines.size()) + " lines)"
                   : "invalid at line " + std::to_string(c.line) + ": " + c.reason;
    } catch (const std::exception& e) {
      verdict = e.what();
    }
    const double dt = since(start);
    worst = std::max(worst, dt);
    ok = ok && dt < res.limit_seconds;
    all = all && ok;
    if (!res.detail.empty()) res.detail += "; ";
    res.detail += name + " " + verdict;
  }
  res.passed = all;
  res.seconds = worst;
  return res;
}

// Naive oracle: every (*, ->, e) table pair on {0, 1}, filtered by the J
// axioms written out directly.
std::set<std::vector<Element>> naive_j_size2() {
  std::set<std::vector<Element>> out;
  const int n = 2;
  for (int sm = 0; sm < 16; ++sm) {
    for (int im = 0; im < 16; ++im) {
      for (int e = 0; e < 2; ++e) {
        auto star = [&](int a, int b) { return (sm >> (3 - (a * n + b))) & 1; };
        auto imp = [&](int a, int b) { return (im >> (3 - (a * n + b))) & 1; };
        bool ok = true;
        for (int x = 0; x < n; ++x) {
          ok = ok && imp(x, x) == e && imp(e, x) == x;
          for (int y = 0; y < n; ++y) {
            const int u = imp(imp(x, y), y);
            ok = ok && star(u, imp(u, x)) == x;
          }
        }
        if (!ok) continue;
        std::vector<Element> key;
        for (int c = 0; c < 4; ++c) key.push_back(static_cast<Element>(star(c / 2, c % 2)));
        for (int c = 0; c < 4; ++c) key.push_back(static_cast<Element>(imp(c / 2, c % 2)));
        key.push_back(static_cast<Element>(e));
        out.insert(key);
      }
    }
  }
  return out;
}

CriterionResult criterion4(Context&) {
  CriterionResult res{4, "model census", false, 0, 5, ""};
  const auto start = Clock::now();
  const Theory j = theory_by_code("J").theory;
  const auto models = enumerate_models(j, 2);
  std::set<std::vector<Element>> enumerated;
  for (const auto& m : models) {
    std::vector<Element> key = m.table("*").values;
    const auto& imp = m.table("->").values;
    key.insert(key.end(), imp.begin(), imp.end());
    key.push_back(m.constant("e"));
    enumerated.insert(key);
  }
  const auto oracle = naive_j_size2();
  // B2: e = 1, * = min, -> Heyting.  Z2 with e = 0 (xor) and e = 1 (xnor).
  const std::vector<Element> b2 = {0, 0, 0, 1, 1, 1, 0, 1, 1};
  const std::vector<Element> z2_e0 = {0, 1, 1, 0, 0, 1, 1, 0, 0};
  const std::vector<Element> z2_e1 = {1, 0, 0, 1, 1, 0, 0, 1, 1};
  const bool has_b2 = enumerated.count(b2) > 0;
  const bool has_z2 = enumerated.count(z2_e0) > 0 && enumerated.count(z2_e1) > 0;
  const std::size_t groups = enumerate_models(theory_by_code("group").theory, 2).size();
  res.seconds = since(start);
  res.passed = models.size() == 12 && enumerated == oracle && has_b2 && has_z2 && groups == 2 &&
               res.seconds < res.limit_seconds;
  res.detail = "J size 2: " + std::to_string(models.size()) + " labeled, oracle " +
               std::to_string(oracle.size()) + (enumerated == oracle ? " (same set)" : " (DIFFERENT)") +
               ", B2 " + (has_b2 ? "present" : "missing") + ", both Z2 labelings " +
               (has_z2 ? "present" : "missing") + "; group size 2: " + std::to_string(groups);
  return res;
}

CriterionResult criterion5(Context& ctx) {
  CriterionResult res{5, "Johnstone protomodularity", false, 0, 30, ""};
  const auto start = Clock::now();
  const Theory j = theory_by_code("J").theory;
  const Term e = Term::constant("e");
  const auto r = check_protomodular_terms(j, named_term("theta"),
                                          {named_term("theta1"), named_term("theta2")}, {e, e});
  res.seconds = since(start);
  bool all = r.all_proved == Tri::True;
  for (const auto& v : r.verdicts) {
    const bool ok = v.proved() && v.proof && check_proof(j, *v.proof).valid;
    all = all && ok;
    if (ok) ctx.proved.push_back({j, {}, v.equation, "protomodularity: " + to_string(v.equation)});
    if (!res.detail.empty()) res.detail += "; ";
    res.detail += to_string(v.equation) + " " + to_string(v.kind);
  }
  res.passed = all && r.verdicts.size() == 3 && res.seconds < res.limit_seconds;
  return res;
}

CriterionResult criterion6(Context& ctx) {
  CriterionResult res{6, "no-go suite", false, 0, 120, ""};
  const auto start = Clock::now();

  const auto monoid = malcev_search(theory_by_code("monoid").theory);
  const bool monoid_ok = monoid.kind == MalcevResult::Kind::ImpossibleBalanced;

  const Theory lattice = theory_by_code("lattice").theory;
  const auto lat = malcev_search(lattice);
  bool lattice_ok = lat.kind == MalcevResult::Kind::ImpossibleModel && lat.clone_model &&
                    lat.clone_model->size() == 2 && satisfies_all(*lat.clone_model, lattice);
  std::size_t clone_size = 0;
  if (lattice_ok) {
    // Recompute the clone and scan every member.
    const auto clone = clone_closure(*lat.clone_model, 3, 256);
    clone_size = clone.size();
    for (const auto& op : clone) {
      bool malcev = true;
      for (std::size_t a = 0; a < 2 && malcev; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
          if (op.values[a * 4 + b * 2 + b] != a || op.values[a * 4 + a * 2 + b] != b) {
            malcev = false;
            break;
          }
        }
      }
      if (malcev) lattice_ok = false;
    }
  }

  const Theory ll = theory_by_code("left-loop").theory;
  MalcevOptions opts;
  opts.max_depth = 3;
  const auto loop = malcev_search(ll, opts);
  const Term expected = binop("*", var(0), binop("->", var(1), var(2)));
  const bool loop_ok = loop.kind == MalcevResult::Kind::Found && loop.term && *loop.term == expected &&
                       loop.proof_xyy && loop.proof_xxy && check_proof(ll, *loop.proof_xyy).valid &&
                       check_proof(ll, *loop.proof_xxy).valid;
  if (loop_ok) {
    ctx.proved.push_back({ll, {}, loop.proof_xyy->conclusion(), "Malcev p(x,y,y) = x"});
    ctx.proved.push_back({ll, {}, loop.proof_xxy->conclusion(), "Malcev p(x,x,y) = y"});
  }
  res.seconds = since(start);
  res.passed = monoid_ok && lattice_ok && loop_ok && res.seconds < res.limit_seconds;
  res.detail = "monoid " + to_string(monoid.kind) + "; lattice " + to_string(lat.kind) +
               " (clone of " + std::to_string(clone_size) + " ternary operations, none Malcev)" +
               "; left-loop " + to_string(loop.kind) +
               (loop.term ? " p = " + to_string(*loop.term) : std::string());
  return res;
}

CriterionResult criterion7(Context&) {
  CriterionResult res{7, "anti-symmetry equationalized, carrier <= 3", false, 0, 300, ""};
  const auto start = Clock::now();
  std::size_t tables = 0, models = 0, exceptions = 0, cornish_models = 0, cornish_bad = 0;
  std::size_t antisym_true = 0, filter_mismatch = 0;
  Signature sig;
  sig.add("t", 2);
  const Term t = Term::app("t", {var(0), var(1)});
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::size_t cells = n * n;
    std::vector<Element> tab(cells, 0);
    while (true) {
      ++tables;
      auto op = [&](std::size_t a, std::size_t b) { return static_cast<std::size_t>(tab[a * n + b]); };
      bool ok = true;
      for (std::size_t x = 0; x < n && ok; ++x) {
        for (std::size_t y = 0; y < n && ok; ++y) {
          const std::size_t xb = op(x, y);
          if (op(op(xb, y), xb) != xb) ok = false;  // (5)
          const std::size_t big = op(xb, x);
          const std::size_t rhs = op(big, x);
          if (op(op(op(big, xb), x), rhs) != rhs) ok = false;  // (9)
          for (std::size_t z = 0; z < n && ok; ++z) {
            if (op(xb, op(x, z)) != op(xb, z)) ok = false;  // (7)
          }
        }
      }
      Model m(sig, n);
      m.set_table("t", tab);
      const auto holds = closure_equations_hold(m, t);
      if (ok != (holds[4] && holds[6] && holds[8])) ++filter_mismatch;
      if (ok) {
        ++models;
        const auto c = antisymmetry_equivalence_check(m, t);
        if (c.antisym) ++antisym_true;
        if (c.antisym != c.x_eq_xy) ++exceptions;
        bool y_le_xy = true;
        for (std::size_t x = 0; x < n; ++x) {
          for (std::size_t y = 0; y < n; ++y) {
            if (op(y, op(x, y)) != op(x, y)) y_le_xy = false;
          }
        }
        if (y_le_xy) {
          ++cornish_models;
          if (c.x_eq_xy && !c.cornish) ++cornish_bad;
        }
      }
      std::size_t k = cells;
      while (k-- > 0) {
        if (++tab[k] < n) break;
        tab[k] = 0;
      }
      if (k == static_cast<std::size_t>(-1)) break;
    }
  }
  res.seconds = since(start);
  res.passed = exceptions == 0 && cornish_bad == 0 && filter_mismatch == 0 && models > 0 &&
               res.seconds < res.limit_seconds;
  res.detail = std::to_string(tables) + " tables, " + std::to_string(models) +
               " satisfy (5),(7),(9) (" + std::to_string(antisym_true) + " anti-symmetric); " +
               std::to_string(exceptions) + " exceptions to antisym <=> X = Xy; " +
               std::to_string(cornish_models) + " with y <= xy, " + std::to_string(cornish_bad) +
               " violating the Cornish direction";
  if (filter_mismatch) res.detail += "; " + std::to_string(filter_mismatch) + " filter mismatches";
  return res;
}

CriterionResult criterion8(Context&) {
  CriterionResult res{8, "Galois connection and derived order", false, 0, 120, ""};
  const auto start = Clock::now();
  const auto& rbj = small_models(theory_by_code("RBJ").theory, 3);
  std::size_t galois_bad = 0;
  for (const auto& m : rbj) {
    if (!check_galois(m).holds) ++galois_bad;
  }
  const auto& j = small_models(theory_by_code("J").theory, 3);
  std::size_t order_bad = 0;
  for (const auto& m : j) {
    const auto o = order_from_implication(m);
    if (!o.reflexive || !o.antisymmetric) ++order_bad;
  }
  res.seconds = since(start);
  res.passed = galois_bad == 0 && order_bad == 0 && !rbj.empty() && !j.empty() &&
               res.seconds < res.limit_seconds;
  res.detail = std::to_string(rbj.size()) + " RBJ models, " + std::to_string(galois_bad) +
               " failing the Galois check; " + std::to_string(j.size()) + " J models, " +
               std::to_string(order_bad) + " with a non-reflexive or non-antisymmetric order";
  return res;
}

CriterionResult criterion9(Context& ctx) {
  CriterionResult res{9, "soundness harness", false, 0, 300, ""};
  const auto start = Clock::now();
  std::size_t checked = 0, violations = 0;
  for (const auto& ob : ctx.proved) {
    const auto& models = small_models(ob.theory, 3);
    checked += models.size();
    if (ob.premises.empty()) {
      for (const auto& m : models) {
        if (!satisfies(m, ob.conclusion).holds) ++violations;
      }
    } else if (quasi_countermodel_in(models, ob.premises, ob.conclusion)) {
      ++violations;
    }
  }
  res.seconds = since(start);
  res.passed = violations == 0 && !ctx.proved.empty() && res.seconds < res.limit_seconds;
  res.detail = std::to_string(ctx.proved.size()) + " proved statements against " +
               std::to_string(checked) + " model checks, " + std::to_string(violations) +
               " violations";
  return res;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(
    std::string_view suite, const std::string& data_dir,
    const std::function<void(const CriterionResult&)>& on_result) {
  const auto ids = suite_criteria(suite);
  Context ctx{data_dir, {}};
  using Fn = CriterionResult (*)(Context&);
  const std::array<Fn, 9> fns = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                 criterion6, criterion7, criterion8, criterion9};
  std::vector<CriterionResult> out;
  for (int id : ids) {
    CriterionResult r;
    try {
      r = fns[id - 1](ctx);
    } catch (const std::exception& e) {
      r.id = id;
      r.title = "criterion " + std::to_string(id);
      r.detail = std::string("error: ") + e.what();
    }
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace eqa
