// eqa: command-line front end.
//
// Exit codes: 0 affirmative answer or success, 1 negative answer (refuted,
// none found, invalid), 2 unknown within budget, 3 usage or input error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "eqa/acceptance.hpp"
#include "eqa/analyzers.hpp"
#include "eqa/catalog.hpp"
#include "eqa/dsl.hpp"
#include "eqa/json.hpp"
#include "eqa/model.hpp"
#include "eqa/proof.hpp"
#include "eqa/prover.hpp"

namespace fs = std::filesystem;
using namespace eqa;

namespace {

constexpr int kYes = 0, kNo = 1, kUnknown = 2, kUsage = 3;

class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Theory load_theory(const std::string& spec) {
  if (spec.empty()) throw InputError("no theory given (-t FILE|CODE)");
  if (fs::is_regular_file(spec)) return parse_theory(slurp(spec));
  try {
    return resolve_theory(spec, default_data_dir());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

struct Common {
  bool json = false;
  int jobs = 1;
  std::size_t max_nodes = 0;
  std::size_t max_term_size = 0;
  double max_seconds = 0;

  Budget budget() const {
    Budget b = Budget::defaults();
    if (max_nodes) b.max_nodes = max_nodes;
    if (max_term_size) b.max_term_size = max_term_size;
    if (max_seconds > 0) b.max_seconds = max_seconds;
    b.validate();
    return b;
  }
};

void add_budget(CLI::App* cmd, Common& c) {
  cmd->add_option("--max-nodes", c.max_nodes, "node budget (default 200000)");
  cmd->add_option("--max-term-size", c.max_term_size, "largest term size explored (default 25)");
  cmd->add_option("--max-seconds", c.max_seconds,
                  "time budget (default 30, or EQA_DEFAULT_BUDGET_SECONDS)");
}

void emit(const Common& c, const Json& j, const std::string& human) {
  if (c.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << human;
    if (!human.empty() && human.back() != '\n') std::cout << "\n";
  }
}

std::string verdict_line(const Verdict& v) {
  std::string s = to_string(v.kind);
  if (!v.detail.empty()) s += " (" + v.detail + ")";
  return s;
}

std::string countermodel_text(const Countermodel& cm) {
  std::string out = print_model(cm.model);
  out += "assignment:";
  for (const auto& [var_index, value] : cm.assignment) {
    out += " x" + std::to_string(var_index) + "=" + std::to_string(value);
  }
  return out + "\n";
}

int exit_for(Tri t) { return t == Tri::True ? kYes : t == Tri::False ? kNo : kUnknown; }
int exit_for(Verdict::Kind k) {
  return k == Verdict::Kind::Proved ? kYes : k == Verdict::Kind::Refuted ? kNo : kUnknown;
}

Term parse_binary_term(const std::string& text, const Theory& t) {
  if (const auto keys = named_term_keys();
      std::find(keys.begin(), keys.end(), text) != keys.end()) {
    return named_term(text);
  }
  return parse_term(text, t.signature);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equational theories, finite models and Malcev/protomodular analysis"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_flag("--json", c.json, "print the whole payload as JSON");
  app.add_option("--jobs", c.jobs, "worker cap (execution is sequential)")->check(CLI::PositiveNumber);

  std::string theory_spec, goal, emit_proof, proof_file, model_file;
  std::vector<std::string> premises;

  auto* prove_cmd = app.add_subcommand("prove", "prove an equation from a theory");
  prove_cmd->add_option("-t,--theory", theory_spec, "theory file or catalog code")->required();
  prove_cmd->add_option("-g,--goal", goal, "equation, e.g. \"(x * e) = x\"")->required();
  prove_cmd->add_option("--emit-proof", emit_proof, "write the proof as .eqp");
  add_budget(prove_cmd, c);

  auto* quasi_cmd = app.add_subcommand("quasi", "quasi-equation entailment");
  quasi_cmd->add_option("-t,--theory", theory_spec, "theory file or catalog code")->required();
  quasi_cmd->add_option("--premise", premises, "premise equation (repeatable)");
  quasi_cmd->add_option("-g,--goal", goal, "conclusion")->required();
  quasi_cmd->add_option("--emit-proof", emit_proof, "write the proof as .eqp");
  add_budget(quasi_cmd, c);

  std::size_t max_size = 3;
  auto* refute_cmd = app.add_subcommand("refute", "search for a finite countermodel");
  refute_cmd->add_option("-t,--theory", theory_spec, "theory file or catalog code")->required();
  refute_cmd->add_option("-g,--goal", goal, "equation")->required();
  refute_cmd->add_option("--premise", premises, "premise for a quasi-equation (repeatable)");
  refute_cmd->add_option("--max-size", max_size, "largest carrier (default 3)");

  std::size_t size = 2;
  bool iso = false, jsonl = false;
  auto* models_cmd = app.add_subcommand("models", "enumerate finite models");
  models_cmd->add_option("-t,--theory", theory_spec, "theory file or catalog code")->required();
  models_cmd->add_option("--size", size, "carrier size")->required();
  models_cmd->add_flag("--iso", iso, "one model per isomorphism class");
  models_cmd->add_flag("--jsonl", jsonl, "one JSON object per line");

  auto* check_cmd = app.add_subcommand("check-proof", "check a .eqp proof");
  check_cmd->add_option("-t,--theory", theory_spec,
                        "theory file or catalog code (default: the proof header's theory)");
  check_cmd->add_option("-p,--proof", proof_file, "proof file")->required();

  auto* analyze = app.add_subcommand("analyze", "meta-level analyzers");
  analyze->require_subcommand(1);
  analyze->fallthrough();

  std::size_t max_depth = 3, model_cap = 3;
  auto* a_malcev = analyze->add_subcommand("malcev", "search for a Malcev term");
  a_malcev->add_option("-t,--theory", theory_spec)->required();
  a_malcev->add_option("--max-depth", max_depth, "term depth bound (default 3)");
  a_malcev->add_option("--model-cap", model_cap, "largest model used (default 3)");
  add_budget(a_malcev, c);

  std::string theta, form = "printed";
  std::vector<std::string> thetas, constants;
  auto* a_proto = analyze->add_subcommand("protomodular", "verify protomodularity terms");
  a_proto->add_option("-t,--theory", theory_spec)->required();
  a_proto->add_option("--theta", theta, "(n+1)-ary term in x0..xn (default: Johnstone)");
  a_proto->add_option("--thetas", thetas, "binary terms theta_1..theta_n");
  a_proto->add_option("--constants", constants, "constant terms t_1..t_n (default e)");
  a_proto->add_option("--form", form, "printed | swapped")
      ->check(CLI::IsMember({"printed", "swapped"}));
  add_budget(a_proto, c);

  std::string term_text = "t", order_text = "(x -> y) = e";
  auto* a_closure = analyze->add_subcommand("closure", "classify a closure term");
  a_closure->add_option("-t,--theory", theory_spec)->required();
  a_closure->add_option("--term", term_text, "binary term (default t = (x -> y) -> y)");
  add_budget(a_closure, c);

  auto* a_det = analyze->add_subcommand("determination", "semi/strong determination");
  a_det->add_option("-t,--theory", theory_spec)->required();
  a_det->add_option("--term", term_text, "binary term (default t)");
  a_det->add_option("--order", order_text, "order equation P(x,y) (default \"(x -> y) = e\")");
  add_budget(a_det, c);

  std::string order_kind = "implication";
  bool preorder = false;
  auto* a_nogo = analyze->add_subcommand("nogo", "no-go certificate for a model");
  a_nogo->add_option("-t,--theory", theory_spec)->required();
  a_nogo->add_option("-m,--model", model_file, ".eqm model file")->required();
  a_nogo->add_option("--order", order_kind,
                     "implication | natural | term:TERM (a <= b iff TERM(a,b) = b)");
  a_nogo->add_flag("--preorder", preorder, "read 'order' as preorder for (partial) inflationary");

  auto* a_galois = analyze->add_subcommand("galois", "x*y <= z iff y <= x->z");
  a_galois->add_option("-t,--theory", theory_spec)->required();
  a_galois->add_option("-m,--model", model_file, ".eqm model (default: all models)");
  a_galois->add_option("--max-size", max_size, "largest carrier when scanning all models");

  auto* a_anti = analyze->add_subcommand("antisym", "anti-symmetry vs X = Xy on a model");
  a_anti->add_option("-t,--theory", theory_spec)->required();
  a_anti->add_option("-m,--model", model_file, ".eqm model file")->required();
  a_anti->add_option("--term", term_text, "binary term (default t)");

  std::string code;
  auto* catalog = app.add_subcommand("catalog", "built-in axioms and theories");
  catalog->require_subcommand(1);
  auto* cat_list = catalog->add_subcommand("list", "list theory codes and axioms");
  auto* cat_show = catalog->add_subcommand("show", "print a theory as .eqt");
  cat_show->add_option("code", code, "theory code")->required();

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify-paper", "run the acceptance suite");
  verify->add_option("--suite", suite, "core | nogo | closure | all")
      ->check(CLI::IsMember({"core", "nogo", "closure", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code_ = app.exit(e);
    return code_ == 0 ? 0 : kUsage;
  }

  try {
    if (*prove_cmd || *quasi_cmd) {
      const Theory t = load_theory(theory_spec);
      const Budget b = c.budget();
      ProveResult r;
      if (*prove_cmd) {
        r = prove(t, parse_equation(goal, t.signature), b);
      } else {
        std::vector<Equation> ps;
        for (const auto& p : premises) ps.push_back(parse_equation(p, t.signature));
        r = entails_quasi(t, ps, parse_equation(goal, t.signature), b);
      }
      if (r.proof && !emit_proof.empty()) {
        std::ofstream out(emit_proof);
        if (!out) throw InputError("cannot write '" + emit_proof + "'");
        out << print_proof(*r.proof);
      }
      std::ostringstream h;
      if (r.proved()) {
        h << "Proved by " << r.method << " (" << r.nodes_explored << " nodes, "
          << r.proof->lines.size() << " lines)\n"
          << print_proof(*r.proof);
      } else {
        h << "Unknown: budget exhausted (" << r.reason << ", " << r.nodes_explored << " nodes)\n";
      }
      emit(c, to_json(r), h.str());
      return r.proved() ? kYes : kUnknown;
    }

    if (*refute_cmd) {
      const Theory t = load_theory(theory_spec);
      const Equation g = parse_equation(goal, t.signature);
      std::optional<Countermodel> cm;
      if (premises.empty()) {
        cm = find_countermodel(t, g, max_size);
      } else {
        std::vector<Equation> ps;
        for (const auto& p : premises) ps.push_back(parse_equation(p, t.signature));
        cm = find_quasi_countermodel(t, ps, g, max_size);
      }
      Json j{{"status", cm ? "Refuted" : "NoCountermodel"}, {"max_size", max_size}};
      if (cm) j["countermodel"] = to_json(*cm);
      emit(c, j,
           cm ? "Refuted by a model of size " + std::to_string(cm->model.size()) + "\n" +
                    countermodel_text(*cm)
              : "No countermodel up to size " + std::to_string(max_size) + "\n");
      return cm ? kYes : kNo;
    }

    if (*models_cmd) {
      const Theory t = load_theory(theory_spec);
      if (size == 0 || size > 255) throw InputError("--size must be between 1 and 255");
      auto ms = enumerate_models(t, size, iso);
      for (std::size_t i = 0; i < ms.size(); ++i) {
        ms[i].name = t.name + "_" + std::to_string(size) + "_" + std::to_string(i + 1);
        ms[i].theory_name = t.name;
      }
      if (jsonl) {
        for (const auto& m : ms) std::cout << to_json(m).dump() << "\n";
      } else if (c.json) {
        Json arr = Json::array();
        for (const auto& m : ms) arr.push_back(to_json(m));
        std::cout << Json{{"theory", t.name}, {"size", size}, {"iso", iso}, {"count", ms.size()},
                          {"models", arr}}
                         .dump(2)
                  << "\n";
      } else {
        for (const auto& m : ms) std::cout << print_model(m) << "\n";
        std::cout << "# " << ms.size() << (iso ? " isomorphism classes" : " labeled models")
                  << " of size " << size << "\n";
      }
      return kYes;
    }

    if (*check_cmd) {
      const std::string text = slurp(proof_file);
      if (theory_spec.empty()) {
        std::smatch mt;
        static const std::regex header(R"((?:^|\n)\s*proof\s+\S+\s+over\s+(\S+))");
        if (std::regex_search(text, mt, header)) theory_spec = mt[1];
      }
      const Theory t = load_theory(theory_spec);
      const Proof p = parse_proof(text, t.signature);
      const CheckResult r = check_proof(t, p);
      Json j{{"valid", r.valid}, {"lines", p.lines.size()}};
      if (!r.valid) {
        j["line"] = r.line;
        j["reason"] = r.reason;
      } else {
        j["conclusion"] = to_json(p.conclusion());
      }
      emit(c, j,
           r.valid ? "valid: " + to_string(p.conclusion()) + "\n"
                   : "invalid at line " + std::to_string(r.line) + ": " + r.reason + "\n");
      return r.valid ? kYes : kNo;
    }

    if (*a_malcev) {
      const Theory t = load_theory(theory_spec);
      MalcevOptions o;
      o.max_depth = max_depth;
      o.model_cap = model_cap;
      o.budget = c.budget();
      const MalcevResult r = malcev_search(t, o);
      std::ostringstream h;
      h << to_string(r.kind) << ": " << r.detail << "\n";
      if (r.proof_xyy) h << print_proof(*r.proof_xyy) << print_proof(*r.proof_xxy);
      if (r.clone_model) h << print_model(*r.clone_model);
      emit(c, to_json(r), h.str());
      switch (r.kind) {
        case MalcevResult::Kind::Found: return kYes;
        case MalcevResult::Kind::Exhausted: return kUnknown;
        default: return kNo;
      }
    }

    if (*a_proto) {
      const Theory t = load_theory(theory_spec);
      AnalyzerOptions o;
      o.budget = c.budget();
      Term th;
      std::vector<Term> ths, cs;
      if (theta.empty()) {
        th = named_term("theta");
        ths = {named_term("theta1"), named_term("theta2")};
      } else {
        th = parse_binary_term(theta, t);
        for (const auto& s : thetas) ths.push_back(parse_binary_term(s, t));
      }
      if (constants.empty()) {
        cs.assign(ths.size(), Term::constant("e"));
      } else {
        for (const auto& s : constants) cs.push_back(parse_term(s, t.signature));
      }
      const auto f = form == "swapped" ? ProtomodularForm::Swapped : ProtomodularForm::Printed;
      const auto r = check_protomodular_terms(t, th, ths, cs, o, f);
      const Term p = derive_malcev_from_protomodular(th, ths, f);
      Json j = to_json(r);
      j["malcev_term"] = to_string(p);
      std::ostringstream h;
      for (const auto& v : r.verdicts) h << to_string(v.equation) << ": " << verdict_line(v) << "\n";
      h << "all proved: " << to_string(r.all_proved) << "\nderived Malcev term: " << to_string(p)
        << "\n";
      emit(c, j, h.str());
      return exit_for(r.all_proved);
    }

    if (*a_closure) {
      const Theory t = load_theory(theory_spec);
      AnalyzerOptions o;
      o.budget = c.budget();
      const auto r = closure_term_report(t, parse_binary_term(term_text, t), o);
      std::ostringstream h;
      for (std::size_t i = 0; i < r.equations.size(); ++i) {
        h << (i + 1) << ". " << r.equations[i].name << ": " << verdict_line(r.verdicts[i]) << "\n";
      }
      h << "preorder_term: " << to_string(r.preorder_term)
        << "\norder_term: " << to_string(r.order_term)
        << "\nrelative_closure: " << to_string(r.relative_closure)
        << "\nweak_relative_closure: " << to_string(r.weak_relative_closure) << "\n";
      emit(c, to_json(r), h.str());
      return exit_for(r.relative_closure);
    }

    if (*a_det) {
      const Theory t = load_theory(theory_spec);
      AnalyzerOptions o;
      o.budget = c.budget();
      const auto r = determination_report(t, parse_binary_term(term_text, t),
                                          parse_equation(order_text, t.signature), o);
      std::ostringstream h;
      h << "semi: " << verdict_line(r.semi) << "\ndetermined: " << to_string(r.determined)
        << " (converse " << verdict_line(r.converse) << ")\nstrong: " << to_string(r.strong)
        << " (P(x, t(x,y)) " << verdict_line(r.p_of_t) << ")\n";
      emit(c, to_json(r), h.str());
      return exit_for(r.semi.kind);
    }

    if (*a_nogo || *a_anti) {
      const Theory t = load_theory(theory_spec);
      Model m = parse_model(slurp(model_file), t.signature);
      if (*a_anti) {
        const auto r = antisymmetry_equivalence_check(m, parse_binary_term(term_text, t));
        std::ostringstream h;
        h << "antisym: " << std::boolalpha << r.antisym << "\nX = Xy: " << r.x_eq_xy
          << "\ncornish: " << r.cornish << "\n";
        emit(c, to_json(r), h.str());
        return r.antisym == r.x_eq_xy ? kYes : kNo;
      }
      OrderRelation order;
      if (order_kind == "implication") {
        order = order_from_implication(m);
      } else if (order_kind == "natural") {
        order = natural_order(m.size());
      } else if (order_kind.rfind("term:", 0) == 0) {
        order = order_from_term(m, parse_binary_term(order_kind.substr(5), t));
      } else {
        throw InputError("unknown --order '" + order_kind + "'");
      }
      const auto r = nogo_certificate(t, m, order, preorder);
      std::ostringstream h;
      if (r.certificate) {
        h << to_string(r.certificate->kind) << " certificate, conclusion "
          << to_string(r.certificate->conclusion) << "\n";
      } else {
        h << "NotApplicable: " << r.reason << "\n";
      }
      emit(c, to_json(r), h.str());
      return r.certificate ? kYes : kNo;
    }

    if (*a_galois) {
      const Theory t = load_theory(theory_spec);
      std::vector<Model> ms;
      if (!model_file.empty()) {
        ms.push_back(parse_model(slurp(model_file), t.signature));
      } else {
        ms = small_models(t, max_size);
      }
      Json arr = Json::array();
      std::size_t failing = 0;
      std::ostringstream h;
      for (const auto& m : ms) {
        const auto g = check_galois(m);
        if (!g.holds) {
          ++failing;
          h << "fails at (x, y, z) = (" << int(g.witness[0]) << ", " << int(g.witness[1]) << ", "
            << int(g.witness[2]) << ") in\n"
            << print_model(m);
        }
        arr.push_back(to_json(g));
      }
      h << ms.size() - failing << " of " << ms.size() << " models satisfy the Galois connection\n";
      emit(c, Json{{"models", ms.size()}, {"failing", failing}, {"results", arr}}, h.str());
      return failing == 0 ? kYes : kNo;
    }

    if (*cat_list) {
      Json theories = Json::array();
      std::ostringstream h;
      h << "theories:\n";
      for (const auto& code_ : named_theory_codes()) {
        const auto nt = theory_by_code(code_);
        theories.push_back({{"code", nt.code}, {"description", nt.description},
                            {"axioms", nt.theory.axioms.size()}});
        h << "  " << nt.code << "  " << nt.description << "\n";
      }
      h << "  letter codes over H M S B C K T, e.g. MC, MBC\naxioms:\n";
      Json axioms = Json::array();
      for (const auto& a : catalog_axioms()) {
        axioms.push_back(to_json(a));
        h << "  (" << a.index << ") " << a.name << " [" << a.label << "]: " << to_string(a.equation)
          << "\n";
      }
      emit(c, Json{{"theories", theories}, {"axioms", axioms}}, h.str());
      return kYes;
    }

    if (*cat_show) {
      Theory t;
      try {
        t = theory_by_code(code).theory;
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      emit(c, to_json(t), print_theory(t));
      return kYes;
    }

    if (*verify) {
      Json arr = Json::array();
      bool all = true;
      const auto results = run_acceptance(suite, default_data_dir(), [&](const CriterionResult& r) {
        if (!c.json) std::cout << format_result(r) << std::endl;
      });
      for (const auto& r : results) {
        all = all && r.passed;
        arr.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed},
                       {"seconds", r.seconds}, {"limit_seconds", r.limit_seconds},
                       {"detail", r.detail}});
      }
      if (c.json) std::cout << Json{{"suite", suite}, {"passed", all}, {"criteria", arr}}.dump(2) << "\n";
      return all ? kYes : kNo;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.span().line << ":" << e.span().column_start << ": " << e.message()
              << "\n";
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
