#include "eqa/proof.hpp"

#include <algorithm>
#include <sstream>

namespace eqa {

std::size_t Proof::add(Equation eq, Justification by) {
  lines.push_back({std::move(eq), std::move(by)});
  return lines.size();
}

namespace {

void collect_reserved(const Term& t, std::vector<std::string>& out) {
  if (t.is_var()) return;
  const auto& name = t.symbol().name();
  if (t.arity() == 0 && is_reserved_name(name)) {
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  }
  for (const auto& a : t.args()) collect_reserved(a, out);
}

CheckResult fail(std::size_t line, std::string reason) {
  return {false, line, std::move(reason)};
}

}  // namespace

Theory extend_with_premises(const Theory& t, const std::vector<LabeledAxiom>& premises) {
  Theory out = t;
  std::vector<std::string> fresh;
  for (const auto& p : premises) {
    collect_reserved(p.equation.lhs, fresh);
    collect_reserved(p.equation.rhs, fresh);
  }
  std::sort(fresh.begin(), fresh.end());
  for (const auto& name : fresh) {
    if (!out.signature.contains(name)) out.signature.add(name, 0);
  }
  for (const auto& p : premises) out.axioms.push_back(p);
  return out;
}

CheckResult check_proof(const Theory& theory, const Proof& p) {
  Theory t = p.premises.empty() ? theory : extend_with_premises(theory, p.premises);
  // Fresh constants are signature-independent; admit those the lines use.
  std::vector<std::string> fresh;
  for (const auto& line : p.lines) {
    collect_reserved(line.equation.lhs, fresh);
    collect_reserved(line.equation.rhs, fresh);
    std::visit(
        [&](const auto& rule) {
          if constexpr (requires { rule.subst; }) {
            for (const auto& [v, image] : rule.subst.mapping()) collect_reserved(image, fresh);
          }
        },
        line.by);
  }
  std::sort(fresh.begin(), fresh.end());
  for (const auto& name : fresh) {
    if (!t.signature.contains(name)) t.signature.add(name, 0);
  }
  try {
    check_well_formed(t);
  } catch (const std::invalid_argument& e) {
    return fail(0, std::string("premises: ") + e.what());
  }
  if (p.lines.empty()) return fail(0, "empty proof");

  for (std::size_t n = 1; n <= p.lines.size(); ++n) {
    const auto& line = p.lines[n - 1];
    const Equation& eq = line.equation;
    try {
      check_well_formed(eq.lhs, t.signature);
      check_well_formed(eq.rhs, t.signature);
    } catch (const std::invalid_argument& e) {
      return fail(n, e.what());
    }
    auto cited = [&](std::size_t i) -> const Equation* {
      if (i == 0 || i >= n) return nullptr;
      return &p.lines[i - 1].equation;
    };

    std::string error;
    std::visit(
        [&](const auto& rule) {
          using R = std::decay_t<decltype(rule)>;
          if constexpr (std::is_same_v<R, AxiomRule>) {
            const LabeledAxiom* ax = t.find_axiom(rule.label);
            if (!ax) {
              error = "unknown axiom '" + rule.label + "'";
              return;
            }
            for (const auto& [v, image] : rule.subst.mapping()) {
              try {
                check_well_formed(image, t.signature);
              } catch (const std::invalid_argument& e) {
                error = e.what();
                return;
              }
            }
            if (substitute(ax->equation, rule.subst) != eq) {
              error = "not an instance of axiom '" + rule.label + "'";
            }
          } else if constexpr (std::is_same_v<R, ReflRule>) {
            if (eq.lhs != eq.rhs) error = "refl requires identical sides";
          } else if constexpr (std::is_same_v<R, SymRule>) {
            const Equation* a = cited(rule.line);
            if (!a) {
              error = "sym cites line " + std::to_string(rule.line) + " which is not earlier";
            } else if (a->lhs != eq.rhs || a->rhs != eq.lhs) {
              error = "sym conclusion does not swap line " + std::to_string(rule.line);
            }
          } else if constexpr (std::is_same_v<R, TransRule>) {
            const Equation* a = cited(rule.first);
            const Equation* b = cited(rule.second);
            if (!a || !b) {
              error = "trans cites a line that is not earlier";
            } else if (a->rhs != b->lhs) {
              error = "trans: right side of line " + std::to_string(rule.first) +
                      " differs from left side of line " + std::to_string(rule.second);
            } else if (a->lhs != eq.lhs || b->rhs != eq.rhs) {
              error = "trans conclusion does not match the cited lines";
            }
          } else if constexpr (std::is_same_v<R, SubstRule>) {
            const Equation* tmpl = cited(rule.template_line);
            if (!tmpl) {
              error = "subst template line is not earlier";
              return;
            }
            std::vector<Term::VarIndex> open;
            for (auto v : free_variables(*tmpl)) {
              if (!rule.subst.contains(v)) open.push_back(v);
            }
            if (open.size() != rule.arg_lines.size()) {
              error = "subst expects " + std::to_string(open.size()) +
                      " argument lines, got " + std::to_string(rule.arg_lines.size());
              return;
            }
            Substitution left = rule.subst;
            Substitution right = rule.subst;
            for (std::size_t k = 0; k < open.size(); ++k) {
              const Equation* arg = cited(rule.arg_lines[k]);
              if (!arg) {
                error = "subst argument line " + std::to_string(rule.arg_lines[k]) +
                        " is not earlier";
                return;
              }
              left.set(open[k], arg->lhs);
              right.set(open[k], arg->rhs);
            }
            for (const auto& [v, image] : rule.subst.mapping()) {
              try {
                check_well_formed(image, t.signature);
              } catch (const std::invalid_argument& e) {
                error = e.what();
                return;
              }
            }
            if (substitute(tmpl->lhs, left) != eq.lhs ||
                substitute(tmpl->rhs, right) != eq.rhs) {
              error = "subst conclusion does not match";
            }
          }
        },
        line.by);
    if (!error.empty()) return fail(n, error);
  }
  return {};
}

}  // namespace eqa
