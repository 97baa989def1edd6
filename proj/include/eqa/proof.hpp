// Proof objects for the five-rule equational calculus and their checker.
//
// A proof is a numbered list of equations.  Line numbers are 1-based; each
// justification may only cite earlier lines.
//
//   Axiom(label, s)      s(l) = s(r) for an axiom or premise l = r
//   Refl                 t = t
//   Sym(i)               from a = b infer b = a
//   Trans(i, j)          from a = b and b = c infer a = c
//   Subst(i, js, s)      line i proves t1 = t2; the free variables of line
//                        i outside dom(s), in increasing order, are paired
//                        with the lines js proving u_k = u'_k;  infer
//                        t1[s, u] = t2[s, u'].

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "eqa/term.hpp"

namespace eqa {

struct AxiomRule {
  std::string label;
  Substitution subst;
  friend bool operator==(const AxiomRule&, const AxiomRule&) = default;
};
struct ReflRule {
  friend bool operator==(const ReflRule&, const ReflRule&) = default;
};
struct SymRule {
  std::size_t line = 0;
  friend bool operator==(const SymRule&, const SymRule&) = default;
};
struct TransRule {
  std::size_t first = 0;
  std::size_t second = 0;
  friend bool operator==(const TransRule&, const TransRule&) = default;
};
struct SubstRule {
  std::size_t template_line = 0;
  std::vector<std::size_t> arg_lines;
  Substitution subst;
  friend bool operator==(const SubstRule&, const SubstRule&) = default;
};

using Justification = std::variant<AxiomRule, ReflRule, SymRule, TransRule, SubstRule>;

struct ProofLine {
  Equation equation;
  Justification by;
  friend bool operator==(const ProofLine&, const ProofLine&) = default;
};

struct Proof {
  std::string name;
  std::string theory_name;
  /// Closed hypotheses (quasi-entailment); usable through AxiomRule.
  std::vector<LabeledAxiom> premises;
  std::vector<ProofLine> lines;

  /// Appends a line and returns its 1-based number.
  std::size_t add(Equation eq, Justification by);
  const Equation& conclusion() const { return lines.back().equation; }
  friend bool operator==(const Proof&, const Proof&) = default;
};

struct CheckResult {
  bool valid = true;
  std::size_t line = 0;  // first offending line (1-based) when invalid
  std::string reason;

  explicit operator bool() const { return valid; }
};

/// Theory extended by the proof's premises; fresh `@` constants that occur
/// in the premises are added to the signature.
Theory extend_with_premises(const Theory& t, const std::vector<LabeledAxiom>& premises);

/// `@` constants occurring in the lines are admitted as fresh constants.
CheckResult check_proof(const Theory& t, const Proof& p);

}  // namespace eqa
