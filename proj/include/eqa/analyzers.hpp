// Meta-level procedures: order determination, closure-term classification,
// protomodularity and Malcev verification/search, no-go certificates.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "eqa/model.hpp"
#include "eqa/proof.hpp"
#include "eqa/prover.hpp"
#include "eqa/term.hpp"

namespace eqa {

struct Verdict {
  enum class Kind { Proved, Refuted, Unknown };

  Kind kind = Kind::Unknown;
  /// The equation (or quasi conclusion) the verdict is about.
  Equation equation;
  std::vector<Equation> premises;
  std::optional<Proof> proof;
  std::optional<Countermodel> countermodel;
  std::string detail;

  bool proved() const { return kind == Kind::Proved; }
  bool refuted() const { return kind == Kind::Refuted; }
};

std::string to_string(Verdict::Kind k);

/// Three-valued classification.
enum class Tri { True, False, Unknown };
std::string to_string(Tri t);

struct AnalyzerOptions {
  Budget budget = Budget::defaults();
  /// Countermodels are sought among models of at most this size first.
  std::size_t refute_max_size = 3;
};

/// Verdict for T |- eq: a countermodel among the cached small models, else
/// a proof attempt.
Verdict decide(const Theory& t, const Equation& eq, const AnalyzerOptions& opts = {});
/// Same for the quasi-equation premises => conclusion.
Verdict decide_quasi(const Theory& t, const std::vector<Equation>& premises,
                     const Equation& conclusion, const AnalyzerOptions& opts = {});

/// Models of `t` with carrier 1..max_size in enumeration order, computed
/// once per (theory, size) and shared.
const std::vector<Model>& small_models(const Theory& t, std::size_t max_size);

struct DeterminationReport {
  Verdict semi;      // P(x,y) => t(x,y) = y
  Verdict converse;  // t(x,y) = y => P(x,y)
  Verdict p_of_t;    // P(x, t(x,y))
  Verdict::Kind determined = Verdict::Kind::Unknown;
  Verdict::Kind strong = Verdict::Kind::Unknown;
};

DeterminationReport determination_report(const Theory& t, const Term& term, const Equation& p,
                                         const AnalyzerOptions& opts = {});

/// The nine closure equations for a binary term t(x0, x1), in definition
/// order: idempotency, transitivity, antisymmetry, left_absorption,
/// right_absorption, left_monotonicity, flattening, closure_stability,
/// weak_closure_stability.
struct ClosureEquation {
  std::string name;
  Equation equation;
};
std::vector<ClosureEquation> closure_equations(const Term& term);

struct ClosureTermReport {
  std::vector<ClosureEquation> equations;
  std::vector<Verdict> verdicts;  // parallel to equations
  Tri preorder_term = Tri::Unknown;
  Tri order_term = Tri::Unknown;
  Tri relative_closure = Tri::Unknown;
  Tri weak_relative_closure = Tri::Unknown;
};

ClosureTermReport closure_term_report(const Theory& t, const Term& term,
                                      const AnalyzerOptions& opts = {});

/// Which of the nine equations hold in a model.
std::array<bool, 9> closure_equations_hold(const Model& m, const Term& term);

/// Printed: theta(y, theta_1(x,y), ..., theta_n(x,y)) = x.
/// Swapped: theta(y, theta_1(y,x), ..., theta_n(y,x)) = x, the form under
/// which theta(x, theta_1(y,z), ...) is a Malcev term.
enum class ProtomodularForm { Printed, Swapped };
std::string to_string(ProtomodularForm f);

struct ProtomodularReport {
  ProtomodularForm form = ProtomodularForm::Printed;
  std::vector<Verdict> verdicts;  // theta_i(x,x) = c_i for each i, then the theta equation
  Tri all_proved = Tri::Unknown;
};

/// theta has variables among x0..xn; each theta_i is binary in x0, x1.
ProtomodularReport check_protomodular_terms(const Theory& t, const Term& theta,
                                            const std::vector<Term>& thetas,
                                            const std::vector<Term>& constants,
                                            const AnalyzerOptions& opts = {},
                                            ProtomodularForm form = ProtomodularForm::Printed);

/// Swapped (default): p(x,y,z) = theta(x, theta_1(y,z), ..., theta_n(y,z)).
/// Printed: p(x,y,z) = theta(z, theta_1(x,y), ..., theta_n(x,y)).
/// Either is Malcev when the terms satisfy the matching form.  Throws
/// std::invalid_argument when theta mentions a variable beyond x_n or a
/// theta_i is not binary.
Term derive_malcev_from_protomodular(const Term& theta, const std::vector<Term>& thetas,
                                     ProtomodularForm form = ProtomodularForm::Swapped);

struct NoGoCertificate {
  enum class Kind { Balanced, Monotone, PartiallyInflationary, Inflationary };
  enum class Conclusion { NotMalcev, NotProtomodular };

  Kind kind = Kind::Balanced;
  Conclusion conclusion = Conclusion::NotMalcev;
  std::optional<Model> model;
  std::optional<OrderRelation> order;
  /// Monotone: a < b.
  std::optional<std::pair<Element, Element>> witness;
  /// Per signature symbol: the inflationary component, or -1 for constants.
  std::vector<int> inflationary_component;
  /// Per constant (by name): an element b with c not <= b.
  std::vector<std::pair<std::string, Element>> non_minimum_evidence;
  /// Per constant: its value, verified to be the maximum.
  std::vector<std::pair<std::string, Element>> maximum_evidence;
  /// True when anti-symmetry of the order was not required.
  bool preorder_reading = false;
};

std::string to_string(NoGoCertificate::Kind k);
std::string to_string(NoGoCertificate::Conclusion c);

struct NoGoResult {
  std::optional<NoGoCertificate> certificate;
  std::string reason;  // why no certificate applies
};

/// Throws std::invalid_argument when m does not satisfy t.
NoGoResult nogo_certificate(const Theory& t, const Model& m, const OrderRelation& order,
                            bool allow_preorder = false);

/// Re-checks every condition a certificate claims.
bool verify_certificate(const Theory& t, const NoGoCertificate& c);

struct MalcevResult {
  enum class Kind { Found, ImpossibleBalanced, ImpossibleModel, Exhausted };

  Kind kind = Kind::Exhausted;
  std::optional<Term> term;
  std::optional<Proof> proof_xyy;  // p(x,y,y) = x
  std::optional<Proof> proof_xxy;  // p(x,x,y) = y
  std::optional<NoGoCertificate> certificate;
  /// ImpossibleModel: the model whose ternary clone has no Malcev operation.
  std::optional<Model> clone_model;
  std::size_t clone_size = 0;
  std::size_t depth = 0;
  std::size_t candidates_considered = 0;
  std::size_t candidates_attempted = 0;
  std::string detail;
};

std::string to_string(MalcevResult::Kind k);

struct MalcevOptions {
  std::size_t max_depth = 3;
  /// Largest carrier of the models used for clone scans and filtering.
  std::size_t model_cap = 3;
  std::size_t clone_cap = 20000;
  /// Budget of the whole search and of each proof attempt.
  Budget budget = Budget::defaults();
  Budget candidate_budget{20000, 25, 3.0};
};

MalcevResult malcev_search(const Theory& t, const MalcevOptions& opts = {});

struct AntisymmetryCheck {
  bool antisym = true;
  bool x_eq_xy = true;
  bool cornish = true;
};

/// x <= y iff term(x, y) = y; X = t(t(x,y),x).
AntisymmetryCheck antisymmetry_equivalence_check(const Model& m, const Term& term);

}  // namespace eqa
