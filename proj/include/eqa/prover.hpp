// Bounded equational prover and quasi-equation entailment.
//
// The search first explores the graph of terms provably equal to either
// side of the goal (best-first by term size, meeting in the middle).  When
// that phase runs out of its share of the budget, an ordered completion
// loop takes over.  Either way the result is compiled to a Proof that
// check_proof accepts.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqa/proof.hpp"
#include "eqa/term.hpp"

namespace eqa {

struct Budget {
  std::size_t max_nodes = 200000;
  std::size_t max_term_size = 25;
  double max_seconds = 30.0;

  /// Defaults, with max_seconds taken from EQA_DEFAULT_BUDGET_SECONDS when
  /// set.
  static Budget defaults();
  /// Throws std::invalid_argument unless every field is positive.
  void validate() const;
};

struct ProveResult {
  enum class Status { Proved, Unknown };

  Status status = Status::Unknown;
  std::optional<Proof> proof;
  /// For Unknown: the exhausted dimension ("max_nodes", "max_seconds",
  /// "max_term_size").
  std::string reason;
  std::size_t nodes_explored = 0;
  /// "search" or "completion".
  std::string method;

  bool proved() const { return status == Status::Proved; }
};

ProveResult prove(const Theory& t, const Equation& goal, const Budget& b = Budget::defaults());

/// Freezes the variables of premises and conclusion into fresh constants
/// @a0, @a1, ... (in increasing variable order), adds the closed premises as
/// axioms and proves the closed conclusion.  The proof records the closed
/// premises; check it against `t` with check_proof.
ProveResult entails_quasi(const Theory& t, const std::vector<Equation>& premises,
                          const Equation& conclusion, const Budget& b = Budget::defaults());

/// The freezing map used by entails_quasi: variable index -> @a<k>.
Substitution freeze_variables(const std::vector<Equation>& premises, const Equation& conclusion);

}  // namespace eqa
