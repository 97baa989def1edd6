// Matching, unification and the Knuth-Bendix order used by the prover.

#pragma once

#include <optional>
#include <unordered_map>

#include "eqa/term.hpp"

namespace eqa {

/// Extends `s` so that s(pattern) == term; returns false (leaving `s` in an
/// unspecified state) when no such extension exists.
bool match(const Term& pattern, const Term& term, Substitution& s);

/// Most general unifier, idempotent.
std::optional<Substitution> unify(const Term& a, const Term& b);

/// Adds `offset` to every variable index.
Term shift_variables(const Term& t, Term::VarIndex offset);

/// Renames variables to 0, 1, ... in order of first occurrence (lhs first).
/// Returns the renaming applied.
Substitution canonical_renaming(const Equation& eq);

/// Symbol precedence for KBO; unknown symbols rank below all known ones
/// and are ordered by name.
class Precedence {
 public:
  void set(Symbol s, long rank) { rank_[s.id()] = rank; }
  long rank(Symbol s) const;
  int compare(Symbol a, Symbol b) const;

 private:
  std::unordered_map<std::uint32_t, long> rank_;
};

/// KBO with unit weights: s > t.
bool kbo_greater(const Term& s, const Term& t, const Precedence& prec);

}  // namespace eqa
