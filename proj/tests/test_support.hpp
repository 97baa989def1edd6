// Shared helpers for the unit tests: seeded random terms and small budgets.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "eqa/prover.hpp"
#include "eqa/term.hpp"

namespace eqa::testing {

inline Signature jsig() {
  return Signature({{"*", 2}, {"->", 2}, {"e", 0}});
}

/// Random term over `sig`, variables x0..x(vars-1), at most `depth` levels.
inline Term random_term(std::mt19937& rng, const Signature& sig, std::size_t depth,
                        std::size_t vars = 3) {
  std::uniform_int_distribution<std::size_t> pick(0, sig.size() + vars - 1);
  const std::size_t k = depth == 0 ? sig.size() + rng() % vars : pick(rng);
  if (k >= sig.size()) return Term::var(static_cast<Term::VarIndex>(k - sig.size()));
  const auto& entry = sig.symbols()[k];
  std::vector<Term> args;
  for (std::size_t i = 0; i < entry.arity; ++i) {
    args.push_back(random_term(rng, sig, depth - 1, vars));
  }
  return Term::app(entry.name, std::move(args));
}

inline Substitution random_substitution(std::mt19937& rng, const Signature& sig,
                                        std::size_t depth = 2) {
  Substitution s;
  for (Term::VarIndex v = 0; v < 3; ++v) {
    if (rng() % 3 != 0) s.set(v, random_term(rng, sig, depth));
  }
  return s;
}

inline Budget small_budget(double seconds = 10.0) {
  Budget b;
  b.max_seconds = seconds;
  return b;
}

}  // namespace eqa::testing
