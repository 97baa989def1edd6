// Built-in axioms (1)-(22) over (*, ->, e), the named theories composed from
// them, and frequently used terms.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "eqa/term.hpp"

namespace eqa {

struct AxiomEntry {
  int index = 0;
  std::string name;                  // e.g. "Monotone division"
  std::string label;                 // identifier used in theories and proofs
  std::vector<std::string> aliases;  // e.g. "M-axiom"
  Equation equation;
};

/// All 22 entries in index order.
const std::vector<AxiomEntry>& catalog_axioms();

/// Lookup by index.  Throws std::invalid_argument on an unknown key.
const AxiomEntry& axiom(int index);
/// Lookup by name, alias, label or decimal index (case-insensitive).
const AxiomEntry& axiom(std::string_view key);

struct NamedTheory {
  std::string code;
  std::string description;
  Theory theory;
};

/// Theory from catalog axioms; the signature is (*, ->, e) restricted to
/// the symbols that occur, in that order.
Theory theory_from_axioms(std::string name, const std::vector<int>& indices);

/// Named theories and letter codes over {H, M, S, B, C, K, T}.  Letter codes
/// are normalized to the order H, M, S, B, C, K, T.  Throws
/// std::invalid_argument on an unknown code.
NamedTheory theory_by_code(std::string_view code);

/// Codes accepted by theory_by_code, excluding letter combinations.
std::vector<std::string> named_theory_codes();

/// t, v, xbar, X, theta, theta1, theta2, p-johnstone.
Term named_term(std::string_view key);
std::vector<std::string> named_term_keys();

/// t(x, y) = (x -> y) -> y applied to two terms.
Term t_of(const Term& a, const Term& b);

}  // namespace eqa
