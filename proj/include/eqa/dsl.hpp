// Line-oriented text formats.
//
//   .eqt   theory NAME
//          sig * : 2; -> : 2; e : 0;
//          axiom refl: (x -> x) = e;
//
//   .eqm   model NAME over THEORY size N
//          const e = 1;
//          table -> = [[1, 1], [0, 1]];
//
//   .eqp   proof NAME over THEORY
//          premise h1: (@a0 -> @a1) = e;
//          1: (x0 -> x0) = e by axiom refl [];
//          2: e = (x0 -> x0) by sym 1;
//
// Terms: variables x, y, z (aliases of x0, x1, x2) or x<digits>; binary
// operator symbols are written infix inside parentheses, everything else
// as name(args).  There is no precedence.  `#` starts a comment.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eqa/model.hpp"
#include "eqa/proof.hpp"
#include "eqa/term.hpp"

namespace eqa {

struct SourceSpan {
  std::size_t line = 1;
  std::size_t column_start = 1;
  std::size_t column_end = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, SourceSpan span, std::vector<std::string> expected = {});

  const std::string& message() const { return message_; }
  const SourceSpan& span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::string message_;
  SourceSpan span_;
  std::vector<std::string> expected_;
};

struct ParseOptions {
  /// Accept `@`-prefixed constants (fresh constants of quasi-entailment).
  bool allow_reserved = false;
};

Theory parse_theory(std::string_view text);
std::string print_theory(const Theory& t);

Term parse_term(std::string_view text, const Signature& sig, ParseOptions opts = {});
Equation parse_equation(std::string_view text, const Signature& sig, ParseOptions opts = {});
/// `[x0 := TERM, ...]`
Substitution parse_substitution(std::string_view text, const Signature& sig,
                                ParseOptions opts = {});

Model parse_model(std::string_view text, const Signature& sig);
std::string print_model(const Model& m);

/// Reserved constants are accepted in premises and lines.
Proof parse_proof(std::string_view text, const Signature& sig);
std::string print_proof(const Proof& p);

}  // namespace eqa
