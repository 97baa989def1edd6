// Terms, equations, and theories over a finite signature.
//
// Terms are immutable, reference-counted trees with structural equality.
// Each node caches its hash, size, and depth so that search tables and
// budgets can use them without re-walking the tree.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eqa {

/// Interned function-symbol name.
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::string_view name);

  std::uint32_t id() const { return id_; }
  const std::string& name() const { return *name_; }

  friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
  friend bool operator!=(Symbol a, Symbol b) { return a.id_ != b.id_; }

 private:
  std::uint32_t id_ = 0;
  const std::string* name_ = &empty_name();
  static const std::string& empty_name();
};

/// Lexicographic order on symbol names (independent of interning order).
int compare_symbols(Symbol a, Symbol b);

/// True if `name` is an operator token (printed infix when binary).
bool is_operator_name(std::string_view name);
/// True if `name` is a plain identifier.
bool is_identifier_name(std::string_view name);
/// True for names in the reserved `@` namespace (fresh constants).
inline bool is_reserved_name(std::string_view name) {
  return !name.empty() && name.front() == '@';
}
/// True if `name` spells a variable (x, y, z, or x<digits>).
bool is_variable_name(std::string_view name);

class Term {
 public:
  using VarIndex = std::uint32_t;

  Term();  // Var(0)
  static Term var(VarIndex index);
  static Term app(Symbol symbol, std::vector<Term> args = {});
  static Term app(std::string_view name, std::vector<Term> args = {}) {
    return app(Symbol(name), std::move(args));
  }
  static Term constant(std::string_view name) { return app(Symbol(name)); }

  bool is_var() const { return node_->is_var; }
  bool is_app() const { return !node_->is_var; }
  bool is_constant() const { return is_app() && node_->args.empty(); }
  VarIndex var_index() const { return node_->var; }
  Symbol symbol() const { return node_->symbol; }
  const std::vector<Term>& args() const { return node_->args; }
  std::size_t arity() const { return node_->args.size(); }

  std::size_t hash() const { return node_->hash; }
  std::size_t size() const { return node_->size; }
  std::size_t depth() const { return node_->depth; }
  /// Largest variable index + 1 (0 when ground).
  VarIndex var_bound() const { return node_->var_bound; }

  bool same_node(const Term& other) const { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node {
    bool is_var = true;
    VarIndex var = 0;
    Symbol symbol;
    std::vector<Term> args;
    std::size_t hash = 0;
    std::size_t size = 1;
    std::size_t depth = 0;
    VarIndex var_bound = 0;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Total order: size first, then variables before applications, then
/// variable index / symbol name, then arguments left to right.
int compare_terms(const Term& a, const Term& b);

struct TermLess {
  bool operator()(const Term& a, const Term& b) const {
    return compare_terms(a, b) < 0;
  }
};

struct Equation {
  Term lhs;
  Term rhs;

  friend bool operator==(const Equation&, const Equation&) = default;
};

struct SignatureEntry {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const SignatureEntry&, const SignatureEntry&) = default;
};

class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<SignatureEntry> symbols);

  /// Throws std::invalid_argument on duplicate or malformed names.
  void add(std::string name, std::size_t arity);

  const std::vector<SignatureEntry>& symbols() const { return symbols_; }
  std::optional<std::size_t> arity_of(std::string_view name) const;
  std::optional<std::size_t> index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name).has_value(); }
  std::vector<std::string> constants() const;
  std::size_t size() const { return symbols_.size(); }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<SignatureEntry> symbols_;
};

struct LabeledAxiom {
  std::string label;
  Equation equation;

  friend bool operator==(const LabeledAxiom&, const LabeledAxiom&) = default;
};

struct Theory {
  std::string name;
  Signature signature;
  std::vector<LabeledAxiom> axioms;

  const LabeledAxiom* find_axiom(std::string_view label) const;
  friend bool operator==(const Theory&, const Theory&) = default;
};

class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const Term::VarIndex, Term>> init)
      : map_(init) {}

  void set(Term::VarIndex v, Term t) { map_.insert_or_assign(v, std::move(t)); }
  const Term* get(Term::VarIndex v) const;
  bool contains(Term::VarIndex v) const { return map_.count(v) != 0; }
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const std::map<Term::VarIndex, Term>& mapping() const { return map_; }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<Term::VarIndex, Term> map_;
};

using VarSet = std::set<Term::VarIndex>;

VarSet free_variables(const Term& term);
VarSet free_variables(const Equation& eq);
void collect_variables(const Term& term, VarSet& out);

Term substitute(const Term& term, const Substitution& s);
Equation substitute(const Equation& eq, const Substitution& s);

/// s1 followed by s2: applies s2 to each image of s1 and to unmapped
/// variables.
Substitution compose(const Substitution& s1, const Substitution& s2);

bool is_balanced(const Equation& eq);
bool is_balanced(const Theory& theory);

struct TermMetrics {
  std::size_t size = 1;
  std::size_t depth = 0;
  friend bool operator==(const TermMetrics&, const TermMetrics&) = default;
};
TermMetrics term_metrics(const Term& term);

/// Position inside a term: child indices from the root.
using Path = std::vector<std::uint32_t>;

const Term& subterm_at(const Term& term, const Path& path);
Term replace_at(const Term& term, const Path& path, const Term& replacement);
/// All positions in pre-order (root first).
std::vector<Path> positions(const Term& term);

/// Throws std::invalid_argument if the term uses unknown symbols or wrong
/// arities.
void check_well_formed(const Term& term, const Signature& sig);
void check_well_formed(const Theory& theory);

/// Textual forms: variables print as x0, x1, ...; binary operator symbols
/// print infix with parentheses; other applications as name(args).
std::string to_string(const Term& term);
std::string to_string(const Equation& eq);
std::string to_string(const Substitution& s);

/// Convenience builders used throughout.
inline Term var(Term::VarIndex i) { return Term::var(i); }
inline Term binop(std::string_view op, Term a, Term b) {
  return Term::app(op, {std::move(a), std::move(b)});
}

}  // namespace eqa
