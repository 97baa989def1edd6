// Finite models: evaluation, satisfaction, enumeration, countermodels,
// clone closure, and the order derived from an implication symbol.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqa/term.hpp"

namespace eqa {

using Element = std::uint8_t;

/// Total operation on {0..n-1}, stored row-major (first argument is the
/// most significant digit).
struct OperationTable {
  std::size_t arity = 0;
  std::vector<Element> values;

  friend bool operator==(const OperationTable&, const OperationTable&) = default;
  friend auto operator<=>(const OperationTable&, const OperationTable&) = default;
};

class Model {
 public:
  Model() = default;
  /// All tables zero-initialised.
  Model(Signature sig, std::size_t size);

  const Signature& signature() const { return sig_; }
  std::size_t size() const { return size_; }

  const OperationTable& table(std::size_t symbol_index) const { return tables_.at(symbol_index); }
  const OperationTable& table(std::string_view name) const;
  OperationTable& mutable_table(std::size_t symbol_index) { return tables_.at(symbol_index); }
  void set_table(std::string_view name, std::vector<Element> values);
  void set_constant(std::string_view name, Element value);
  Element constant(std::string_view name) const { return table(name).values.at(0); }

  Element apply(std::size_t symbol_index, const Element* args) const;

  /// Throws std::invalid_argument if a table entry is out of range or a
  /// table has the wrong length.
  void validate() const;

  std::string name;
  std::string theory_name;

  /// Tables concatenated in signature order; used for canonical forms.
  std::vector<Element> serialize() const;

  friend bool operator==(const Model& a, const Model& b) {
    return a.sig_ == b.sig_ && a.size_ == b.size_ && a.tables_ == b.tables_;
  }

 private:
  Signature sig_;
  std::size_t size_ = 0;
  std::vector<OperationTable> tables_;
};

/// Variable index -> element. Unmapped variables are unbound.
using Assignment = std::map<Term::VarIndex, Element>;

/// Throws std::invalid_argument on an unbound variable or unknown symbol.
Element evaluate(const Model& m, const Term& t, const Assignment& a);

struct SatisfactionResult {
  bool holds = true;
  Assignment witness;  // lexicographically least failing assignment
};

SatisfactionResult satisfies(const Model& m, const Equation& eq);
bool satisfies_all(const Model& m, const Theory& t);

/// Calls `emit` for each model in enumeration order; an `emit` returning
/// false stops the enumeration.
void for_each_model(const Theory& t, std::size_t size,
                    const std::function<bool(const Model&)>& emit);

/// Labeled enumeration, or one representative per isomorphism class (the
/// first one met in enumeration order) when `iso_filter` is set.
std::vector<Model> enumerate_models(const Theory& t, std::size_t size,
                                    bool iso_filter = false);

/// Serialization minimised over all carrier permutations.
std::vector<Element> canonical_form(const Model& m);
bool isomorphic(const Model& a, const Model& b);
Model permute(const Model& m, const std::vector<Element>& perm);

struct Countermodel {
  Model model;
  Assignment assignment;
};

/// Smallest-carrier model of `t` violating `eq`.
std::optional<Countermodel> find_countermodel(const Theory& t, const Equation& eq,
                                              std::size_t max_size);

/// A model of `t` plus an assignment making every premise true and the
/// conclusion false.
std::optional<Countermodel> find_quasi_countermodel(
    const Theory& t, const std::vector<Equation>& premises,
    const Equation& conclusion, std::size_t max_size);

/// Same check against an explicit list of candidate models.
std::optional<Countermodel> quasi_countermodel_in(
    const std::vector<Model>& models, const std::vector<Equation>& premises,
    const Equation& conclusion);

class CloneCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All k-ary term operations of `m`.  Throws CloneCapExceeded when the
/// closure grows past `cap`.
std::set<OperationTable> clone_closure(const Model& m, std::size_t arity,
                                       std::size_t cap);

/// First member of the k-ary clone (in generation order) accepted by
/// `pred`, or nullopt when the whole closure has none.  `closure_size`
/// receives the number of members generated.  Throws CloneCapExceeded.
std::optional<OperationTable> find_in_clone(const Model& m, std::size_t arity, std::size_t cap,
                                            const std::function<bool(const OperationTable&)>& pred,
                                            std::size_t* closure_size = nullptr);

/// p(a,b,b) = a and p(a,a,b) = b for all a, b.
bool is_malcev_operation(const OperationTable& op, std::size_t carrier);

struct OrderRelation {
  std::size_t size = 0;
  std::vector<std::vector<bool>> leq;
  bool reflexive = false;
  bool antisymmetric = false;
  bool transitive = false;
  bool discrete = false;

  bool operator()(Element a, Element b) const { return leq[a][b]; }
  bool is_partial_order() const { return reflexive && antisymmetric && transitive; }
  bool is_preorder() const { return reflexive && transitive; }
};

/// Builds the relation from a matrix and computes its flags.
OrderRelation make_order(std::vector<std::vector<bool>> leq);
/// a <= b iff a -> b = e.  Throws std::invalid_argument when `->` or `e`
/// is missing.
OrderRelation order_from_implication(const Model& m, std::string_view implication = "->",
                                     std::string_view unit = "e");
/// a <= b iff t(a,b) = b for a binary term t in x0, x1.
OrderRelation order_from_term(const Model& m, const Term& t);
/// The numeric order on the carrier.
OrderRelation natural_order(std::size_t size);

struct GaloisResult {
  bool holds = true;
  std::array<Element, 3> witness{};  // (x, y, z)
};

/// x*y <= z iff y <= x->z for all triples, with <= from the implication.
GaloisResult check_galois(const Model& m);

}  // namespace eqa
