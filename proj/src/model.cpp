#include "eqa/model.hpp"

#include <algorithm>
#include <numeric>

namespace eqa {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp--) r *= base;
  return r;
}

}  // namespace

Model::Model(Signature sig, std::size_t size) : sig_(std::move(sig)), size_(size) {
  if (size == 0) throw std::invalid_argument("model carrier must be non-empty");
  if (size > 255) throw std::invalid_argument("model carrier too large");
  tables_.reserve(sig_.size());
  for (const auto& s : sig_.symbols()) {
    tables_.push_back({s.arity, std::vector<Element>(ipow(size, s.arity), 0)});
  }
}

const OperationTable& Model::table(std::string_view name) const {
  auto idx = sig_.index_of(name);
  if (!idx) throw std::invalid_argument("model has no symbol '" + std::string(name) + "'");
  return tables_[*idx];
}

void Model::set_table(std::string_view name, std::vector<Element> values) {
  auto idx = sig_.index_of(name);
  if (!idx) throw std::invalid_argument("model has no symbol '" + std::string(name) + "'");
  auto& tab = tables_[*idx];
  if (values.size() != tab.values.size()) {
    throw std::invalid_argument("table for '" + std::string(name) + "' has " +
                                std::to_string(values.size()) + " entries, expected " +
                                std::to_string(tab.values.size()));
  }
  tab.values = std::move(values);
}

void Model::set_constant(std::string_view name, Element value) { set_table(name, {value}); }

Element Model::apply(std::size_t symbol_index, const Element* args) const {
  const auto& tab = tables_[symbol_index];
  std::size_t pos = 0;
  for (std::size_t i = 0; i < tab.arity; ++i) pos = pos * size_ + args[i];
  return tab.values[pos];
}

void Model::validate() const {
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    const auto& tab = tables_[i];
    const auto& s = sig_.symbols()[i];
    if (tab.arity != s.arity || tab.values.size() != ipow(size_, s.arity)) {
      throw std::invalid_argument("table for '" + s.name + "' has the wrong shape");
    }
    for (Element v : tab.values) {
      if (v >= size_) {
        throw std::invalid_argument("table for '" + s.name + "' has entry " +
                                    std::to_string(v) + " outside the carrier");
      }
    }
  }
}

std::vector<Element> Model::serialize() const {
  std::vector<Element> out;
  for (const auto& t : tables_) out.insert(out.end(), t.values.begin(), t.values.end());
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

// Term flattened to post-order over signature indices and variable slots, for
// fast repeated evaluation.
struct Compiled {
  struct Node {
    int symbol = -1;  // -1 for variables
    std::uint32_t slot = 0;
    std::vector<std::uint32_t> kids;
  };
  std::vector<Node> nodes;  // root last
};

std::uint32_t compile_into(const Term& t, const Signature& sig,
                           const std::vector<Term::VarIndex>& vars, Compiled& out) {
  Compiled::Node n;
  if (t.is_var()) {
    auto it = std::lower_bound(vars.begin(), vars.end(), t.var_index());
    if (it == vars.end() || *it != t.var_index()) {
      throw std::invalid_argument("unbound variable x" + std::to_string(t.var_index()));
    }
    n.slot = static_cast<std::uint32_t>(it - vars.begin());
  } else {
    auto idx = sig.index_of(t.symbol().name());
    if (!idx || sig.symbols()[*idx].arity != t.arity()) {
      throw std::invalid_argument("symbol '" + t.symbol().name() + "' not in the model signature");
    }
    n.symbol = static_cast<int>(*idx);
    for (const auto& a : t.args()) n.kids.push_back(compile_into(a, sig, vars, out));
  }
  out.nodes.push_back(std::move(n));
  return static_cast<std::uint32_t>(out.nodes.size() - 1);
}

Compiled compile(const Term& t, const Signature& sig, const std::vector<Term::VarIndex>& vars) {
  Compiled c;
  compile_into(t, sig, vars, c);
  return c;
}

Element run(const Model& m, const Compiled& c, const Element* env, std::vector<Element>& scratch) {
  scratch.resize(c.nodes.size());
  Element args[16];
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const auto& n = c.nodes[i];
    if (n.symbol < 0) {
      scratch[i] = env[n.slot];
    } else {
      for (std::size_t k = 0; k < n.kids.size(); ++k) args[k] = scratch[n.kids[k]];
      scratch[i] = m.apply(static_cast<std::size_t>(n.symbol), args);
    }
  }
  return scratch.back();
}

std::vector<Term::VarIndex> sorted_vars(const VarSet& s) { return {s.begin(), s.end()}; }

// Odometer over n^k tuples, first position most significant.
bool next_tuple(std::vector<Element>& v, std::size_t n) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (++v[i] < n) return true;
    v[i] = 0;
  }
  return false;
}

Assignment to_assignment(const std::vector<Term::VarIndex>& vars, const std::vector<Element>& v) {
  Assignment a;
  for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = v[i];
  return a;
}

}  // namespace

Element evaluate(const Model& m, const Term& t, const Assignment& a) {
  if (t.is_var()) {
    auto it = a.find(t.var_index());
    if (it == a.end()) {
      throw std::invalid_argument("unbound variable x" + std::to_string(t.var_index()));
    }
    return it->second;
  }
  auto idx = m.signature().index_of(t.symbol().name());
  if (!idx || m.signature().symbols()[*idx].arity != t.arity()) {
    throw std::invalid_argument("symbol '" + t.symbol().name() + "' not in the model signature");
  }
  if (t.arity() > 16) throw std::invalid_argument("arity too large");
  Element args[16];
  for (std::size_t i = 0; i < t.arity(); ++i) args[i] = evaluate(m, t.args()[i], a);
  return m.apply(*idx, args);
}

SatisfactionResult satisfies(const Model& m, const Equation& eq) {
  auto vars = sorted_vars(free_variables(eq));
  Compiled l = compile(eq.lhs, m.signature(), vars);
  Compiled r = compile(eq.rhs, m.signature(), vars);
  std::vector<Element> env(vars.size(), 0), s1, s2;
  do {
    if (run(m, l, env.data(), s1) != run(m, r, env.data(), s2)) {
      return {false, to_assignment(vars, env)};
    }
  } while (next_tuple(env, m.size()));
  return {};
}

bool satisfies_all(const Model& m, const Theory& t) {
  return std::all_of(t.axioms.begin(), t.axioms.end(),
                     [&](const LabeledAxiom& a) { return satisfies(m, a.equation).holds; });
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

constexpr int kUnknown = -1;

class Enumerator {
 public:
  Enumerator(const Theory& t, std::size_t n) : theory_(t), model_(t.signature, n), n_(n) {
    const auto& syms = t.signature.symbols();
    for (std::size_t i = 0; i < syms.size(); ++i) {
      offset_.push_back(cells_.size());
      std::size_t count = ipow(n, syms[i].arity);
      for (std::size_t k = 0; k < count; ++k) cells_.push_back(kUnknown);
    }
    // Constants first, then the other tables in signature order.
    for (std::size_t i = 0; i < syms.size(); ++i) {
      if (syms[i].arity == 0) order_.push_back(offset_[i]);
    }
    for (std::size_t i = 0; i < syms.size(); ++i) {
      if (syms[i].arity == 0) continue;
      std::size_t count = ipow(n, syms[i].arity);
      for (std::size_t k = 0; k < count; ++k) order_.push_back(offset_[i] + k);
    }
    for (const auto& ax : t.axioms) {
      check_well_formed(ax.equation.lhs, t.signature);
      check_well_formed(ax.equation.rhs, t.signature);
      Rule r;
      auto vars = sorted_vars(free_variables(ax.equation));
      r.nvars = vars.size();
      r.lhs = compile(ax.equation.lhs, t.signature, vars);
      r.rhs = compile(ax.equation.rhs, t.signature, vars);
      rules_.push_back(std::move(r));
    }
  }

  void run(const std::function<bool(const Model&)>& emit) {
    emit_ = &emit;
    stop_ = false;
    dfs(0);
  }

 private:
  struct Rule {
    std::size_t nvars = 0;
    Compiled lhs, rhs;
  };

  // Partial evaluation: kUnknown when a needed cell is undecided.
  int peval(const Compiled& c, const Element* env, std::vector<int>& scratch) const {
    scratch.resize(c.nodes.size());
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
      const auto& nd = c.nodes[i];
      if (nd.symbol < 0) {
        scratch[i] = env[nd.slot];
        continue;
      }
      std::size_t pos = 0;
      bool known = true;
      for (auto k : nd.kids) {
        if (scratch[k] == kUnknown) {
          known = false;
          break;
        }
        pos = pos * n_ + static_cast<std::size_t>(scratch[k]);
      }
      scratch[i] = known ? cells_[offset_[static_cast<std::size_t>(nd.symbol)] + pos] : kUnknown;
    }
    return scratch.back();
  }

  bool consistent() {
    std::vector<Element> env;
    for (const auto& r : rules_) {
      env.assign(r.nvars, 0);
      do {
        int a = peval(r.lhs, env.data(), s1_);
        if (a == kUnknown) continue;
        int b = peval(r.rhs, env.data(), s2_);
        if (b != kUnknown && a != b) return false;
      } while (next_tuple(env, n_));
    }
    return true;
  }

  void dfs(std::size_t depth) {
    if (stop_) return;
    if (depth == order_.size()) {
      const auto& syms = theory_.signature.symbols();
      for (std::size_t i = 0; i < syms.size(); ++i) {
        auto& tab = model_.mutable_table(i);
        for (std::size_t k = 0; k < tab.values.size(); ++k) {
          tab.values[k] = static_cast<Element>(cells_[offset_[i] + k]);
        }
      }
      if (!(*emit_)(model_)) stop_ = true;
      return;
    }
    std::size_t cell = order_[depth];
    for (std::size_t v = 0; v < n_ && !stop_; ++v) {
      cells_[cell] = static_cast<int>(v);
      if (consistent()) dfs(depth + 1);
    }
    cells_[cell] = kUnknown;
  }

  const Theory& theory_;
  Model model_;
  std::size_t n_;
  std::vector<int> cells_;
  std::vector<std::size_t> offset_;
  std::vector<std::size_t> order_;
  std::vector<Rule> rules_;
  std::vector<int> s1_, s2_;
  const std::function<bool(const Model&)>* emit_ = nullptr;
  bool stop_ = false;
};

}  // namespace

void for_each_model(const Theory& t, std::size_t size,
                    const std::function<bool(const Model&)>& emit) {
  if (size == 0) throw std::invalid_argument("model size must be at least 1");
  Enumerator e(t, size);
  e.run([&](const Model& m) {
    Model copy = m;
    copy.theory_name = t.name;
    return emit(copy);
  });
}

std::vector<Model> enumerate_models(const Theory& t, std::size_t size, bool iso_filter) {
  std::vector<Model> out;
  std::set<std::vector<Element>> seen;
  for_each_model(t, size, [&](const Model& m) {
    if (iso_filter && !seen.insert(canonical_form(m)).second) return true;
    out.push_back(m);
    return true;
  });
  return out;
}

Model permute(const Model& m, const std::vector<Element>& perm) {
  const std::size_t n = m.size();
  if (perm.size() != n) throw std::invalid_argument("permutation size mismatch");
  Model out(m.signature(), n);
  out.name = m.name;
  out.theory_name = m.theory_name;
  std::vector<Element> args;
  for (std::size_t i = 0; i < m.signature().size(); ++i) {
    const auto& src = m.table(i);
    auto& dst = out.mutable_table(i);
    args.assign(src.arity, 0);
    do {
      std::size_t pos = 0;
      for (std::size_t k = 0; k < src.arity; ++k) pos = pos * n + perm[args[k]];
      dst.values[pos] = perm[m.apply(i, args.data())];
    } while (next_tuple(args, n));
  }
  return out;
}

std::vector<Element> canonical_form(const Model& m) {
  std::vector<Element> perm(m.size());
  std::iota(perm.begin(), perm.end(), Element{0});
  std::vector<Element> best = m.serialize();
  while (std::next_permutation(perm.begin(), perm.end())) {
    auto s = permute(m, perm).serialize();
    if (s < best) best = std::move(s);
  }
  return best;
}

bool isomorphic(const Model& a, const Model& b) {
  if (a.signature() != b.signature() || a.size() != b.size()) return false;
  return canonical_form(a) == canonical_form(b);
}

std::optional<Countermodel> find_countermodel(const Theory& t, const Equation& eq,
                                              std::size_t max_size) {
  for (std::size_t n = 1; n <= max_size; ++n) {
    std::optional<Countermodel> found;
    for_each_model(t, n, [&](const Model& m) {
      auto r = satisfies(m, eq);
      if (r.holds) return true;
      found = Countermodel{m, r.witness};
      return false;
    });
    if (found) return found;
  }
  return std::nullopt;
}

namespace {

std::optional<Assignment> quasi_witness(const Model& m, const std::vector<Equation>& premises,
                                        const Equation& conclusion) {
  VarSet all = free_variables(conclusion);
  for (const auto& p : premises) {
    auto v = free_variables(p);
    all.insert(v.begin(), v.end());
  }
  auto vars = sorted_vars(all);
  std::vector<std::pair<Compiled, Compiled>> prem;
  for (const auto& p : premises) {
    prem.emplace_back(compile(p.lhs, m.signature(), vars), compile(p.rhs, m.signature(), vars));
  }
  Compiled cl = compile(conclusion.lhs, m.signature(), vars);
  Compiled cr = compile(conclusion.rhs, m.signature(), vars);
  std::vector<Element> env(vars.size(), 0), s1, s2;
  do {
    bool premises_hold = true;
    for (const auto& [l, r] : prem) {
      if (run(m, l, env.data(), s1) != run(m, r, env.data(), s2)) {
        premises_hold = false;
        break;
      }
    }
    if (premises_hold && run(m, cl, env.data(), s1) != run(m, cr, env.data(), s2)) {
      return to_assignment(vars, env);
    }
  } while (next_tuple(env, m.size()));
  return std::nullopt;
}

}  // namespace

std::optional<Countermodel> find_quasi_countermodel(const Theory& t,
                                                    const std::vector<Equation>& premises,
                                                    const Equation& conclusion,
                                                    std::size_t max_size) {
  for (std::size_t n = 1; n <= max_size; ++n) {
    std::optional<Countermodel> found;
    for_each_model(t, n, [&](const Model& m) {
      auto w = quasi_witness(m, premises, conclusion);
      if (!w) return true;
      found = Countermodel{m, *w};
      return false;
    });
    if (found) return found;
  }
  return std::nullopt;
}

std::optional<Countermodel> quasi_countermodel_in(const std::vector<Model>& models,
                                                  const std::vector<Equation>& premises,
                                                  const Equation& conclusion) {
  for (const auto& m : models) {
    if (auto w = quasi_witness(m, premises, conclusion)) return Countermodel{m, *w};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Clones

namespace {

// Closure walk; stops early (returning the member) once `hit` accepts one.
std::optional<OperationTable> clone_walk(const Model& m, std::size_t arity, std::size_t cap,
                                         std::set<OperationTable>& seen,
                                         const std::function<bool(const OperationTable&)>& hit) {
  if (arity == 0) throw std::invalid_argument("clone arity must be at least 1");
  const std::size_t n = m.size();
  const std::size_t rows = ipow(n, arity);
  std::vector<OperationTable> members;
  std::optional<OperationTable> found;
  auto add = [&](OperationTable op) {
    if (seen.count(op)) return;
    if (seen.size() >= cap) {
      throw CloneCapExceeded("clone closure exceeded cap of " + std::to_string(cap));
    }
    if (hit && !found && hit(op)) found = op;
    seen.insert(op);
    members.push_back(std::move(op));
  };

  std::vector<Element> tuple(arity, 0);
  for (std::size_t i = 0; i < arity; ++i) {
    OperationTable p{arity, std::vector<Element>(rows)};
    std::fill(tuple.begin(), tuple.end(), 0);
    std::size_t r = 0;
    do {
      p.values[r++] = tuple[i];
    } while (next_tuple(tuple, n));
    add(std::move(p));
  }
  if (found) return found;
  const auto& syms = m.signature().symbols();
  for (std::size_t i = 0; i < syms.size(); ++i) {
    if (syms[i].arity == 0) add({arity, std::vector<Element>(rows, m.table(i).values[0])});
  }

  // Semi-naive fixpoint: each round only composes tuples that touch a member
  // added in the previous round.
  std::size_t old_end = 0;
  while (old_end < members.size()) {
    const std::size_t end = members.size();
    for (std::size_t f = 0; f < syms.size(); ++f) {
      const std::size_t k = syms[f].arity;
      if (k == 0) continue;
      std::vector<std::size_t> pick(k, 0);
      std::vector<Element> args(k);
      while (true) {
        bool touches_new = std::any_of(pick.begin(), pick.end(),
                                       [&](std::size_t p) { return p >= old_end; });
        if (touches_new) {
          OperationTable op{arity, std::vector<Element>(rows)};
          for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t j = 0; j < k; ++j) args[j] = members[pick[j]].values[r];
            op.values[r] = m.apply(f, args.data());
          }
          add(std::move(op));
          if (found) return found;
        }
        std::size_t j = k;
        while (j-- > 0) {
          if (++pick[j] < end) break;
          pick[j] = 0;
        }
        if (j == static_cast<std::size_t>(-1)) break;
      }
    }
    old_end = end;
  }
  return found;
}

}  // namespace

std::set<OperationTable> clone_closure(const Model& m, std::size_t arity, std::size_t cap) {
  std::set<OperationTable> seen;
  clone_walk(m, arity, cap, seen, {});
  return seen;
}

std::optional<OperationTable> find_in_clone(const Model& m, std::size_t arity, std::size_t cap,
                                            const std::function<bool(const OperationTable&)>& pred,
                                            std::size_t* closure_size) {
  std::set<OperationTable> seen;
  auto r = clone_walk(m, arity, cap, seen, pred);
  if (closure_size) *closure_size = seen.size();
  return r;
}

bool is_malcev_operation(const OperationTable& op, std::size_t n) {
  if (op.arity != 3) return false;
  auto at = [&](std::size_t a, std::size_t b, std::size_t c) {
    return op.values[(a * n + b) * n + c];
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (at(a, b, b) != a || at(a, a, b) != b) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Orders

OrderRelation make_order(std::vector<std::vector<bool>> leq) {
  OrderRelation o;
  o.size = leq.size();
  o.leq = std::move(leq);
  const std::size_t n = o.size;
  o.reflexive = o.antisymmetric = o.transitive = o.discrete = true;
  for (std::size_t a = 0; a < n; ++a) {
    if (!o.leq[a][a]) o.reflexive = false;
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && o.leq[a][b]) {
        o.discrete = false;
        if (o.leq[b][a]) o.antisymmetric = false;
      }
      if (!o.leq[a][b]) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (o.leq[b][c] && !o.leq[a][c]) o.transitive = false;
      }
    }
  }
  return o;
}

OrderRelation order_from_implication(const Model& m, std::string_view implication,
                                     std::string_view unit) {
  auto imp = m.signature().index_of(implication);
  auto e = m.signature().index_of(unit);
  if (!imp || m.signature().symbols()[*imp].arity != 2) {
    throw std::invalid_argument("model has no binary '" + std::string(implication) + "'");
  }
  if (!e || m.signature().symbols()[*e].arity != 0) {
    throw std::invalid_argument("model has no constant '" + std::string(unit) + "'");
  }
  const std::size_t n = m.size();
  const Element top = m.table(*e).values[0];
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      Element args[2] = {static_cast<Element>(a), static_cast<Element>(b)};
      leq[a][b] = m.apply(*imp, args) == top;
    }
  }
  return make_order(std::move(leq));
}

OrderRelation order_from_term(const Model& m, const Term& t) {
  const std::size_t n = m.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      Assignment s{{0, static_cast<Element>(a)}, {1, static_cast<Element>(b)}};
      leq[a][b] = evaluate(m, t, s) == b;
    }
  }
  return make_order(std::move(leq));
}

OrderRelation natural_order(std::size_t size) {
  std::vector<std::vector<bool>> leq(size, std::vector<bool>(size));
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = a; b < size; ++b) leq[a][b] = true;
  }
  return make_order(std::move(leq));
}

GaloisResult check_galois(const Model& m) {
  auto star = m.signature().index_of("*");
  auto imp = m.signature().index_of("->");
  if (!star || m.signature().symbols()[*star].arity != 2) {
    throw std::invalid_argument("model has no binary '*'");
  }
  OrderRelation le = order_from_implication(m);
  const std::size_t n = m.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        Element xy[2] = {static_cast<Element>(x), static_cast<Element>(y)};
        Element xz[2] = {static_cast<Element>(x), static_cast<Element>(z)};
        bool left = le(m.apply(*star, xy), static_cast<Element>(z));
        bool right = le(static_cast<Element>(y), m.apply(*imp, xz));
        if (left != right) {
          return {false, {static_cast<Element>(x), static_cast<Element>(y),
                          static_cast<Element>(z)}};
        }
      }
    }
  }
  return {};
}

}  // namespace eqa
