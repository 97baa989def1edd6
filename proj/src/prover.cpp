#include "eqa/prover.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>

#include "eqa/rewrite.hpp"

namespace eqa {

Budget Budget::defaults() {
  Budget b;
  if (const char* env = std::getenv("EQA_DEFAULT_BUDGET_SECONDS")) {
    try {
      double s = std::stod(env);
      if (s > 0) b.max_seconds = s;
    } catch (const std::exception&) {
    }
  }
  return b;
}

void Budget::validate() const {
  if (max_nodes == 0 || max_term_size == 0 || !(max_seconds > 0)) {
    throw std::invalid_argument("budget fields must be positive");
  }
}

namespace {

using Clock = std::chrono::steady_clock;

// One rewrite step u -> u[pos <- s(R)] where u|pos = s(L) and (L, R) is the
// fact read forwards or backwards.  `sigma` covers every variable of the
// fact.
struct Step {
  std::size_t fact = 0;
  bool forward = true;
  Path pos;
  Substitution sigma;
};

struct Chain {
  Term start;
  std::vector<Step> steps;
};

struct Fact {
  Equation eq;
  std::string axiom_label;  // non-empty for axioms
  Chain chain;              // lemmas: eq.lhs ->* eq.rhs
};

using Facts = std::vector<Fact>;

Substitution complete(Substitution s, const Equation& eq) {
  for (auto v : free_variables(eq)) {
    if (!s.contains(v)) s.set(v, Term::var(v));
  }
  return s;
}

Term apply_step(const Term& u, const Step& st, const Facts& facts) {
  const Equation& eq = facts[st.fact].eq;
  const Term& rhs = st.forward ? eq.rhs : eq.lhs;
  return replace_at(u, st.pos, substitute(rhs, st.sigma));
}

std::vector<Term> chain_terms(const Chain& c, const Facts& facts) {
  std::vector<Term> out{c.start};
  for (const auto& st : c.steps) out.push_back(apply_step(out.back(), st, facts));
  return out;
}

Term chain_end(const Chain& c, const Facts& facts) {
  Term u = c.start;
  for (const auto& st : c.steps) u = apply_step(u, st, facts);
  return u;
}

Chain reversed(const Chain& c, const Facts& facts) {
  Chain r;
  r.start = chain_end(c, facts);
  for (auto it = c.steps.rbegin(); it != c.steps.rend(); ++it) {
    Step st = *it;
    st.forward = !st.forward;
    r.steps.push_back(std::move(st));
  }
  return r;
}

void append(Chain& a, const Chain& b) {
  a.steps.insert(a.steps.end(), b.steps.begin(), b.steps.end());
}

void chain_variables(const Chain& c, const Facts& facts, VarSet& out) {
  for (const auto& u : chain_terms(c, facts)) collect_variables(u, out);
  for (const auto& st : c.steps) {
    for (const auto& [v, img] : st.sigma.mapping()) collect_variables(img, out);
  }
}

// Applies a variable renaming to the chain, extending `rho` injectively to
// variables that occur only inside the chain.
Chain renamed(const Chain& c, Substitution rho, const Facts& facts) {
  VarSet vars;
  chain_variables(c, facts, vars);
  Term::VarIndex next = 0;
  for (const auto& [v, img] : rho.mapping()) next = std::max(next, img.var_bound());
  for (auto v : vars) {
    if (!rho.contains(v)) rho.set(v, Term::var(next++));
  }
  Chain r;
  r.start = substitute(c.start, rho);
  for (const auto& st : c.steps) {
    Step s = st;
    Substitution sig;
    for (const auto& [v, img] : st.sigma.mapping()) sig.set(v, substitute(img, rho));
    s.sigma = std::move(sig);
    r.steps.push_back(std::move(s));
  }
  return r;
}

Term replace_constants(const Term& t, const std::map<std::string, Term>& m) {
  if (t.is_var()) return t;
  if (t.is_constant()) {
    auto it = m.find(t.symbol().name());
    return it == m.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(replace_constants(a, m));
  return Term::app(t.symbol(), std::move(args));
}

Chain replace_constants(const Chain& c, const std::map<std::string, Term>& m) {
  Chain r;
  r.start = replace_constants(c.start, m);
  for (const auto& st : c.steps) {
    Step s = st;
    Substitution sig;
    for (const auto& [v, img] : st.sigma.mapping()) sig.set(v, replace_constants(img, m));
    s.sigma = std::move(sig);
    r.steps.push_back(std::move(s));
  }
  return r;
}

bool is_identity(const Substitution& s) {
  for (const auto& [v, img] : s.mapping()) {
    if (!img.is_var() || img.var_index() != v) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Compilation of chains to five-rule proofs.

class Compiler {
 public:
  Compiler(const Facts& facts, Proof& proof)
      : facts_(facts), proof_(proof), fact_line_(facts.size(), 0) {}

  std::size_t chain(const Chain& c) {
    auto terms = chain_terms(c, facts_);
    if (c.steps.empty()) return add({c.start, c.start}, ReflRule{});
    std::size_t acc = 0;
    for (std::size_t i = 0; i < c.steps.size(); ++i) {
      std::size_t line = step(terms[i], c.steps[i], terms[i + 1]);
      acc = acc == 0 ? line : add({terms[0], terms[i + 1]}, TransRule{acc, line});
    }
    return acc;
  }

 private:
  std::size_t add(Equation eq, Justification by) {
    std::string key = to_string(eq);
    auto it = known_.find(key);
    if (it != known_.end()) return it->second;
    std::size_t n = proof_.add(std::move(eq), std::move(by));
    known_.emplace(std::move(key), n);
    return n;
  }

  std::size_t fact(std::size_t k) {
    if (fact_line_[k]) return fact_line_[k];
    const Fact& f = facts_[k];
    std::size_t n = f.axiom_label.empty() ? chain(f.chain)
                                          : add(f.eq, AxiomRule{f.axiom_label, {}});
    fact_line_[k] = n;
    return n;
  }

  std::size_t step(const Term& u, const Step& st, const Term& next) {
    const Equation& eq = facts_[st.fact].eq;
    std::size_t line = fact(st.fact);
    if (!is_identity(st.sigma)) {
      line = add(substitute(eq, st.sigma), SubstRule{line, {}, st.sigma});
    }
    if (!st.forward) {
      const Equation& inst = proof_.lines[line - 1].equation;
      line = add({inst.rhs, inst.lhs}, SymRule{line});
    }
    if (st.pos.empty()) return line;
    const Term hole = Term::var(u.var_bound());
    const Term ctx = replace_at(u, st.pos, hole);
    Substitution keep;
    for (auto v : free_variables(ctx)) {
      if (v != hole.var_index()) keep.set(v, Term::var(v));
    }
    std::size_t refl = add({ctx, ctx}, ReflRule{});
    return add({u, next}, SubstRule{refl, {line}, keep});
  }

  const Facts& facts_;
  Proof& proof_;
  std::vector<std::size_t> fact_line_;
  std::unordered_map<std::string, std::size_t> known_;
};

// ---------------------------------------------------------------------------
// Shared state of one prove() call.

struct Limits {
  std::size_t max_nodes;
  std::size_t max_term_size;
  Clock::time_point deadline;
};

struct Outcome {
  std::optional<Chain> chain;  // from goal.lhs to goal.rhs
  std::string reason;
};

std::vector<Term> variable_pool(const Theory& t, const Equation& goal) {
  std::vector<Term> pool;
  for (auto v : free_variables(goal)) pool.push_back(Term::var(v));
  for (const auto& s : t.signature.symbols()) {
    if (s.arity == 0) pool.push_back(Term::constant(s.name));
  }
  if (pool.empty()) pool.push_back(Term::var(0));
  return pool;
}

// ---------------------------------------------------------------------------
// Phase one: bidirectional best-first search over equal terms.

class Explorer {
 public:
  struct Node {
    std::optional<Term> parent;
    Step step;
  };

  explicit Explorer(const Term& root) { add(root, std::nullopt, {}); }

  bool add(const Term& t, std::optional<Term> parent, Step step) {
    auto [it, inserted] = seen_.try_emplace(t, Node{std::move(parent), std::move(step)});
    if (inserted) frontier_.insert(t);
    return inserted;
  }
  bool contains(const Term& t) const { return seen_.count(t) != 0; }
  bool empty() const { return frontier_.empty(); }
  Term pop() {
    Term t = *frontier_.begin();
    frontier_.erase(frontier_.begin());
    return t;
  }

  Chain path_to(const Term& t) const {
    std::vector<Step> rev;
    Term cur = t;
    while (true) {
      const Node& n = seen_.at(cur);
      if (!n.parent) break;
      rev.push_back(n.step);
      cur = *n.parent;
    }
    Chain c;
    c.start = cur;
    c.steps.assign(rev.rbegin(), rev.rend());
    return c;
  }

 private:
  std::unordered_map<Term, Node, TermHash> seen_;
  std::set<Term, TermLess> frontier_;
};

class Search {
 public:
  Search(const Facts& facts, std::size_t axiom_count, std::vector<Term> pool, const Limits& lim)
      : facts_(facts), axiom_count_(axiom_count), pool_(std::move(pool)), lim_(lim) {}

  std::size_t nodes() const { return nodes_; }

  Outcome run(const Equation& goal) {
    Explorer fwd(goal.lhs), bwd(goal.rhs);
    nodes_ = 2;
    bool size_limited = false;
    bool turn = false;
    while (true) {
      if (fwd.empty() && bwd.empty()) {
        return {std::nullopt, size_limited ? "max_term_size" : "exhausted"};
      }
      turn = !turn;
      bool use_fwd = (turn && !fwd.empty()) || bwd.empty();
      Explorer& side = use_fwd ? fwd : bwd;
      Explorer& other = use_fwd ? bwd : fwd;
      Term u = side.pop();
      std::optional<Term> meet;
      bool out_of_budget = false;
      expand(u, [&](const Term& w, Step st) {
        if (w.size() > lim_.max_term_size) {
          size_limited = true;
          return true;
        }
        if (!side.add(w, u, std::move(st))) return true;
        ++nodes_;
        if (other.contains(w)) {
          meet = w;
          return false;
        }
        if (nodes_ >= lim_.max_nodes || (nodes_ % 256 == 0 && Clock::now() > lim_.deadline)) {
          out_of_budget = true;
          return false;
        }
        return true;
      });
      if (meet) {
        Chain a = fwd.path_to(*meet);
        Chain b = bwd.path_to(*meet);
        append(a, reversed(b, facts_));
        return {std::move(a), {}};
      }
      if (out_of_budget) {
        return {std::nullopt, nodes_ >= lim_.max_nodes ? "max_nodes" : "max_seconds"};
      }
      if (Clock::now() > lim_.deadline) return {std::nullopt, "max_seconds"};
    }
  }

 private:
  template <class Emit>
  void expand(const Term& u, Emit&& emit) {
    for (const auto& pos : positions(u)) {
      const Term& sub = subterm_at(u, pos);
      for (std::size_t k = 0; k < axiom_count_; ++k) {
        const Equation& eq = facts_[k].eq;
        for (bool forward : {true, false}) {
          const Term& L = forward ? eq.lhs : eq.rhs;
          const Term& R = forward ? eq.rhs : eq.lhs;
          Substitution s;
          if (!match(L, sub, s)) continue;
          std::vector<Term::VarIndex> extra;
          for (auto v : free_variables(R)) {
            if (!s.contains(v)) extra.push_back(v);
          }
          std::vector<std::size_t> pick(extra.size(), 0);
          while (true) {
            Substitution full = s;
            for (std::size_t i = 0; i < extra.size(); ++i) full.set(extra[i], pool_[pick[i]]);
            full = complete(std::move(full), eq);
            Term w = replace_at(u, pos, substitute(R, full));
            if (!emit(w, Step{k, forward, pos, std::move(full)})) return;
            std::size_t i = extra.size();
            while (i-- > 0) {
              if (++pick[i] < pool_.size()) break;
              pick[i] = 0;
            }
            if (i == static_cast<std::size_t>(-1)) break;
          }
        }
      }
    }
  }

  const Facts& facts_;
  std::size_t axiom_count_;
  std::vector<Term> pool_;
  Limits lim_;
  std::size_t nodes_ = 0;
};

// ---------------------------------------------------------------------------
// Phase two: ordered completion.

class Completion {
 public:
  Completion(Facts& facts, std::size_t axiom_count, Precedence prec, const Limits& lim)
      : facts_(facts), axiom_count_(axiom_count), prec_(std::move(prec)), lim_(lim) {}

  std::size_t nodes() const { return nodes_; }

  Outcome run(const Equation& goal) {
    for (std::size_t k = 0; k < axiom_count_; ++k) {
      Chain c;
      c.start = facts_[k].eq.lhs;
      c.steps.push_back({k, true, {}, complete({}, facts_[k].eq)});
      // Input axioms are selected before any derived equation.
      passive_.push({0, next_id_++, facts_[k].eq, std::move(c)});
    }
    while (!passive_.empty()) {
      if (nodes_ >= lim_.max_nodes) return {std::nullopt, "max_nodes"};
      if (Clock::now() > lim_.deadline) return {std::nullopt, "max_seconds"};
      Item item = std::move(const_cast<Item&>(passive_.top()));
      passive_.pop();
      ++nodes_;

      auto [ls, lchain] = normalize(item.eq.lhs);
      auto [rs, rchain] = normalize(item.eq.rhs);
      if (ls == rs) continue;
      if (subsumed({ls, rs})) continue;
      Chain c = reversed(lchain, facts_);
      append(c, item.chain);
      append(c, rchain);
      add_active({ls, rs}, std::move(c));

      if (auto proof = try_goal(goal)) return {std::move(proof), {}};
    }
    return {std::nullopt, size_limited_ ? "max_term_size" : "exhausted"};
  }

 private:
  struct Item {
    std::size_t weight;
    std::size_t id;
    Equation eq;
    Chain chain;
  };
  struct ItemOrder {
    bool operator()(const Item& a, const Item& b) const {
      if (a.weight != b.weight) return a.weight > b.weight;
      return a.id > b.id;
    }
  };
  struct Active {
    std::size_t fact;
    bool oriented;  // lhs > rhs
  };

  // Candidates are simplified on arrival so that their weight reflects the
  // normal form.
  void push(Equation eq, Chain chain) {
    auto [ls, lchain] = normalize(eq.lhs);
    auto [rs, rchain] = normalize(eq.rhs);
    if (ls == rs) return;
    if (ls.size() > lim_.max_term_size || rs.size() > lim_.max_term_size) {
      size_limited_ = true;
      return;
    }
    Chain c = reversed(lchain, facts_);
    append(c, chain);
    append(c, rchain);
    std::size_t w = ls.size() + rs.size();
    passive_.push({w, next_id_++, {std::move(ls), std::move(rs)}, std::move(c)});
  }

  bool usable_for_rewriting(const Equation& eq, bool forward) const {
    const Term& L = forward ? eq.lhs : eq.rhs;
    const Term& R = forward ? eq.rhs : eq.lhs;
    if (L.is_var()) return false;
    VarSet lv = free_variables(L);
    for (auto v : free_variables(R)) {
      if (!lv.count(v)) return false;
    }
    return true;
  }

  void add_active(Equation eq, Chain chain) {
    Substitution rho = canonical_renaming(eq);
    eq = substitute(eq, rho);
    chain = renamed(chain, rho, facts_);
    bool oriented = kbo_greater(eq.lhs, eq.rhs, prec_);
    if (!oriented && kbo_greater(eq.rhs, eq.lhs, prec_)) {
      chain = reversed(chain, facts_);
      std::swap(eq.lhs, eq.rhs);
      Substitution rho2 = canonical_renaming(eq);
      eq = substitute(eq, rho2);
      chain = renamed(chain, rho2, facts_);
      oriented = true;
    }

    std::size_t fact = facts_.size();
    // Reuse an axiom when nothing changed.
    if (chain.steps.size() == 1 && chain.steps[0].fact < axiom_count_ &&
        chain.steps[0].forward && chain.steps[0].pos.empty() &&
        is_identity(chain.steps[0].sigma) && facts_[chain.steps[0].fact].eq == eq) {
      fact = chain.steps[0].fact;
    } else {
      facts_.push_back({eq, {}, std::move(chain)});
    }
    const std::size_t idx = active_.size();
    active_.push_back({fact, oriented});
    for (bool forward : {true, false}) {
      if (!forward && oriented) continue;
      if (!usable_for_rewriting(eq, forward)) continue;
      const Term& L = forward ? eq.lhs : eq.rhs;
      index_[L.symbol().id()].push_back({idx, forward});
    }
    for (std::size_t j = 0; j <= idx; ++j) {
      critical_pairs(idx, j);
      if (j != idx) critical_pairs(j, idx);
    }
  }

  // Overlaps of `inner` into non-variable positions of `outer`.
  void critical_pairs(std::size_t outer, std::size_t inner) {
    const Active& A = active_[outer];
    const Active& B = active_[inner];
    const Equation ea = facts_[A.fact].eq;
    const Equation eb = facts_[B.fact].eq;
    const Term::VarIndex offset = std::max(ea.lhs.var_bound(), ea.rhs.var_bound());
    const Equation ebs{shift_variables(eb.lhs, offset), shift_variables(eb.rhs, offset)};
    for (bool fa : {true, false}) {
      if (!fa && A.oriented) continue;
      const Term& L1 = fa ? ea.lhs : ea.rhs;
      const Term& R1 = fa ? ea.rhs : ea.lhs;
      if (L1.is_var()) continue;
      for (bool fb : {true, false}) {
        if (!fb && B.oriented) continue;
        const Term& L2 = fb ? ebs.lhs : ebs.rhs;
        const Term& R2 = fb ? ebs.rhs : ebs.lhs;
        if (L2.is_var()) continue;
        for (const auto& pos : positions(L1)) {
          const Term& sub = subterm_at(L1, pos);
          if (sub.is_var()) continue;
          if (pos.empty() && outer == inner && fa == fb) continue;
          auto mgu = unify(sub, L2);
          if (!mgu) continue;
          Term peak = substitute(L1, *mgu);
          Term left = substitute(R1, *mgu);
          Term r2 = substitute(R2, *mgu);
          if (!A.oriented && kbo_greater(left, peak, prec_)) continue;
          if (!B.oriented && kbo_greater(r2, subterm_at(peak, pos), prec_)) continue;
          Term right = replace_at(peak, pos, r2);
          if (left == right) continue;
          if (left.size() > 2 * lim_.max_term_size || right.size() > 2 * lim_.max_term_size) {
            continue;
          }
          Substitution sa, sb;
          for (auto v : free_variables(ea)) sa.set(v, substitute(Term::var(v), *mgu));
          for (auto v : free_variables(eb)) sb.set(v, substitute(Term::var(v + offset), *mgu));
          Chain c;
          c.start = left;
          c.steps.push_back({A.fact, !fa, {}, std::move(sa)});
          c.steps.push_back({B.fact, fb, pos, std::move(sb)});
          push({std::move(left), std::move(right)}, std::move(c));
        }
      }
    }
  }

  // Ordered rewriting to normal form, outermost-leftmost first.
  std::pair<Term, Chain> normalize(const Term& t) const {
    Chain c;
    c.start = t;
    Term u = t;
    for (std::size_t guard = 0; guard < 10000; ++guard) {
      bool changed = false;
      for (const auto& pos : positions(u)) {
        const Term& sub = subterm_at(u, pos);
        if (sub.is_var()) continue;
        auto it = index_.find(sub.symbol().id());
        if (it == index_.end()) continue;
        for (const auto& [idx, forward] : it->second) {
          const Active& a = active_[idx];
          const Equation& eq = facts_[a.fact].eq;
          const Term& L = forward ? eq.lhs : eq.rhs;
          const Term& R = forward ? eq.rhs : eq.lhs;
          Substitution s;
          if (!match(L, sub, s)) continue;
          Term r = substitute(R, s);
          if (!a.oriented && !kbo_greater(sub, r, prec_)) continue;
          c.steps.push_back({a.fact, forward, pos, complete(std::move(s), eq)});
          u = replace_at(u, pos, r);
          changed = true;
          break;
        }
        if (changed) break;
      }
      if (!changed) break;
    }
    return {u, std::move(c)};
  }

  std::optional<Substitution> instance_of(const Equation& pattern, const Equation& eq) const {
    Substitution s;
    if (match(pattern.lhs, eq.lhs, s) && match(pattern.rhs, eq.rhs, s)) return s;
    return std::nullopt;
  }

  bool subsumed(const Equation& eq) const {
    for (const auto& a : active_) {
      const Equation& ae = facts_[a.fact].eq;
      if (instance_of(ae, eq) || instance_of({ae.rhs, ae.lhs}, eq)) return true;
    }
    return false;
  }

  std::optional<Chain> try_goal(const Equation& goal) const {
    auto [ls, lchain] = normalize(goal.lhs);
    auto [rs, rchain] = normalize(goal.rhs);
    Chain c = lchain;
    if (ls != rs) {
      std::optional<Step> bridge;
      for (const auto& a : active_) {
        const Equation& ae = facts_[a.fact].eq;
        if (auto s = instance_of(ae, {ls, rs})) {
          bridge = Step{a.fact, true, {}, complete(*s, ae)};
        } else if (auto s2 = instance_of({ae.rhs, ae.lhs}, {ls, rs})) {
          bridge = Step{a.fact, false, {}, complete(*s2, ae)};
        }
        if (bridge) break;
      }
      if (!bridge) return std::nullopt;
      c.steps.push_back(*bridge);
    }
    append(c, reversed(rchain, facts_));
    return c;
  }

  Facts& facts_;
  std::size_t axiom_count_;
  Precedence prec_;
  Limits lim_;
  std::size_t nodes_ = 0;
  std::size_t next_id_ = 0;
  bool size_limited_ = false;
  std::priority_queue<Item, std::vector<Item>, ItemOrder> passive_;
  std::vector<Active> active_;
  std::unordered_map<std::uint32_t, std::vector<std::pair<std::size_t, bool>>> index_;
};

Precedence make_precedence(const Signature& sig, const std::vector<std::string>& skolems) {
  Precedence p;
  const auto& syms = sig.symbols();
  for (std::size_t i = 0; i < syms.size(); ++i) {
    long rank = static_cast<long>(i);
    if (syms[i].arity == 0) rank -= is_reserved_name(syms[i].name) ? 2'000'000 : 1'000'000;
    p.set(Symbol(syms[i].name), rank);
  }
  for (std::size_t i = 0; i < skolems.size(); ++i) {
    p.set(Symbol(skolems[i]), static_cast<long>(i) - 3'000'000);
  }
  return p;
}

}  // namespace

ProveResult prove(const Theory& t, const Equation& goal, const Budget& b) {
  b.validate();
  check_well_formed(t);
  check_well_formed(goal.lhs, t.signature);
  check_well_formed(goal.rhs, t.signature);

  const auto start = Clock::now();
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(b.max_seconds));

  ProveResult result;
  Proof proof;
  proof.name = "goal";
  proof.theory_name = t.name;

  Facts facts;
  for (const auto& a : t.axioms) facts.push_back({a.equation, a.label, {}});
  const std::size_t axiom_count = facts.size();

  auto finish = [&](const Chain& chain, std::string method) {
    Compiler comp(facts, proof);
    std::size_t last = comp.chain(chain);
    // The compiler may reuse an earlier line for the goal; restate it last.
    if (last != proof.lines.size() || proof.lines.back().equation != goal) {
      const Equation& got = proof.lines[last - 1].equation;
      if (got == goal) {
        proof.add(goal, SubstRule{last, {}, complete({}, goal)});
      }
    }
    result.status = ProveResult::Status::Proved;
    result.method = std::move(method);
    result.proof = std::move(proof);
    return result;
  };

  if (goal.lhs == goal.rhs) {
    result.nodes_explored = 1;
    return finish(Chain{goal.lhs, {}}, "search");
  }

  // Phase one gets a fifth of the node budget and a quarter of the time.
  Limits first{std::max<std::size_t>(b.max_nodes / 5, 1), b.max_term_size,
               start + (deadline - start) / 4};
  Search search(facts, axiom_count, variable_pool(t, goal), first);
  Outcome o1 = search.run(goal);
  result.nodes_explored = search.nodes();
  if (o1.chain) return finish(*o1.chain, "search");

  // Phase two works on the goal with its variables frozen into skolem
  // constants, which are mapped back to the variables before compilation.
  std::vector<std::string> skolems;
  std::map<std::string, Term> unfreeze;
  Substitution freeze;
  for (auto v : free_variables(goal)) {
    std::string name = "@g" + std::to_string(v);
    skolems.push_back(name);
    freeze.set(v, Term::constant(name));
    unfreeze.emplace(name, Term::var(v));
  }
  const Equation frozen = substitute(goal, freeze);
  Limits second{b.max_nodes - std::min(b.max_nodes - 1, result.nodes_explored), b.max_term_size,
                deadline};
  Completion comp(facts, axiom_count, make_precedence(t.signature, skolems), second);
  Outcome o2 = comp.run(frozen);
  result.nodes_explored += comp.nodes();
  if (o2.chain) return finish(replace_constants(*o2.chain, unfreeze), "completion");

  result.reason = o2.reason == "exhausted" ? o1.reason : o2.reason;
  if (result.reason == "exhausted") result.reason = "max_term_size";
  return result;
}

Substitution freeze_variables(const std::vector<Equation>& premises, const Equation& conclusion) {
  VarSet vars = free_variables(conclusion);
  for (const auto& p : premises) {
    auto v = free_variables(p);
    vars.insert(v.begin(), v.end());
  }
  Substitution s;
  std::size_t k = 0;
  for (auto v : vars) s.set(v, Term::constant("@a" + std::to_string(k++)));
  return s;
}

ProveResult entails_quasi(const Theory& t, const std::vector<Equation>& premises,
                          const Equation& conclusion, const Budget& b) {
  const Substitution freeze = freeze_variables(premises, conclusion);
  std::vector<LabeledAxiom> closed;
  std::set<std::string> labels;
  for (const auto& a : t.axioms) labels.insert(a.label);
  std::size_t k = 0;
  for (const auto& p : premises) {
    std::string label;
    do {
      label = "h" + std::to_string(++k);
    } while (labels.count(label));
    labels.insert(label);
    closed.push_back({label, substitute(p, freeze)});
  }
  Theory ext = t;
  for (const auto& [v, c] : freeze.mapping()) ext.signature.add(c.symbol().name(), 0);
  for (const auto& p : closed) ext.axioms.push_back(p);

  ProveResult r = prove(ext, substitute(conclusion, freeze), b);
  if (r.proof) {
    r.proof->premises = closed;
    r.proof->theory_name = t.name;
  }
  return r;
}

}  // namespace eqa
