#include "eqa/analyzers.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace eqa {

std::string to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Proved: return "Proved";
    case Verdict::Kind::Refuted: return "Refuted";
    case Verdict::Kind::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string to_string(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(ProtomodularForm f) {
  return f == ProtomodularForm::Printed ? "printed" : "swapped";
}

std::string to_string(NoGoCertificate::Kind k) {
  switch (k) {
    case NoGoCertificate::Kind::Balanced: return "Balanced";
    case NoGoCertificate::Kind::Monotone: return "Monotone";
    case NoGoCertificate::Kind::PartiallyInflationary: return "PartiallyInflationary";
    case NoGoCertificate::Kind::Inflationary: return "Inflationary";
  }
  return "Balanced";
}

std::string to_string(NoGoCertificate::Conclusion c) {
  return c == NoGoCertificate::Conclusion::NotMalcev ? "NotMalcev" : "NotProtomodular";
}

std::string to_string(MalcevResult::Kind k) {
  switch (k) {
    case MalcevResult::Kind::Found: return "Found";
    case MalcevResult::Kind::ImpossibleBalanced: return "ImpossibleBalanced";
    case MalcevResult::Kind::ImpossibleModel: return "ImpossibleModel";
    case MalcevResult::Kind::Exhausted: return "Exhausted";
  }
  return "Exhausted";
}

// ---------------------------------------------------------------------------
// Small-model cache

namespace {

// Enumeration of one carrier size stops after this many models; the list
// is then a prefix of the enumeration, which is still sound for refutation.
constexpr std::size_t kModelsPerSizeLimit = 60000;

std::string theory_key(const Theory& t) {
  std::string key;
  for (const auto& s : t.signature.symbols()) key += s.name + "/" + std::to_string(s.arity) + ";";
  key += "|";
  for (const auto& a : t.axioms) key += to_string(a.equation) + ";";
  return key;
}

std::mutex cache_mutex;
std::map<std::pair<std::string, std::size_t>, std::vector<Model>> per_size_cache;
std::map<std::pair<std::string, std::size_t>, std::vector<Model>> prefix_cache;

const std::vector<Model>& models_of_size(const std::string& key, const Theory& t, std::size_t n) {
  auto it = per_size_cache.find({key, n});
  if (it != per_size_cache.end()) return it->second;
  std::vector<Model> out;
  for_each_model(t, n, [&](const Model& m) {
    out.push_back(m);
    return out.size() < kModelsPerSizeLimit;
  });
  return per_size_cache.emplace(std::make_pair(key, n), std::move(out)).first->second;
}

void require_binary(const Term& term, const char* what) {
  for (auto v : free_variables(term)) {
    if (v > 1) throw std::invalid_argument(std::string(what) + " must be a term in x0, x1");
  }
}

Verdict::Kind combine(Verdict::Kind a, Verdict::Kind b) {
  if (a == Verdict::Kind::Refuted || b == Verdict::Kind::Refuted) return Verdict::Kind::Refuted;
  if (a == Verdict::Kind::Proved && b == Verdict::Kind::Proved) return Verdict::Kind::Proved;
  return Verdict::Kind::Unknown;
}

Tri classify(const std::vector<Verdict>& vs, std::initializer_list<std::size_t> idx) {
  bool unknown = false;
  for (auto i : idx) {
    if (vs[i].refuted()) return Tri::False;
    if (!vs[i].proved()) unknown = true;
  }
  return unknown ? Tri::Unknown : Tri::True;
}

}  // namespace

const std::vector<Model>& small_models(const Theory& t, std::size_t max_size) {
  const std::string key = theory_key(t);
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = prefix_cache.find({key, max_size});
  if (it != prefix_cache.end()) return it->second;
  std::vector<Model> all;
  for (std::size_t n = 1; n <= max_size; ++n) {
    const auto& level = models_of_size(key, t, n);
    all.insert(all.end(), level.begin(), level.end());
  }
  return prefix_cache.emplace(std::make_pair(key, max_size), std::move(all)).first->second;
}

// ---------------------------------------------------------------------------
// Verdicts

Verdict decide(const Theory& t, const Equation& eq, const AnalyzerOptions& opts) {
  check_well_formed(eq.lhs, t.signature);
  check_well_formed(eq.rhs, t.signature);
  Verdict v;
  v.equation = eq;
  for (const auto& m : small_models(t, opts.refute_max_size)) {
    auto r = satisfies(m, eq);
    if (!r.holds) {
      v.kind = Verdict::Kind::Refuted;
      v.countermodel = Countermodel{m, r.witness};
      v.detail = "countermodel of size " + std::to_string(m.size());
      return v;
    }
  }
  ProveResult r = prove(t, eq, opts.budget);
  if (r.proved()) {
    v.kind = Verdict::Kind::Proved;
    v.proof = std::move(r.proof);
    v.detail = r.method;
  } else {
    v.detail = r.reason;
  }
  return v;
}

Verdict decide_quasi(const Theory& t, const std::vector<Equation>& premises,
                     const Equation& conclusion, const AnalyzerOptions& opts) {
  for (const auto& p : premises) {
    check_well_formed(p.lhs, t.signature);
    check_well_formed(p.rhs, t.signature);
  }
  check_well_formed(conclusion.lhs, t.signature);
  check_well_formed(conclusion.rhs, t.signature);
  Verdict v;
  v.equation = conclusion;
  v.premises = premises;
  if (auto cm = quasi_countermodel_in(small_models(t, opts.refute_max_size), premises,
                                      conclusion)) {
    v.kind = Verdict::Kind::Refuted;
    v.detail = "countermodel of size " + std::to_string(cm->model.size());
    v.countermodel = std::move(cm);
    return v;
  }
  ProveResult r = entails_quasi(t, premises, conclusion, opts.budget);
  if (r.proved()) {
    v.kind = Verdict::Kind::Proved;
    v.proof = std::move(r.proof);
    v.detail = r.method;
  } else {
    v.detail = r.reason;
  }
  return v;
}

DeterminationReport determination_report(const Theory& t, const Term& term, const Equation& p,
                                         const AnalyzerOptions& opts) {
  require_binary(term, "term");
  require_binary(p.lhs, "order equation");
  require_binary(p.rhs, "order equation");
  const Equation closed{term, var(1)};
  DeterminationReport r;
  r.semi = decide_quasi(t, {p}, closed, opts);
  r.converse = decide_quasi(t, {closed}, p, opts);
  r.p_of_t = decide(t, substitute(p, Substitution{{1, term}}), opts);
  r.determined = combine(r.semi.kind, r.converse.kind);
  r.strong = combine(r.semi.kind, r.p_of_t.kind);
  return r;
}

// ---------------------------------------------------------------------------
// Closure terms

std::vector<ClosureEquation> closure_equations(const Term& term) {
  require_binary(term, "closure term");
  auto t = [&](const Term& a, const Term& b) {
    return substitute(term, Substitution{{0, a}, {1, b}});
  };
  auto leq = [&](const Term& a, const Term& b) { return Equation{t(a, b), b}; };
  const Term x = var(0), y = var(1), z = var(2);
  const Term xb = t(x, y);
  const Term xbb = t(xb, z);
  const Term big_x = t(xb, x);
  return {
      {"idempotency", {x, t(x, x)}},
      {"transitivity", {t(x, xbb), xbb}},
      {"antisymmetry", {t(xb, x), t(t(xb, x), y)}},
      {"left_absorption", {t(x, xb), xb}},
      {"right_absorption", leq(t(xb, y), xb)},
      {"left_monotonicity", leq(t(x, z), t(xb, z))},
      {"flattening", {t(xb, t(x, z)), t(xb, z)}},
      {"closure_stability", leq(t(t(xbb, xb), x), t(xbb, x))},
      {"weak_closure_stability", leq(t(t(big_x, xb), x), t(big_x, x))},
  };
}

ClosureTermReport closure_term_report(const Theory& t, const Term& term,
                                      const AnalyzerOptions& opts) {
  ClosureTermReport r;
  r.equations = closure_equations(term);
  for (const auto& ce : r.equations) r.verdicts.push_back(decide(t, ce.equation, opts));
  r.preorder_term = classify(r.verdicts, {0, 1});
  r.order_term = classify(r.verdicts, {0, 1, 2});
  r.relative_closure = classify(r.verdicts, {3, 4, 5, 6, 7});
  r.weak_relative_closure = classify(r.verdicts, {4, 6, 8});
  return r;
}

std::array<bool, 9> closure_equations_hold(const Model& m, const Term& term) {
  std::array<bool, 9> out{};
  auto eqs = closure_equations(term);
  for (std::size_t i = 0; i < 9; ++i) out[i] = satisfies(m, eqs[i].equation).holds;
  return out;
}

// ---------------------------------------------------------------------------
// Protomodularity

ProtomodularReport check_protomodular_terms(const Theory& t, const Term& theta,
                                            const std::vector<Term>& thetas,
                                            const std::vector<Term>& constants,
                                            const AnalyzerOptions& opts, ProtomodularForm form) {
  if (thetas.size() != constants.size()) {
    throw std::invalid_argument("need one constant per theta_i");
  }
  for (const auto& c : constants) {
    if (!free_variables(c).empty()) throw std::invalid_argument("constants must be closed terms");
  }
  for (auto v : free_variables(theta)) {
    if (v > thetas.size()) throw std::invalid_argument("theta has more variables than thetas");
  }
  ProtomodularReport r;
  r.form = form;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    require_binary(thetas[i], "theta_i");
    Equation eq{substitute(thetas[i], Substitution{{1, var(0)}}), constants[i]};
    r.verdicts.push_back(decide(t, eq, opts));
  }
  const Substitution swap{{0, var(1)}, {1, var(0)}};
  Substitution s{{0, var(1)}};
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    s.set(static_cast<Term::VarIndex>(i + 1),
          form == ProtomodularForm::Printed ? thetas[i] : substitute(thetas[i], swap));
  }
  r.verdicts.push_back(decide(t, Equation{substitute(theta, s), var(0)}, opts));
  r.all_proved = Tri::True;
  for (const auto& v : r.verdicts) {
    if (v.refuted()) {
      r.all_proved = Tri::False;
      break;
    }
    if (!v.proved()) r.all_proved = Tri::Unknown;
  }
  return r;
}

Term derive_malcev_from_protomodular(const Term& theta, const std::vector<Term>& thetas,
                                     ProtomodularForm form) {
  for (auto v : free_variables(theta)) {
    if (v > thetas.size()) {
      throw std::invalid_argument("theta mentions x" + std::to_string(v) + " but only " +
                                  std::to_string(thetas.size()) + " theta_i given");
    }
  }
  const bool swapped = form == ProtomodularForm::Swapped;
  Substitution s{{0, var(swapped ? 0 : 2)}};
  const Substitution shift = swapped ? Substitution{{0, var(1)}, {1, var(2)}}
                                     : Substitution{{0, var(0)}, {1, var(1)}};
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    for (auto v : free_variables(thetas[i])) {
      if (v > 1) throw std::invalid_argument("theta_" + std::to_string(i + 1) + " is not binary");
    }
    s.set(static_cast<Term::VarIndex>(i + 1), substitute(thetas[i], shift));
  }
  return substitute(theta, s);
}

// ---------------------------------------------------------------------------
// No-go certificates

namespace {

// Smallest component in which operation f is inflationary, or -1.
int inflationary_component(const Model& m, std::size_t f, const OrderRelation& le) {
  const std::size_t k = m.signature().symbols()[f].arity;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Element> args(k, 0);
    bool ok = true;
    do {
      if (!le(args[i], m.apply(f, args.data()))) ok = false;
      std::size_t j = k;
      while (j-- > 0) {
        if (++args[j] < n) break;
        args[j] = 0;
      }
      if (j == static_cast<std::size_t>(-1)) break;
    } while (ok);
    if (ok) return static_cast<int>(i);
  }
  return -1;
}

bool increasing_everywhere(const Model& m, std::size_t f, const OrderRelation& le) {
  const std::size_t k = m.signature().symbols()[f].arity;
  const std::size_t n = m.size();
  std::vector<Element> args(k, 0);
  if (k == 0) return true;
  while (true) {
    for (std::size_t i = 0; i < k; ++i) {
      const Element a = args[i];
      const Element fa = m.apply(f, args.data());
      for (std::size_t b = 0; b < n; ++b) {
        if (!le(a, static_cast<Element>(b))) continue;
        args[i] = static_cast<Element>(b);
        const bool ok = le(fa, m.apply(f, args.data()));
        args[i] = a;
        if (!ok) return false;
      }
    }
    std::size_t j = k;
    while (j-- > 0) {
      if (++args[j] < n) break;
      args[j] = 0;
    }
    if (j == static_cast<std::size_t>(-1)) return true;
  }
}

}  // namespace

NoGoResult nogo_certificate(const Theory& t, const Model& m, const OrderRelation& order,
                            bool allow_preorder) {
  if (!satisfies_all(m, t)) throw std::invalid_argument("model does not satisfy the theory");
  if (order.size != m.size()) throw std::invalid_argument("order size differs from carrier");
  NoGoResult out;
  const std::size_t n = m.size();
  if (n < 2) {
    out.reason = "trivial model";
    return out;
  }
  const auto& syms = m.signature().symbols();
  std::vector<std::string> why;

  NoGoCertificate base;
  base.model = m;
  base.order = order;

  // Monotone
  {
    bool ok = true;
    if (!order.is_partial_order()) {
      why.push_back("monotone: order is not a partial order");
      ok = false;
    } else if (order.discrete) {
      why.push_back("monotone: order is discrete");
      ok = false;
    } else {
      for (std::size_t f = 0; f < syms.size() && ok; ++f) {
        if (!increasing_everywhere(m, f, order)) {
          why.push_back("monotone: '" + syms[f].name + "' is not increasing");
          ok = false;
        }
      }
    }
    if (ok) {
      NoGoCertificate c = base;
      c.kind = NoGoCertificate::Kind::Monotone;
      c.conclusion = NoGoCertificate::Conclusion::NotMalcev;
      for (std::size_t a = 0; a < n && !c.witness; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          if (a != b && order(static_cast<Element>(a), static_cast<Element>(b))) {
            c.witness = {static_cast<Element>(a), static_cast<Element>(b)};
            break;
          }
        }
      }
      out.certificate = std::move(c);
      return out;
    }
  }

  // (Partially) inflationary
  const bool order_ok = allow_preorder ? order.is_preorder() : order.is_partial_order();
  if (!order_ok) {
    why.push_back(allow_preorder ? "inflationary: order is not a preorder"
                                 : "inflationary: order is not a partial order");
  } else {
    NoGoCertificate c = base;
    c.preorder_reading = allow_preorder;
    bool partial = true;
    bool full = true;
    for (std::size_t f = 0; f < syms.size(); ++f) {
      if (syms[f].arity == 0) {
        c.inflationary_component.push_back(-1);
        const Element v = m.table(f).values[0];
        std::optional<Element> above;
        bool maximum = true;
        for (std::size_t b = 0; b < n; ++b) {
          if (!above && !order(v, static_cast<Element>(b))) above = static_cast<Element>(b);
          if (!order(static_cast<Element>(b), v)) maximum = false;
        }
        if (above) {
          c.non_minimum_evidence.emplace_back(syms[f].name, *above);
        } else {
          why.push_back("inflationary: constant '" + syms[f].name + "' is the minimum");
          partial = false;
        }
        if (maximum) {
          c.maximum_evidence.emplace_back(syms[f].name, v);
        } else {
          full = false;
        }
        continue;
      }
      const int comp = inflationary_component(m, f, order);
      c.inflationary_component.push_back(comp);
      if (comp < 0) {
        why.push_back("inflationary: '" + syms[f].name + "' is inflationary in no component");
        partial = false;
      }
    }
    if (partial) {
      if (full) {
        c.kind = NoGoCertificate::Kind::Inflationary;
        c.conclusion = NoGoCertificate::Conclusion::NotMalcev;
      } else {
        c.kind = NoGoCertificate::Kind::PartiallyInflationary;
        c.conclusion = NoGoCertificate::Conclusion::NotProtomodular;
      }
      out.certificate = std::move(c);
      return out;
    }
  }
  for (std::size_t i = 0; i < why.size(); ++i) {
    if (i) out.reason += "; ";
    out.reason += why[i];
  }
  return out;
}

bool verify_certificate(const Theory& t, const NoGoCertificate& c) {
  if (c.kind == NoGoCertificate::Kind::Balanced) {
    return is_balanced(t) && c.conclusion == NoGoCertificate::Conclusion::NotMalcev;
  }
  if (!c.model || !c.order) return false;
  const Model& m = *c.model;
  const OrderRelation& le = *c.order;
  if (m.size() < 2 || le.size != m.size() || !satisfies_all(m, t)) return false;
  // Recompute the flags from the matrix rather than trusting them.
  const OrderRelation fresh = make_order(le.leq);
  const auto& syms = m.signature().symbols();
  if (c.kind == NoGoCertificate::Kind::Monotone) {
    if (!fresh.is_partial_order() || fresh.discrete || !c.witness) return false;
    auto [a, b] = *c.witness;
    if (a == b || a >= m.size() || b >= m.size() || !fresh(a, b)) return false;
    for (std::size_t f = 0; f < syms.size(); ++f) {
      if (!increasing_everywhere(m, f, fresh)) return false;
    }
    return c.conclusion == NoGoCertificate::Conclusion::NotMalcev;
  }
  if (!(c.preorder_reading ? fresh.is_preorder() : fresh.is_partial_order())) return false;
  if (c.inflationary_component.size() != syms.size()) return false;
  for (std::size_t f = 0; f < syms.size(); ++f) {
    const int comp = c.inflationary_component[f];
    if (syms[f].arity == 0) {
      if (comp != -1) return false;
      continue;
    }
    if (comp < 0 || static_cast<std::size_t>(comp) >= syms[f].arity) return false;
    // The claimed component must itself be inflationary.
    const std::size_t k = syms[f].arity;
    std::vector<Element> args(k, 0);
    while (true) {
      if (!fresh(args[comp], m.apply(f, args.data()))) return false;
      std::size_t j = k;
      while (j-- > 0) {
        if (++args[j] < m.size()) break;
        args[j] = 0;
      }
      if (j == static_cast<std::size_t>(-1)) break;
    }
  }
  const auto constants = m.signature().constants();
  auto lookup = [](const std::vector<std::pair<std::string, Element>>& ev,
                   const std::string& name) -> std::optional<Element> {
    for (const auto& [k, v] : ev) {
      if (k == name) return v;
    }
    return std::nullopt;
  };
  for (const auto& name : constants) {
    auto b = lookup(c.non_minimum_evidence, name);
    if (!b || *b >= m.size() || fresh(m.constant(name), *b)) return false;
  }
  if (c.kind == NoGoCertificate::Kind::Inflationary) {
    for (const auto& name : constants) {
      auto v = lookup(c.maximum_evidence, name);
      if (!v || *v != m.constant(name)) return false;
      for (std::size_t b = 0; b < m.size(); ++b) {
        if (!fresh(static_cast<Element>(b), *v)) return false;
      }
    }
    return c.conclusion == NoGoCertificate::Conclusion::NotMalcev;
  }
  return c.conclusion == NoGoCertificate::Conclusion::NotProtomodular;
}

// ---------------------------------------------------------------------------
// Malcev search

namespace {

using Clock = std::chrono::steady_clock;

// Values of a ternary term at the points (a,b,b) and (a,a,b) of each model;
// that is all the Malcev identities look at, and evaluation is pointwise.
struct PointSet {
  std::vector<const Model*> models;
  std::vector<std::uint32_t> model_of;
  std::vector<std::array<Element, 3>> coords;
  std::vector<Element> expected;
};

PointSet make_points(const std::vector<const Model*>& models) {
  PointSet ps;
  ps.models = models;
  for (std::uint32_t mi = 0; mi < models.size(); ++mi) {
    const std::size_t n = models[mi]->size();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const Element ea = static_cast<Element>(a), eb = static_cast<Element>(b);
        ps.model_of.push_back(mi);
        ps.coords.push_back({ea, eb, eb});
        ps.expected.push_back(ea);
        if (a != b) {
          ps.model_of.push_back(mi);
          ps.coords.push_back({ea, ea, eb});
          ps.expected.push_back(eb);
        }
      }
    }
  }
  return ps;
}

struct Candidate {
  Term term;
  std::vector<Element> values;
};

std::vector<Model> iso_representatives(const std::vector<Model>& models) {
  std::vector<Model> out;
  std::set<std::pair<std::size_t, std::vector<Element>>> seen;
  for (const auto& m : models) {
    if (seen.insert({m.size(), canonical_form(m)}).second) out.push_back(m);
  }
  return out;
}

}  // namespace

MalcevResult malcev_search(const Theory& t, const MalcevOptions& opts) {
  opts.budget.validate();
  check_well_formed(t);
  const auto start = Clock::now();
  auto out_of_time = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count() > opts.budget.max_seconds;
  };
  MalcevResult res;
  res.depth = opts.max_depth;

  if (is_balanced(t)) {
    res.kind = MalcevResult::Kind::ImpossibleBalanced;
    NoGoCertificate c;
    c.kind = NoGoCertificate::Kind::Balanced;
    c.conclusion = NoGoCertificate::Conclusion::NotMalcev;
    res.certificate = c;
    res.detail = "balanced";
    return res;
  }

  const std::vector<Model> reps = iso_representatives(small_models(t, opts.model_cap));
  std::size_t skipped = 0;
  for (const auto& m : reps) {
    if (m.size() < 2) continue;
    if (out_of_time()) {
      res.detail = "max_seconds";
      return res;
    }
    std::size_t generated = 0;
    std::optional<OperationTable> hit;
    try {
      hit = find_in_clone(
          m, 3, opts.clone_cap,
          [&](const OperationTable& op) { return is_malcev_operation(op, m.size()); }, &generated);
    } catch (const CloneCapExceeded&) {
      ++skipped;
      continue;
    }
    const bool has = hit.has_value();
    if (!has) {
      res.kind = MalcevResult::Kind::ImpossibleModel;
      res.clone_model = m;
      res.clone_size = generated;
      res.detail = "ternary clone of a model of size " + std::to_string(m.size()) + " (" +
                   std::to_string(generated) + " operations) has no Malcev operation";
      return res;
    }
  }

  std::vector<const Model*> filter_models;
  for (const auto& m : reps) filter_models.push_back(&m);
  const PointSet ps = make_points(filter_models);
  const std::size_t np = ps.coords.size();

  const auto& syms = t.signature.symbols();
  // levels[s]: candidates of size s with depth <= max_depth, by compare_terms.
  std::vector<std::vector<Candidate>> levels(1);
  std::size_t stored = 0;
  std::string stop;

  auto try_candidate = [&](const Candidate& c) -> bool {
    ++res.candidates_considered;
    if (c.values != ps.expected) return false;
    ++res.candidates_attempted;
    const Term x = var(0), y = var(1);
    const Equation e1{substitute(c.term, Substitution{{0, x}, {1, y}, {2, y}}), x};
    const Equation e2{substitute(c.term, Substitution{{0, x}, {1, x}, {2, y}}), y};
    ProveResult r1 = prove(t, e1, opts.candidate_budget);
    if (!r1.proved()) return false;
    ProveResult r2 = prove(t, e2, opts.candidate_budget);
    if (!r2.proved()) return false;
    res.kind = MalcevResult::Kind::Found;
    res.term = c.term;
    res.proof_xyy = std::move(r1.proof);
    res.proof_xxy = std::move(r2.proof);
    res.proof_xyy->name = "malcev_xyy";
    res.proof_xxy->name = "malcev_xxy";
    res.detail = "p(x0,x1,x2) = " + to_string(c.term);
    return true;
  };

  // Largest term size reachable within the depth bound.
  std::size_t max_size = 1;
  {
    std::size_t max_arity = 0;
    for (const auto& s : syms) max_arity = std::max(max_arity, s.arity);
    std::size_t width = 1;
    for (std::size_t d = 0; d < opts.max_depth && max_arity > 0; ++d) {
      width *= max_arity;
      max_size += width;
    }
  }

  for (std::size_t size = 1; size <= max_size; ++size) {
    std::vector<Candidate> level;
    if (size == 1) {
      for (Term::VarIndex i = 0; i < 3; ++i) {
        Candidate c{var(i), std::vector<Element>(np)};
        for (std::size_t k = 0; k < np; ++k) c.values[k] = ps.coords[k][i];
        level.push_back(std::move(c));
      }
      for (std::size_t f = 0; f < syms.size(); ++f) {
        if (syms[f].arity != 0) continue;
        Candidate c{Term::constant(syms[f].name), std::vector<Element>(np)};
        for (std::size_t k = 0; k < np; ++k) {
          c.values[k] = ps.models[ps.model_of[k]]->table(f).values[0];
        }
        level.push_back(std::move(c));
      }
    } else {
      for (std::size_t f = 0; f < syms.size() && stop.empty(); ++f) {
        const std::size_t k = syms[f].arity;
        if (k == 0 || size - 1 < k) continue;
        std::vector<const Candidate*> pick(k);
        std::vector<Element> args(k);
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t j, std::size_t left) {
          if (!stop.empty()) return;
          if (j == k) {
            if (left != 0) return;
            std::vector<Term> children;
            for (auto* p : pick) children.push_back(p->term);
            Term term = Term::app(syms[f].name, std::move(children));
            if (term.depth() > opts.max_depth) return;
            Candidate c{std::move(term), std::vector<Element>(np)};
            for (std::size_t q = 0; q < np; ++q) {
              for (std::size_t a = 0; a < k; ++a) args[a] = pick[a]->values[q];
              c.values[q] = ps.models[ps.model_of[q]]->apply(f, args.data());
            }
            level.push_back(std::move(c));
            if (stored + level.size() > opts.budget.max_nodes) stop = "max_nodes";
            return;
          }
          const std::size_t rest = k - j - 1;
          for (std::size_t s = 1; s + rest <= left; ++s) {
            if (s >= levels.size()) break;
            for (const auto& cand : levels[s]) {
              pick[j] = &cand;
              rec(j + 1, left - s);
              if (!stop.empty()) return;
            }
          }
        };
        rec(0, size - 1);
        if (stop.empty() && out_of_time()) stop = "max_seconds";
      }
    }
    std::sort(level.begin(), level.end(), [](const Candidate& a, const Candidate& b) {
      return compare_terms(a.term, b.term) < 0;
    });
    for (const auto& c : level) {
      if (try_candidate(c)) return res;
      if (out_of_time()) {
        stop = "max_seconds";
        break;
      }
    }
    if (!stop.empty()) break;
    stored += level.size();
    levels.push_back(std::move(level));
  }
  res.kind = MalcevResult::Kind::Exhausted;
  res.detail = stop.empty() ? "no Malcev term up to depth " + std::to_string(opts.max_depth)
                            : stop;
  if (skipped) res.detail += "; " + std::to_string(skipped) + " models skipped at the clone cap";
  return res;
}

// ---------------------------------------------------------------------------

AntisymmetryCheck antisymmetry_equivalence_check(const Model& m, const Term& term) {
  require_binary(term, "term");
  const std::size_t n = m.size();
  std::vector<std::vector<Element>> tt(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      tt[a][b] = evaluate(m, term, {{0, static_cast<Element>(a)}, {1, static_cast<Element>(b)}});
    }
  }
  AntisymmetryCheck r;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (tt[a][b] == b && tt[b][a] == a && a != b) r.antisym = false;
      const Element big_x = tt[tt[a][b]][a];
      if (big_x != tt[big_x][b]) r.x_eq_xy = false;
      if (big_x != tt[tt[b][a]][b]) r.cornish = false;
    }
  }
  return r;
}

}  // namespace eqa
