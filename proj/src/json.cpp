#include "eqa/json.hpp"

namespace eqa {

Json to_json(const Term& t) { return to_string(t); }

Json to_json(const Equation& eq) {
  return Json{{"lhs", to_string(eq.lhs)}, {"rhs", to_string(eq.rhs)}, {"text", to_string(eq)}};
}

Json to_json(const Substitution& s) {
  Json out = Json::object();
  for (const auto& [v, t] : s.mapping()) out["x" + std::to_string(v)] = to_string(t);
  return out;
}

Json to_json(const Signature& sig) {
  Json out = Json::array();
  for (const auto& s : sig.symbols()) out.push_back({{"name", s.name}, {"arity", s.arity}});
  return out;
}

Json to_json(const Theory& t) {
  Json axioms = Json::array();
  for (const auto& a : t.axioms) axioms.push_back({{"label", a.label}, {"equation", to_json(a.equation)}});
  return Json{{"name", t.name}, {"signature", to_json(t.signature)}, {"axioms", axioms}};
}

namespace {

Json justification(const Justification& by) {
  return std::visit(
      [](const auto& r) -> Json {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, AxiomRule>) {
          return {{"rule", "axiom"}, {"label", r.label}, {"subst", to_json(r.subst)}};
        } else if constexpr (std::is_same_v<R, ReflRule>) {
          return {{"rule", "refl"}};
        } else if constexpr (std::is_same_v<R, SymRule>) {
          return {{"rule", "sym"}, {"line", r.line}};
        } else if constexpr (std::is_same_v<R, TransRule>) {
          return {{"rule", "trans"}, {"lines", {r.first, r.second}}};
        } else {
          return {{"rule", "subst"},
                  {"template", r.template_line},
                  {"args", r.arg_lines},
                  {"subst", to_json(r.subst)}};
        }
      },
      by);
}

}  // namespace

Json to_json(const Proof& p) {
  Json premises = Json::array();
  for (const auto& a : p.premises) {
    premises.push_back({{"label", a.label}, {"equation", to_json(a.equation)}});
  }
  Json lines = Json::array();
  for (std::size_t i = 0; i < p.lines.size(); ++i) {
    Json line{{"n", i + 1}, {"equation", to_json(p.lines[i].equation)}};
    const Json by = justification(p.lines[i].by);
    for (const auto& [k, v] : by.items()) line[k] = v;
    lines.push_back(std::move(line));
  }
  return Json{{"name", p.name},
              {"theory", p.theory_name},
              {"premises", premises},
              {"lines", lines}};
}

Json to_json(const Model& m) {
  Json constants = Json::object();
  Json tables = Json::object();
  const auto& syms = m.signature().symbols();
  for (std::size_t i = 0; i < syms.size(); ++i) {
    const auto& tab = m.table(i);
    if (syms[i].arity == 0) {
      constants[syms[i].name] = tab.values[0];
    } else if (syms[i].arity == 1) {
      tables[syms[i].name] = tab.values;
    } else {
      // Nested rows: first argument outermost.
      std::function<Json(std::size_t, std::size_t)> nest = [&](std::size_t depth,
                                                              std::size_t offset) -> Json {
        Json arr = Json::array();
        std::size_t stride = 1;
        for (std::size_t d = depth + 1; d < syms[i].arity; ++d) stride *= m.size();
        for (std::size_t a = 0; a < m.size(); ++a) {
          if (depth + 1 == syms[i].arity) {
            arr.push_back(tab.values[offset + a]);
          } else {
            arr.push_back(nest(depth + 1, offset + a * stride));
          }
        }
        return arr;
      };
      tables[syms[i].name] = nest(0, 0);
    }
  }
  return Json{{"name", m.name},
              {"theory", m.theory_name},
              {"size", m.size()},
              {"signature", to_json(m.signature())},
              {"constants", constants},
              {"tables", tables}};
}

Json to_json(const Assignment& a) {
  Json out = Json::object();
  for (const auto& [v, e] : a) out["x" + std::to_string(v)] = e;
  return out;
}

Json to_json(const Countermodel& c) {
  return Json{{"model", to_json(c.model)}, {"assignment", to_json(c.assignment)}};
}

Json to_json(const OrderRelation& o) {
  Json matrix = Json::array();
  for (const auto& row : o.leq) {
    Json r = Json::array();
    for (bool b : row) r.push_back(b ? 1 : 0);
    matrix.push_back(r);
  }
  return Json{{"size", o.size},
              {"leq", matrix},
              {"reflexive", o.reflexive},
              {"antisymmetric", o.antisymmetric},
              {"transitive", o.transitive},
              {"discrete", o.discrete}};
}

Json to_json(const ProveResult& r) {
  Json out{{"status", r.proved() ? "Proved" : "Unknown"},
           {"nodes_explored", r.nodes_explored},
           {"method", r.method}};
  if (!r.proved()) out["reason"] = r.reason;
  if (r.proof) out["proof"] = to_json(*r.proof);
  return out;
}

Json to_json(const Verdict& v) {
  Json out{{"status", to_string(v.kind)}, {"equation", to_json(v.equation)}};
  if (!v.premises.empty()) {
    Json ps = Json::array();
    for (const auto& p : v.premises) ps.push_back(to_json(p));
    out["premises"] = ps;
  }
  out["detail"] = v.detail;
  if (v.proof) out["proof"] = to_json(*v.proof);
  if (v.countermodel) out["countermodel"] = to_json(*v.countermodel);
  return out;
}

Json to_json(const DeterminationReport& r) {
  return Json{{"semi", to_json(r.semi)},
              {"determined", to_string(r.determined)},
              {"strong", to_string(r.strong)},
              {"converse", to_json(r.converse)},
              {"order_of_term", to_json(r.p_of_t)}};
}

Json to_json(const ClosureTermReport& r) {
  Json eqs = Json::object();
  for (std::size_t i = 0; i < r.equations.size(); ++i) {
    eqs[r.equations[i].name] = to_json(r.verdicts[i]);
  }
  return Json{{"equations", eqs},
              {"preorder_term", to_string(r.preorder_term)},
              {"order_term", to_string(r.order_term)},
              {"relative_closure", to_string(r.relative_closure)},
              {"weak_relative_closure", to_string(r.weak_relative_closure)}};
}

Json to_json(const ProtomodularReport& r) {
  Json vs = Json::array();
  for (const auto& v : r.verdicts) vs.push_back(to_json(v));
  return Json{{"form", to_string(r.form)},
              {"all_proved", to_string(r.all_proved)},
              {"equations", vs}};
}

Json to_json(const NoGoCertificate& c) {
  Json out{{"kind", to_string(c.kind)}, {"conclusion", to_string(c.conclusion)}};
  if (c.model) out["model"] = to_json(*c.model);
  if (c.order) out["order"] = to_json(*c.order);
  if (c.witness) out["witness"] = {c.witness->first, c.witness->second};
  if (c.kind == NoGoCertificate::Kind::PartiallyInflationary ||
      c.kind == NoGoCertificate::Kind::Inflationary) {
    out["order_reading"] = c.preorder_reading ? "preorder" : "partial_order";
    Json comps = Json::object();
    const auto& syms = c.model->signature().symbols();
    for (std::size_t i = 0; i < syms.size() && i < c.inflationary_component.size(); ++i) {
      if (syms[i].arity > 0) comps[syms[i].name] = c.inflationary_component[i];
    }
    out["inflationary_component"] = comps;
    Json nonmin = Json::object();
    for (const auto& [k, b] : c.non_minimum_evidence) nonmin[k] = b;
    out["non_minimum_evidence"] = nonmin;
    if (c.kind == NoGoCertificate::Kind::Inflationary) {
      Json mx = Json::object();
      for (const auto& [k, v] : c.maximum_evidence) mx[k] = v;
      out["maximum_evidence"] = mx;
    }
  }
  return out;
}

Json to_json(const NoGoResult& r) {
  if (r.certificate) return Json{{"status", "Certificate"}, {"certificate", to_json(*r.certificate)}};
  return Json{{"status", "NotApplicable"}, {"reason", r.reason}};
}

Json to_json(const MalcevResult& r) {
  Json out{{"status", to_string(r.kind)}, {"detail", r.detail}, {"depth", r.depth}};
  if (r.term) out["term"] = to_string(*r.term);
  if (r.proof_xyy) out["proof_xyy"] = to_json(*r.proof_xyy);
  if (r.proof_xxy) out["proof_xxy"] = to_json(*r.proof_xxy);
  if (r.certificate) out["certificate"] = to_json(*r.certificate);
  if (r.clone_model) {
    out["clone_model"] = to_json(*r.clone_model);
    out["clone_size"] = r.clone_size;
  }
  out["candidates_considered"] = r.candidates_considered;
  out["candidates_attempted"] = r.candidates_attempted;
  return out;
}

Json to_json(const AntisymmetryCheck& r) {
  return Json{{"antisym", r.antisym}, {"X_eq_Xy", r.x_eq_xy}, {"cornish", r.cornish}};
}

Json to_json(const GaloisResult& r) {
  Json out{{"holds", r.holds}};
  if (!r.holds) out["witness"] = {r.witness[0], r.witness[1], r.witness[2]};
  return out;
}

Json to_json(const AxiomEntry& a) {
  return Json{{"index", a.index},
              {"name", a.name},
              {"label", a.label},
              {"aliases", a.aliases},
              {"equation", to_json(a.equation)}};
}

}  // namespace eqa
