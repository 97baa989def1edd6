#include "eqa/term.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <unordered_map>

namespace eqa {

namespace {

class SymbolTable {
 public:
  static SymbolTable& instance() {
    static SymbolTable table;
    return table;
  }

  std::pair<std::uint32_t, const std::string*> intern(std::string_view name) {
    std::lock_guard lock(mutex_);
    auto it = ids_.find(std::string(name));
    if (it != ids_.end()) return {it->second, &names_[it->second]};
    auto id = static_cast<std::uint32_t>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(names_.back(), id);
    return {id, &names_.back()};
  }

 private:
  SymbolTable() { names_.emplace_back(""); ids_.emplace("", 0); }

  std::mutex mutex_;
  std::deque<std::string> names_;  // stable references
  std::unordered_map<std::string, std::uint32_t> ids_;
};

constexpr std::string_view kOperatorChars = "*+-/\\^&|<>~!%";

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Symbol::Symbol(std::string_view name) {
  auto [id, ptr] = SymbolTable::instance().intern(name);
  id_ = id;
  name_ = ptr;
}

const std::string& Symbol::empty_name() {
  static const std::string empty;
  return empty;
}

int compare_symbols(Symbol a, Symbol b) {
  if (a == b) return 0;
  int c = a.name().compare(b.name());
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

bool is_operator_name(std::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return kOperatorChars.find(c) != std::string_view::npos;
  });
}

bool is_identifier_name(std::string_view name) {
  if (name.empty()) return false;
  auto head = static_cast<unsigned char>(name.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

bool is_variable_name(std::string_view name) {
  if (name == "x" || name == "y" || name == "z") return true;
  if (name.size() < 2 || name.front() != 'x') return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

Term::Term() : Term(var(0)) {}

Term Term::var(VarIndex index) {
  auto node = std::make_shared<Node>();
  node->is_var = true;
  node->var = index;
  node->hash = mix(0x51ed27, index);
  node->var_bound = index + 1;
  return Term(std::move(node));
}

Term Term::app(Symbol symbol, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  node->is_var = false;
  node->symbol = symbol;
  std::size_t h = mix(0xa11ce, symbol.id());
  std::size_t size = 1;
  std::size_t depth = 0;
  VarIndex bound = 0;
  for (const auto& a : args) {
    h = mix(h, a.hash());
    size += a.size();
    depth = std::max(depth, a.depth() + 1);
    bound = std::max(bound, a.var_bound());
  }
  node->hash = h;
  node->size = size;
  node->depth = depth;
  node->var_bound = bound;
  node->args = std::move(args);
  return Term(std::move(node));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  if (a.is_var() != b.is_var()) return false;
  if (a.is_var()) return a.var_index() == b.var_index();
  if (a.symbol() != b.symbol() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (a.args()[i] != b.args()[i]) return false;
  }
  return true;
}

int compare_terms(const Term& a, const Term& b) {
  if (a.same_node(b)) return 0;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  if (a.is_var() != b.is_var()) return a.is_var() ? -1 : 1;
  if (a.is_var()) {
    if (a.var_index() == b.var_index()) return 0;
    return a.var_index() < b.var_index() ? -1 : 1;
  }
  if (int c = compare_symbols(a.symbol(), b.symbol()); c != 0) return c;
  if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (int c = compare_terms(a.args()[i], b.args()[i]); c != 0) return c;
  }
  return 0;
}

Signature::Signature(std::vector<SignatureEntry> symbols) {
  for (auto& s : symbols) add(std::move(s.name), s.arity);
}

void Signature::add(std::string name, std::size_t arity) {
  if (!(is_identifier_name(name) || is_operator_name(name) ||
        (is_reserved_name(name) && is_identifier_name(name.substr(1))))) {
    throw std::invalid_argument("malformed symbol name '" + name + "'");
  }
  if (is_variable_name(name)) {
    throw std::invalid_argument("symbol name '" + name +
                                "' clashes with a variable name");
  }
  if (contains(name)) {
    throw std::invalid_argument("duplicate symbol '" + name + "'");
  }
  symbols_.push_back({std::move(name), arity});
}

std::optional<std::size_t> Signature::arity_of(std::string_view name) const {
  if (auto i = index_of(name)) return symbols_[*i].arity;
  return std::nullopt;
}

std::optional<std::size_t> Signature::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<std::string> Signature::constants() const {
  std::vector<std::string> out;
  for (const auto& s : symbols_) {
    if (s.arity == 0) out.push_back(s.name);
  }
  return out;
}

const LabeledAxiom* Theory::find_axiom(std::string_view label) const {
  for (const auto& a : axioms) {
    if (a.label == label) return &a;
  }
  return nullptr;
}

const Term* Substitution::get(Term::VarIndex v) const {
  auto it = map_.find(v);
  return it == map_.end() ? nullptr : &it->second;
}

void collect_variables(const Term& term, VarSet& out) {
  if (term.is_var()) {
    out.insert(term.var_index());
    return;
  }
  if (term.var_bound() == 0) return;
  for (const auto& a : term.args()) collect_variables(a, out);
}

VarSet free_variables(const Term& term) {
  VarSet out;
  collect_variables(term, out);
  return out;
}

VarSet free_variables(const Equation& eq) {
  VarSet out;
  collect_variables(eq.lhs, out);
  collect_variables(eq.rhs, out);
  return out;
}

Term substitute(const Term& term, const Substitution& s) {
  if (term.is_var()) {
    const Term* image = s.get(term.var_index());
    return image ? *image : term;
  }
  if (term.var_bound() == 0) return term;
  std::vector<Term> args;
  args.reserve(term.arity());
  bool changed = false;
  for (const auto& a : term.args()) {
    args.push_back(substitute(a, s));
    changed = changed || !args.back().same_node(a);
  }
  return changed ? Term::app(term.symbol(), std::move(args)) : term;
}

Equation substitute(const Equation& eq, const Substitution& s) {
  return {substitute(eq.lhs, s), substitute(eq.rhs, s)};
}

Substitution compose(const Substitution& s1, const Substitution& s2) {
  Substitution out;
  for (const auto& [v, t] : s1.mapping()) out.set(v, substitute(t, s2));
  for (const auto& [v, t] : s2.mapping()) {
    if (!s1.contains(v)) out.set(v, t);
  }
  return out;
}

bool is_balanced(const Equation& eq) {
  return free_variables(eq.lhs) == free_variables(eq.rhs);
}

bool is_balanced(const Theory& theory) {
  return std::all_of(theory.axioms.begin(), theory.axioms.end(),
                     [](const auto& a) { return is_balanced(a.equation); });
}

TermMetrics term_metrics(const Term& term) {
  return {term.size(), term.depth()};
}

const Term& subterm_at(const Term& term, const Path& path) {
  const Term* cur = &term;
  for (auto i : path) {
    if (cur->is_var() || i >= cur->arity()) {
      throw std::out_of_range("invalid term position");
    }
    cur = &cur->args()[i];
  }
  return *cur;
}

namespace {
Term replace_from(const Term& term, const Path& path, std::size_t depth,
                  const Term& replacement) {
  if (depth == path.size()) return replacement;
  if (term.is_var() || path[depth] >= term.arity()) {
    throw std::out_of_range("invalid term position");
  }
  std::vector<Term> args = term.args();
  args[path[depth]] = replace_from(args[path[depth]], path, depth + 1, replacement);
  return Term::app(term.symbol(), std::move(args));
}

void collect_positions(const Term& term, Path& cur, std::vector<Path>& out) {
  out.push_back(cur);
  if (term.is_var()) return;
  for (std::uint32_t i = 0; i < term.arity(); ++i) {
    cur.push_back(i);
    collect_positions(term.args()[i], cur, out);
    cur.pop_back();
  }
}
}  // namespace

Term replace_at(const Term& term, const Path& path, const Term& replacement) {
  return replace_from(term, path, 0, replacement);
}

std::vector<Path> positions(const Term& term) {
  std::vector<Path> out;
  Path cur;
  collect_positions(term, cur, out);
  return out;
}

void check_well_formed(const Term& term, const Signature& sig) {
  if (term.is_var()) return;
  const auto& name = term.symbol().name();
  auto arity = sig.arity_of(name);
  if (!arity) throw std::invalid_argument("unknown symbol '" + name + "'");
  if (*arity != term.arity()) {
    throw std::invalid_argument("symbol '" + name + "' expects " +
                                std::to_string(*arity) + " arguments, got " +
                                std::to_string(term.arity()));
  }
  for (const auto& a : term.args()) check_well_formed(a, sig);
}

void check_well_formed(const Theory& theory) {
  std::set<std::string> labels;
  for (const auto& a : theory.axioms) {
    if (!labels.insert(a.label).second) {
      throw std::invalid_argument("duplicate axiom label '" + a.label + "'");
    }
    check_well_formed(a.equation.lhs, theory.signature);
    check_well_formed(a.equation.rhs, theory.signature);
  }
}

namespace {
void print(const Term& t, std::string& out) {
  if (t.is_var()) {
    out += 'x';
    out += std::to_string(t.var_index());
    return;
  }
  const auto& name = t.symbol().name();
  if (t.arity() == 2 && is_operator_name(name)) {
    out += '(';
    print(t.args()[0], out);
    out += ' ';
    out += name;
    out += ' ';
    print(t.args()[1], out);
    out += ')';
    return;
  }
  out += name;
  if (t.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ", ";
    print(t.args()[i], out);
  }
  out += ')';
}
}  // namespace

std::string to_string(const Term& term) {
  std::string out;
  print(term, out);
  return out;
}

std::string to_string(const Equation& eq) {
  return to_string(eq.lhs) + " = " + to_string(eq.rhs);
}

std::string to_string(const Substitution& s) {
  std::string out = "[";
  bool first = true;
  for (const auto& [v, t] : s.mapping()) {
    if (!first) out += ", ";
    first = false;
    out += 'x' + std::to_string(v) + " := " + to_string(t);
  }
  out += ']';
  return out;
}

}  // namespace eqa
