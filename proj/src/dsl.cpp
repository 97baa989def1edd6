#include "eqa/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <sstream>

namespace eqa {

ParseError::ParseError(std::string message, SourceSpan span, std::vector<std::string> expected)
    : std::runtime_error("line " + std::to_string(span.line) + ", column " +
                         std::to_string(span.column_start) + ": " + message),
      message_(std::move(message)),
      span_(span),
      expected_(std::move(expected)) {}

namespace {

constexpr std::string_view kOperatorChars = "*+-/\\^&|<>~!%";

enum class Tok {
  Ident,
  Reserved,
  Op,
  Number,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Semi,
  Colon,
  Assign,
  Equals,
  End,
  Bad,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End:
      return "end of input";
    default:
      return "'" + t.text + "'";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  const Token& peek() {
    if (!peeked_) peeked_ = lex();
    return *peeked_;
  }

  Token next() {
    Token t = peek();
    peeked_.reset();
    return t;
  }

  /// A bare word such as a theory name: [A-Za-z0-9_.-]+.
  Token word() {
    peeked_.reset();
    skip_space();
    Token t;
    t.span = here();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      auto u = static_cast<unsigned char>(c);
      if (std::isalnum(u) || c == '_' || c == '-' || c == '.') {
        advance();
      } else {
        break;
      }
    }
    t.text = std::string(text_.substr(start, pos_ - start));
    t.kind = t.text.empty() ? Tok::Bad : Tok::Ident;
    t.span.column_end = t.span.column_start + std::max<std::size_t>(t.text.size(), 1) - 1;
    if (t.text.empty()) fix_end_span(t);
    return t;
  }

 private:
  SourceSpan here() const { return {line_, col_, col_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  // An end-of-input token points at the last character of the text so that
  // every error span lies inside the input.
  void fix_end_span(Token& t) const {
    if (pos_ < text_.size()) return;
    std::size_t line = 1, col = 1, last_line = 1, last_col = 1;
    for (char c : text_) {
      last_line = line;
      last_col = col;
      if (c == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    t.span = {last_line, last_col, last_col};
  }

  Token lex() {
    skip_space();
    Token t;
    t.span = here();
    if (pos_ >= text_.size()) {
      t.kind = Tok::End;
      fix_end_span(t);
      return t;
    }
    std::size_t start = pos_;
    char c = text_[pos_];
    auto u = static_cast<unsigned char>(c);
    auto take_while = [&](auto pred) {
      while (pos_ < text_.size() && pred(static_cast<unsigned char>(text_[pos_]))) advance();
    };
    auto ident_char = [](unsigned char ch) { return std::isalnum(ch) || ch == '_'; };
    if (std::isalpha(u) || c == '_') {
      take_while(ident_char);
      t.kind = Tok::Ident;
    } else if (c == '@') {
      advance();
      take_while(ident_char);
      t.kind = pos_ - start > 1 ? Tok::Reserved : Tok::Bad;
    } else if (std::isdigit(u)) {
      take_while([](unsigned char ch) { return std::isdigit(ch); });
      t.kind = Tok::Number;
    } else if (kOperatorChars.find(c) != std::string_view::npos) {
      take_while([](unsigned char ch) {
        return kOperatorChars.find(static_cast<char>(ch)) != std::string_view::npos;
      });
      t.kind = Tok::Op;
    } else if (c == ':' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
      advance();
      advance();
      t.kind = Tok::Assign;
    } else {
      advance();
      switch (c) {
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case '[': t.kind = Tok::LBracket; break;
        case ']': t.kind = Tok::RBracket; break;
        case ',': t.kind = Tok::Comma; break;
        case ';': t.kind = Tok::Semi; break;
        case ':': t.kind = Tok::Colon; break;
        case '=': t.kind = Tok::Equals; break;
        default: t.kind = Tok::Bad; break;
      }
    }
    t.text = std::string(text_.substr(start, pos_ - start));
    t.span.column_end = t.span.column_start + (pos_ - start) - 1;
    if (t.span.column_end < t.span.column_start) t.span.column_end = t.span.column_start;
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  std::optional<Token> peeked_;
};

Term::VarIndex variable_index(std::string_view name) {
  if (name == "x") return 0;
  if (name == "y") return 1;
  if (name == "z") return 2;
  return static_cast<Term::VarIndex>(std::stoul(std::string(name.substr(1))));
}

class Parser {
 public:
  Parser(std::string_view text, ParseOptions opts) : lex_(text), opts_(opts) {}

  Lexer& lexer() { return lex_; }

  [[noreturn]] void error(const Token& at, std::string message,
                          std::vector<std::string> expected = {}) {
    if (!expected.empty()) {
      message += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) message += " or ";
        message += expected[i];
      }
      message += ", found " + describe(at) + ")";
    }
    throw ParseError(std::move(message), at.span, std::move(expected));
  }

  Token expect(Tok kind, std::string what) {
    Token t = lex_.next();
    if (t.kind != kind) error(t, "unexpected " + describe(t), {std::move(what)});
    return t;
  }

  void expect_keyword(std::string_view kw) {
    Token t = lex_.next();
    if (t.kind != Tok::Ident || t.text != kw) {
      error(t, "unexpected " + describe(t), {"'" + std::string(kw) + "'"});
    }
  }

  bool at_keyword(std::string_view kw) {
    const Token& t = lex_.peek();
    return t.kind == Tok::Ident && t.text == kw;
  }

  std::size_t number() {
    Token t = expect(Tok::Number, "a number");
    try {
      return std::stoul(t.text);
    } catch (const std::exception&) {
      error(t, "number out of range");
    }
  }

  Term term(const Signature& sig) {
    Term first = primary(sig);
    const Token& next = lex_.peek();
    if (next.kind != Tok::Op) return first;
    Token op = lex_.next();
    auto arity = sig.arity_of(op.text);
    if (!arity) error(op, "unknown symbol '" + op.text + "'");
    if (*arity != 2) {
      error(op, "arity mismatch: '" + op.text + "' has arity " + std::to_string(*arity) +
                    " and cannot be used infix");
    }
    Term second = primary(sig);
    if (lex_.peek().kind == Tok::Op) {
      error(lex_.peek(), "ambiguous infix chain; add parentheses");
    }
    return Term::app(op.text, {std::move(first), std::move(second)});
  }

  Equation equation(const Signature& sig) {
    Term lhs = term(sig);
    expect(Tok::Equals, "'='");
    Term rhs = term(sig);
    return {std::move(lhs), std::move(rhs)};
  }

  Substitution substitution(const Signature& sig) {
    Substitution s;
    expect(Tok::LBracket, "'['");
    if (lex_.peek().kind == Tok::RBracket) {
      lex_.next();
      return s;
    }
    while (true) {
      Token v = lex_.next();
      if (v.kind != Tok::Ident || !is_variable_name(v.text)) {
        error(v, "unexpected " + describe(v), {"a variable"});
      }
      auto index = variable_index(v.text);
      if (s.contains(index)) error(v, "variable bound twice in substitution");
      expect(Tok::Assign, "':='");
      s.set(index, term(sig));
      Token sep = lex_.next();
      if (sep.kind == Tok::RBracket) break;
      if (sep.kind != Tok::Comma) error(sep, "unexpected " + describe(sep), {"','", "']'"});
    }
    return s;
  }

  void expect_end() {
    const Token& t = lex_.peek();
    if (t.kind != Tok::End) error(t, "unexpected " + describe(t), {"end of input"});
  }

 private:
  Term application(const Token& head, const Signature& sig) {
    std::optional<std::size_t> arity = sig.arity_of(head.text);
    if (!arity) error(head, "unknown symbol '" + head.text + "'");
    std::vector<Term> args;
    if (lex_.peek().kind == Tok::LParen) {
      lex_.next();
      if (lex_.peek().kind != Tok::RParen) {
        while (true) {
          args.push_back(term(sig));
          Token sep = lex_.next();
          if (sep.kind == Tok::RParen) break;
          if (sep.kind != Tok::Comma) error(sep, "unexpected " + describe(sep), {"','", "')'"});
        }
      } else {
        lex_.next();
      }
    }
    if (args.size() != *arity) {
      error(head, "arity mismatch: '" + head.text + "' expects " + std::to_string(*arity) +
                      " arguments, got " + std::to_string(args.size()));
    }
    return Term::app(head.text, std::move(args));
  }

  Term primary(const Signature& sig) {
    Token t = lex_.next();
    switch (t.kind) {
      case Tok::LParen: {
        Term inner = term(sig);
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ident:
        if (is_variable_name(t.text)) return Term::var(variable_index(t.text));
        return application(t, sig);
      case Tok::Op:
        if (lex_.peek().kind != Tok::LParen) {
          error(t, "operator '" + t.text + "' must be written infix or applied with '('");
        }
        return application(t, sig);
      case Tok::Reserved:
        if (!opts_.allow_reserved) {
          error(t, "names starting with '@' are reserved for fresh constants");
        }
        return Term::constant(t.text);
      default:
        error(t, "unexpected " + describe(t), {"a term"});
    }
  }

  Lexer lex_;
  ParseOptions opts_;
};

const std::vector<std::string_view> kTheoryKeywords = {"theory", "sig", "axiom"};

std::string table_text(const OperationTable& table, std::size_t size) {
  // Nested lists, one level per argument.
  std::string out;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t level, std::size_t base) {
    if (level == table.arity) {
      out += std::to_string(table.values[base]);
      return;
    }
    out += '[';
    for (std::size_t i = 0; i < size; ++i) {
      if (i) out += ", ";
      rec(level + 1, base * size + i);
    }
    out += ']';
  };
  rec(0, 0);
  return out;
}

}  // namespace

Theory parse_theory(std::string_view text) {
  Parser p(text, {});
  Theory t;
  p.expect_keyword("theory");
  Token name = p.lexer().word();
  if (name.kind != Tok::Ident) p.error(name, "missing theory name", {"a name"});
  t.name = name.text;

  std::vector<std::pair<Token, Equation>> pending;
  while (p.lexer().peek().kind != Tok::End) {
    Token kw = p.lexer().next();
    if (kw.kind == Tok::Ident && kw.text == "sig") {
      while (true) {
        const Token& head = p.lexer().peek();
        bool decl = head.kind == Tok::Op || head.kind == Tok::Reserved ||
                    (head.kind == Tok::Ident &&
                     std::find(kTheoryKeywords.begin(), kTheoryKeywords.end(), head.text) ==
                         kTheoryKeywords.end());
        if (!decl) break;
        Token sym = p.lexer().next();
        if (sym.kind == Tok::Reserved) {
          p.error(sym, "names starting with '@' are reserved for fresh constants");
        }
        p.expect(Tok::Colon, "':'");
        std::size_t arity = p.number();
        p.expect(Tok::Semi, "';'");
        try {
          t.signature.add(sym.text, arity);
        } catch (const std::invalid_argument& e) {
          p.error(sym, e.what());
        }
      }
    } else if (kw.kind == Tok::Ident && kw.text == "axiom") {
      Token label = p.lexer().next();
      if (label.kind != Tok::Ident) p.error(label, "unexpected " + describe(label), {"a label"});
      if (t.find_axiom(label.text)) p.error(label, "duplicate axiom label '" + label.text + "'");
      p.expect(Tok::Colon, "':'");
      Equation eq = p.equation(t.signature);
      p.expect(Tok::Semi, "';'");
      t.axioms.push_back({label.text, std::move(eq)});
    } else {
      p.error(kw, "unexpected " + describe(kw), {"'sig'", "'axiom'"});
    }
  }
  return t;
}

std::string print_theory(const Theory& t) {
  std::string out = "theory " + t.name + "\n";
  if (!t.signature.symbols().empty()) {
    out += "sig";
    for (const auto& s : t.signature.symbols()) {
      out += " " + s.name + " : " + std::to_string(s.arity) + ";";
    }
    out += "\n";
  }
  for (const auto& a : t.axioms) {
    out += "axiom " + a.label + ": " + to_string(a.equation) + ";\n";
  }
  return out;
}

Term parse_term(std::string_view text, const Signature& sig, ParseOptions opts) {
  Parser p(text, opts);
  Term t = p.term(sig);
  p.expect_end();
  return t;
}

Equation parse_equation(std::string_view text, const Signature& sig, ParseOptions opts) {
  Parser p(text, opts);
  Equation eq = p.equation(sig);
  p.expect_end();
  return eq;
}

Substitution parse_substitution(std::string_view text, const Signature& sig,
                                ParseOptions opts) {
  Parser p(text, opts);
  Substitution s = p.substitution(sig);
  p.expect_end();
  return s;
}

Model parse_model(std::string_view text, const Signature& sig) {
  Parser p(text, {});
  p.expect_keyword("model");
  Token name = p.lexer().word();
  if (name.kind != Tok::Ident) p.error(name, "missing model name", {"a name"});
  p.expect_keyword("over");
  Token theory = p.lexer().word();
  if (theory.kind != Tok::Ident) p.error(theory, "missing theory name", {"a name"});
  p.expect_keyword("size");
  Token size_tok = p.lexer().peek();
  std::size_t size = p.number();
  if (size == 0 || size > 255) p.error(size_tok, "model size must be between 1 and 255");

  Model m(sig, size);
  m.name = name.text;
  m.theory_name = theory.text;
  std::vector<bool> seen(sig.size(), false);

  while (p.lexer().peek().kind != Tok::End) {
    Token kw = p.lexer().next();
    bool is_const = kw.kind == Tok::Ident && kw.text == "const";
    bool is_table = kw.kind == Tok::Ident && kw.text == "table";
    if (!is_const && !is_table) p.error(kw, "unexpected " + describe(kw), {"'const'", "'table'"});
    Token sym = p.lexer().next();
    if (sym.kind != Tok::Ident && sym.kind != Tok::Op) {
      p.error(sym, "unexpected " + describe(sym), {"a symbol"});
    }
    auto index = sig.index_of(sym.text);
    if (!index) p.error(sym, "unknown symbol '" + sym.text + "'");
    if (seen[*index]) p.error(sym, "symbol '" + sym.text + "' defined twice");
    seen[*index] = true;
    std::size_t arity = sig.symbols()[*index].arity;
    if (is_const != (arity == 0)) {
      p.error(sym, is_const ? "'const' requires a constant symbol"
                            : "'table' requires a symbol of positive arity");
    }
    p.expect(Tok::Equals, "'='");
    std::vector<Element> values;
    if (is_const) {
      Token v = p.lexer().peek();
      std::size_t value = p.number();
      if (value >= size) p.error(v, "element out of range");
      values.push_back(static_cast<Element>(value));
    } else {
      std::function<void(std::size_t)> rec = [&](std::size_t level) {
        if (level == arity) {
          Token v = p.lexer().peek();
          std::size_t value = p.number();
          if (value >= size) p.error(v, "element out of range");
          values.push_back(static_cast<Element>(value));
          return;
        }
        p.expect(Tok::LBracket, "'['");
        for (std::size_t i = 0; i < size; ++i) {
          if (i) p.expect(Tok::Comma, "','");
          rec(level + 1);
        }
        p.expect(Tok::RBracket, "']'");
      };
      rec(0);
    }
    p.expect(Tok::Semi, "';'");
    m.mutable_table(*index).values = std::move(values);
  }
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (!seen[i]) {
      Token end = p.lexer().peek();
      p.error(end, "missing table for symbol '" + sig.symbols()[i].name + "'");
    }
  }
  return m;
}

std::string print_model(const Model& m) {
  std::string out = "model " + (m.name.empty() ? std::string("M") : m.name) + " over " +
                    (m.theory_name.empty() ? std::string("T") : m.theory_name) + " size " +
                    std::to_string(m.size()) + "\n";
  const auto& syms = m.signature().symbols();
  for (std::size_t i = 0; i < syms.size(); ++i) {
    if (syms[i].arity == 0) {
      out += "const " + syms[i].name + " = " + std::to_string(m.table(i).values[0]) + ";\n";
    } else {
      out += "table " + syms[i].name + " = " + table_text(m.table(i), m.size()) + ";\n";
    }
  }
  return out;
}

Proof parse_proof(std::string_view text, const Signature& sig) {
  Parser p(text, {.allow_reserved = true});
  Proof proof;
  p.expect_keyword("proof");
  Token name = p.lexer().word();
  if (name.kind != Tok::Ident) p.error(name, "missing proof name", {"a name"});
  proof.name = name.text;
  p.expect_keyword("over");
  Token theory = p.lexer().word();
  if (theory.kind != Tok::Ident) p.error(theory, "missing theory name", {"a name"});
  proof.theory_name = theory.text;

  while (p.at_keyword("premise")) {
    p.lexer().next();
    Token label = p.lexer().next();
    if (label.kind != Tok::Ident) p.error(label, "unexpected " + describe(label), {"a label"});
    p.expect(Tok::Colon, "':'");
    Equation eq = p.equation(sig);
    p.expect(Tok::Semi, "';'");
    proof.premises.push_back({label.text, std::move(eq)});
  }

  auto line_ref = [&]() {
    Token t = p.lexer().peek();
    std::size_t n = p.number();
    if (n == 0 || n > proof.lines.size()) {
      p.error(t, "reference to line " + std::to_string(n) + " which is not earlier");
    }
    return n;
  };

  while (p.lexer().peek().kind != Tok::End) {
    Token num = p.lexer().peek();
    std::size_t n = p.number();
    if (n != proof.lines.size() + 1) {
      p.error(num, "expected line number " + std::to_string(proof.lines.size() + 1));
    }
    p.expect(Tok::Colon, "':'");
    Equation eq = p.equation(sig);
    p.expect_keyword("by");
    Token rule = p.lexer().next();
    Justification by;
    if (rule.kind != Tok::Ident) {
      p.error(rule, "unexpected " + describe(rule), {"a rule name"});
    } else if (rule.text == "axiom") {
      Token label = p.lexer().next();
      if (label.kind != Tok::Ident) p.error(label, "unexpected " + describe(label), {"a label"});
      by = AxiomRule{label.text, p.substitution(sig)};
    } else if (rule.text == "refl") {
      by = ReflRule{};
    } else if (rule.text == "sym") {
      by = SymRule{line_ref()};
    } else if (rule.text == "trans") {
      std::size_t a = line_ref();
      std::size_t b = line_ref();
      by = TransRule{a, b};
    } else if (rule.text == "subst") {
      SubstRule s;
      s.template_line = line_ref();
      p.expect(Tok::LBracket, "'['");
      if (p.lexer().peek().kind == Tok::RBracket) {
        p.lexer().next();
      } else {
        while (true) {
          s.arg_lines.push_back(line_ref());
          Token sep = p.lexer().next();
          if (sep.kind == Tok::RBracket) break;
          if (sep.kind != Tok::Comma) p.error(sep, "unexpected " + describe(sep), {"','", "']'"});
        }
      }
      s.subst = p.substitution(sig);
      by = std::move(s);
    } else {
      p.error(rule, "unknown rule '" + rule.text + "'",
              {"'axiom'", "'refl'", "'sym'", "'trans'", "'subst'"});
    }
    p.expect(Tok::Semi, "';'");
    proof.lines.push_back({std::move(eq), std::move(by)});
  }
  return proof;
}

std::string print_proof(const Proof& p) {
  std::ostringstream out;
  out << "proof " << (p.name.empty() ? "P" : p.name) << " over "
      << (p.theory_name.empty() ? "T" : p.theory_name) << "\n";
  for (const auto& prem : p.premises) {
    out << "premise " << prem.label << ": " << to_string(prem.equation) << ";\n";
  }
  for (std::size_t i = 0; i < p.lines.size(); ++i) {
    const auto& line = p.lines[i];
    out << (i + 1) << ": " << to_string(line.equation) << " by ";
    std::visit(
        [&](const auto& r) {
          using R = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<R, AxiomRule>) {
            out << "axiom " << r.label << " " << to_string(r.subst);
          } else if constexpr (std::is_same_v<R, ReflRule>) {
            out << "refl";
          } else if constexpr (std::is_same_v<R, SymRule>) {
            out << "sym " << r.line;
          } else if constexpr (std::is_same_v<R, TransRule>) {
            out << "trans " << r.first << " " << r.second;
          } else {
            out << "subst " << r.template_line << " [";
            for (std::size_t k = 0; k < r.arg_lines.size(); ++k) {
              if (k) out << ", ";
              out << r.arg_lines[k];
            }
            out << "] " << to_string(r.subst);
          }
        },
        line.by);
    out << ";\n";
  }
  return out.str();
}

}  // namespace eqa
