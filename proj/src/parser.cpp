#include "mproj/parser.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace mproj {

ParseError::ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column) {}

namespace {

using Kind = ParseError::Kind;

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '+' ||
         c == '*' || c == '/' || c == '.' || c == '!' || c == '-';
}

enum class Tok { LParen, RParen, Comma, Arrow, Ident, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

struct RawTerm {
  std::string name;
  std::vector<RawTerm> args;
  bool parens = false;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct RawRule {
  RawTerm lhs;
  RawTerm rhs;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    const std::size_t line = line_, col = col_;
    if (pos_ >= text_.size()) return {Tok::End, "", line, col};
    const char c = text_[pos_];
    if (c == '(') return single(Tok::LParen, line, col);
    if (c == ')') return single(Tok::RParen, line, col);
    if (c == ',') return single(Tok::Comma, line, col);
    if (starts_with("->=")) throw ParseError(Kind::Unsupported, line, col, "relative rules (->=) are not supported");
    if (starts_with("->")) {
      advance(2);
      return {Tok::Arrow, "->", line, col};
    }
    if (c == '|' || starts_with("=="))
      throw ParseError(Kind::Unsupported, line, col, "conditional rules are not supported");
    if (is_ident_char(c)) {
      std::string name;
      while (pos_ < text_.size() && is_ident_char(text_[pos_]) && !starts_with("->")) {
        name += text_[pos_];
        advance(1);
      }
      return {Tok::Ident, std::move(name), line, col};
    }
    throw ParseError(Kind::Syntax, line, col, std::string("unexpected character '") + c + "'");
  }

  // Skips the remainder of a parenthesized block whose opening '(' and
  // keyword were already consumed. Content is not tokenized.
  void skip_block(std::size_t line, std::size_t col) {
    int depth = 1;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      advance(1);
      if (c == '(') ++depth;
      if (c == ')' && --depth == 0) return;
    }
    throw ParseError(Kind::Syntax, line, col, "unterminated block");
  }

 private:
  bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  Token single(Tok kind, std::size_t line, std::size_t col) {
    std::string t(1, text_[pos_]);
    advance(1);
    return {kind, std::move(t), line, col};
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
      if (text_[pos_++] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance(1);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) { shift(); }

  TRS run() {
    while (cur_.kind != Tok::End) block();
    return resolve();
  }

 private:
  void shift() { cur_ = lex_.next(); }

  [[noreturn]] void fail(const Token& at, const std::string& msg) {
    throw ParseError(Kind::Syntax, at.line, at.column, msg);
  }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) fail(cur_, std::string("expected ") + what);
    shift();
  }

  void block() {
    const Token open = cur_;
    expect(Tok::LParen, "'('");
    if (cur_.kind != Tok::Ident) fail(cur_, "expected block keyword");
    const Token keyword = cur_;
    if (keyword.text == "COMMENT") {
      lex_.skip_block(open.line, open.column);
      shift();
      return;
    }
    shift();
    if (keyword.text == "VAR") {
      while (cur_.kind == Tok::Ident) {
        var_names_.emplace(cur_.text, std::make_pair(cur_.line, cur_.column));
        shift();
      }
      expect(Tok::RParen, "')' closing VAR");
    } else if (keyword.text == "RULES") {
      while (cur_.kind == Tok::Ident) {
        RawTerm lhs = term();
        expect(Tok::Arrow, "'->'");
        RawTerm rhs = term();
        if (cur_.kind == Tok::LParen || cur_.kind == Tok::Comma)
          fail(cur_, "unexpected token after rule");
        raw_rules_.push_back({std::move(lhs), std::move(rhs)});
      }
      expect(Tok::RParen, "')' closing RULES");
    } else if (keyword.text == "THEORY" || keyword.text == "STRATEGY") {
      throw ParseError(Kind::Unsupported, keyword.line, keyword.column,
                       keyword.text + " annotations are not supported");
    } else {
      fail(keyword, "unknown block '" + keyword.text + "'");
    }
  }

  RawTerm term() {
    if (cur_.kind != Tok::Ident) fail(cur_, "expected identifier");
    RawTerm t{cur_.text, {}, false, cur_.line, cur_.column};
    shift();
    if (cur_.kind != Tok::LParen) return t;
    t.parens = true;
    shift();
    if (cur_.kind == Tok::RParen) {
      shift();
      return t;
    }
    t.args.push_back(term());
    while (cur_.kind == Tok::Comma) {
      shift();
      t.args.push_back(term());
    }
    expect(Tok::RParen, "')' or ','");
    return t;
  }

  void infer_arities(const RawTerm& t) {
    if (var_names_.contains(t.name)) {
      if (t.parens)
        throw ParseError(Kind::Arity, t.line, t.column, "variable '" + t.name + "' applied to arguments");
      return;
    }
    auto [it, inserted] = arity_.emplace(t.name, t.args.size());
    if (!inserted && it->second != t.args.size())
      throw ParseError(Kind::Arity, t.line, t.column,
                       "symbol '" + t.name + "' used with arity " + std::to_string(t.args.size()) +
                           " and " + std::to_string(it->second));
    for (const auto& a : t.args) infer_arities(a);
  }

  Term build(const RawTerm& t) const {
    if (var_names_.contains(t.name)) return Term::var(t.name);
    std::vector<Term> args;
    args.reserve(t.args.size());
    for (const auto& a : t.args) args.push_back(build(a));
    return Term::app(Symbol{t.name, t.args.size(), false}, std::move(args));
  }

  TRS resolve() {
    for (const auto& r : raw_rules_) {
      infer_arities(r.lhs);
      infer_arities(r.rhs);
    }
    TRS trs;
    for (const auto& [name, _] : var_names_) trs.variables.insert(name);
    for (const auto& r : raw_rules_) {
      if (var_names_.contains(r.lhs.name))
        throw ParseError(Kind::VariableLhs, r.lhs.line, r.lhs.column,
                         "left-hand side is a variable");
      Rule rule{build(r.lhs), build(r.rhs)};
      const auto lvars = variables(rule.lhs);
      for (const auto& v : variables(rule.rhs))
        if (!lvars.contains(v))
          throw ParseError(Kind::FreeRhsVariable, r.rhs.line, r.rhs.column,
                           "variable '" + v + "' occurs only in the right-hand side");
      collect_symbols(rule.lhs, trs.signature);
      collect_symbols(rule.rhs, trs.signature);
      trs.rules.push_back(std::move(rule));
    }
    return trs;
  }

  Lexer lex_;
  Token cur_{Tok::End, "", 0, 0};
  std::map<std::string, std::pair<std::size_t, std::size_t>> var_names_;
  std::map<std::string, std::size_t> arity_;
  std::vector<RawRule> raw_rules_;
};

}  // namespace

TRS parse_trs(std::string_view text) { return Parser(text).run(); }

namespace {

class TermReader {
 public:
  TermReader(std::string_view text, const std::set<std::string>& vars) : text_(text), vars_(vars) {}

  Term run() {
    Term t = term();
    skip();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(Kind::Syntax, 1, pos_ + 1, msg);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Term term() {
    skip();
    std::string name;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) name += text_[pos_++];
    if (name.empty()) fail("expected identifier");
    const bool marked = pos_ < text_.size() && text_[pos_] == '#';
    if (marked) ++pos_;
    skip();
    std::vector<Term> args;
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      skip();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
      } else {
        while (true) {
          args.push_back(term());
          skip();
          if (pos_ < text_.size() && text_[pos_] == ',') {
            ++pos_;
            continue;
          }
          if (pos_ < text_.size() && text_[pos_] == ')') {
            ++pos_;
            break;
          }
          fail("expected ',' or ')'");
        }
      }
    } else if (!marked && vars_.contains(name)) {
      return Term::var(name);
    }
    const std::size_t arity = args.size();
    return Term::app(Symbol{std::move(name), arity, marked}, std::move(args));
  }

  std::string_view text_;
  const std::set<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text, const std::set<std::string>& variables) {
  return TermReader(text, variables).run();
}

std::string to_tpdb(const TRS& trs) {
  std::string out = "(VAR";
  for (const auto& v : trs.variables) out += " " + v;
  out += ")\n(RULES\n";
  for (const auto& r : trs.rules) out += "  " + r.to_string() + "\n";
  out += ")\n";
  return out;
}

}  // namespace mproj
