#include <cctype>
#include <cstdio>
#include <vector>

#include "mproj/smt.hpp"

namespace mproj {

std::string NameTable::base_name(const VarRef& v) {
  std::string out = v.kind == VarKind::Pos ? "p_" : "w_";
  for (unsigned char c : v.symbol.to_string()) {
    if (std::isalnum(c)) {
      out += static_cast<char>(c);
    } else {
      char buf[8];
      std::snprintf(buf, sizeof buf, "_x%02x", c);
      out += buf;
    }
  }
  return out + "_" + std::to_string(v.index);
}

const std::string& NameTable::intern(const VarRef& v) {
  if (auto it = by_var_.find(v); it != by_var_.end()) return it->second;
  const std::string base = base_name(v);
  std::string name = base;
  for (int k = 1; by_name_.contains(name); ++k) name = "|" + base + "#" + std::to_string(k) + "|";
  by_name_.emplace(name, v);
  return by_var_.emplace(v, name).first->second;
}

std::optional<VarRef> NameTable::lookup(std::string_view name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end() && !name.empty() && name.front() != '|')
    it = by_name_.find("|" + std::string(name) + "|");
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

namespace {

void emit(const FormulaNode& n, NameTable& names, std::string& out) {
  auto list = [&](const char* head) {
    out += '(';
    out += head;
    for (const auto& k : n.kids) {
      out += ' ';
      emit(*k, names, out);
    }
    out += ')';
  };
  switch (n.op) {
    case Op::Lit:
      out += n.value < 0 ? "(- " + std::to_string(-n.value) + ")" : std::to_string(n.value);
      return;
    case Op::Wt:
    case Op::Pos:
      out += names.intern(*n.var);
      return;
    case Op::Ite:
      return list("ite");
    case Op::Sum:
      return list("+");
    case Op::Prod:
      return list("*");
    case Op::True:
      out += "true";
      return;
    case Op::False:
      out += "false";
      return;
    case Op::Not:
      return list("not");
    case Op::And:
      return list("and");
    case Op::Or:
      return list("or");
    case Op::Implies:
      return list("=>");
    case Op::Ge:
      return list(">=");
    case Op::Eq:
      return list("=");
    case Op::Gt:
      return list(">");
  }
}

}  // namespace

SmtScript to_smtlib(const Formula& formula) {
  SmtScript script;
  for (const auto& v : variables(formula)) script.names.intern(v);

  std::string body;
  emit(*formula.node(), script.names, body);

  std::map<std::string, VarRef> ordered;
  for (const auto& [v, name] : script.names.names()) ordered.emplace(name, v);

  std::string& out = script.text;
  out = is_linear(formula) ? "(set-logic QF_LIA)\n" : "(set-logic QF_NIA)\n";
  for (const auto& [name, v] : ordered)
    out += "(declare-fun " + name + " () " + (v.kind == VarKind::Pos ? "Bool" : "Int") + ")\n";
  out += "(assert " + body + ")\n(check-sat)\n(get-model)\n";
  return script;
}

SExprError::SExprError(std::size_t offset, const std::string& message)
    : std::runtime_error("offset " + std::to_string(offset) + ": " + message), offset_(offset) {}

namespace {

struct SExpr {
  std::string atom;
  std::vector<SExpr> list;
  bool is_list = false;
  std::size_t offset = 0;
};

class SExprReader {
 public:
  explicit SExprReader(std::string_view text) : text_(text) {}

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

  SExpr read() {
    skip();
    if (pos_ >= text_.size()) throw SExprError(pos_, "unexpected end of input");
    SExpr e;
    e.offset = pos_;
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      e.is_list = true;
      while (true) {
        skip();
        if (pos_ >= text_.size()) throw SExprError(e.offset, "unbalanced '('");
        if (text_[pos_] == ')') {
          ++pos_;
          return e;
        }
        e.list.push_back(read());
      }
    }
    if (c == ')') throw SExprError(pos_, "unexpected ')'");
    if (c == '|' || c == '"') {
      const std::size_t end = text_.find(c, pos_ + 1);
      if (end == std::string_view::npos) throw SExprError(pos_, "unterminated quoted token");
      e.atom = std::string(text_.substr(pos_, end - pos_ + 1));
      pos_ = end + 1;
      return e;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != ';')
      ++pos_;
    e.atom = std::string(text_.substr(start, pos_ - start));
    return e;
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::int64_t read_value(const SExpr& e) {
  if (!e.is_list) {
    if (e.atom == "true") return 1;
    if (e.atom == "false") return 0;
    try {
      std::size_t used = 0;
      const auto v = std::stoll(e.atom, &used);
      if (used == e.atom.size()) return v;
    } catch (const std::exception&) {
    }
    throw SExprError(e.offset, "unsupported value '" + e.atom + "'");
  }
  if (e.list.size() == 2 && !e.list[0].is_list && e.list[0].atom == "-") return -read_value(e.list[1]);
  throw SExprError(e.offset, "unsupported value expression");
}

void read_definitions(const SExpr& e, const NameTable& names, Model& model) {
  if (!e.is_list) throw SExprError(e.offset, "expected a list");
  if (!e.list.empty() && !e.list[0].is_list && e.list[0].atom == "define-fun") {
    if (e.list.size() != 5 || e.list[1].is_list)
      throw SExprError(e.offset, "malformed define-fun");
    if (!e.list[2].is_list || !e.list[2].list.empty()) return;  // function with arguments
    if (auto v = names.lookup(e.list[1].atom)) model.values[*v] = read_value(e.list[4]);
    return;
  }
  std::size_t start = 0;
  if (!e.list.empty() && !e.list[0].is_list && e.list[0].atom == "model") start = 1;
  for (std::size_t i = start; i < e.list.size(); ++i) read_definitions(e.list[i], names, model);
}

}  // namespace

Model parse_model(std::string_view text, const NameTable& names) {
  Model model;
  for (const auto& [v, _] : names.names()) model.values[v] = 0;
  SExprReader reader(text);
  while (!reader.at_end()) read_definitions(reader.read(), names, model);
  return model;
}

std::string to_string(SolveResult::Status s) {
  switch (s) {
    case SolveResult::Status::Sat:
      return "sat";
    case SolveResult::Status::Unsat:
      return "unsat";
    case SolveResult::Status::Unknown:
      return "unknown";
    case SolveResult::Status::TimedOut:
      return "timeout";
  }
  return "unknown";
}

}  // namespace mproj
