#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mproj/term.hpp"

namespace mproj {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Arity, VariableLhs, FreeRhsVariable, Unsupported };

  ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& message);

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

// Legacy TPDB format: (VAR ...) (RULES l -> r ...) with (COMMENT ...) ignored.
// Identifiers listed under VAR are variables; everything else is a function
// symbol whose arity is inferred from its uses. Constants may be written `c`
// or `c()`.
TRS parse_trs(std::string_view text);

// Parses a single term as printed by Term::to_string, e.g. "QUOT#(s(x),0)".
// Names in `variables` are variables; a trailing '#' marks a symbol.
// Throws ParseError.
Term parse_term(std::string_view text, const std::set<std::string>& variables);

// Prints a TRS back in the same format; parse_trs(to_tpdb(trs)) reproduces it.
std::string to_tpdb(const TRS& trs);

}  // namespace mproj
