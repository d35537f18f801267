#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "fibercoh/ring.hpp"

namespace fibercoh {

class Poly;

// Polynomial expression tree as written in scripts: numbers, names, + - * ^ and
// parentheses. Kept separate from Poly so scripts can be pretty-printed.
struct Expr {
  enum class Kind { Number, Name, Neg, Add, Sub, Mul, Pow };
  Kind kind = Kind::Number;
  mpq_class number;
  std::string name;
  unsigned exponent = 0;
  std::vector<Expr> args;

  bool operator==(const Expr& o) const;
};

struct SourceLocation {
  std::size_t offset = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

// Parses an expression starting at `pos`; advances `pos` past it. Stops at the
// first character that cannot continue the expression.
Expr parse_expr(std::string_view text, std::size_t& pos);
std::string format_expr(const Expr& e);
Poly expr_to_poly(const Expr& e, const RingPtr& ring);
void collect_names(const Expr& e, std::vector<std::string>& out);

SourceLocation locate(std::string_view text, std::size_t offset);

}  // namespace fibercoh
