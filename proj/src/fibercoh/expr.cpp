#include "fibercoh/expr.hpp"

#include <cctype>

#include "fibercoh/error.hpp"
#include "fibercoh/poly.hpp"
#include "fibercoh/poly_io.hpp"

namespace fibercoh {

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, std::size_t pos) : text_(text), pos_(pos) {}

  Expr sum() {
    skip();
    Expr lhs;
    if (peek() == '-') {
      ++pos_;
      Expr neg;
      neg.kind = Expr::Kind::Neg;
      neg.args.push_back(product());
      lhs = std::move(neg);
    } else {
      if (peek() == '+') ++pos_;
      lhs = product();
    }
    for (;;) {
      skip();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Expr node;
      node.kind = c == '+' ? Expr::Kind::Add : Expr::Kind::Sub;
      node.args.push_back(std::move(lhs));
      node.args.push_back(product());
      lhs = std::move(node);
    }
    return lhs;
  }

  std::size_t pos() const { return pos_; }

 private:
  Expr product() {
    Expr lhs = power();
    for (;;) {
      skip();
      if (peek() != '*') break;
      ++pos_;
      Expr node;
      node.kind = Expr::Kind::Mul;
      node.args.push_back(std::move(lhs));
      node.args.push_back(power());
      lhs = std::move(node);
    }
    return lhs;
  }

  Expr power() {
    Expr base = atom();
    skip();
    if (peek() == '^') {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (start == pos_) error("expected exponent");
      Expr node;
      node.kind = Expr::Kind::Pow;
      node.exponent = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
      node.args.push_back(std::move(base));
      return node;
    }
    return base;
  }

  Expr atom() {
    skip();
    char c = peek();
    if (c == '(') {
      ++pos_;
      Expr inner = sum();
      skip();
      if (peek() != ')') error("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '-') {
      ++pos_;
      Expr neg;
      neg.kind = Expr::Kind::Neg;
      neg.args.push_back(power());
      return neg;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      std::string num(text_.substr(start, pos_ - start));
      if (peek() == '/' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
        ++pos_;
        std::size_t s2 = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        num += "/" + std::string(text_.substr(s2, pos_ - s2));
      }
      Expr e;
      e.kind = Expr::Kind::Number;
      e.number = mpq_class(num);
      if (e.number.get_den() == 0) error("zero denominator");
      e.number.canonicalize();
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
      Expr e;
      e.kind = Expr::Kind::Name;
      e.name = std::string(text_.substr(start, pos_ - start));
      return e;
    }
    error("expected a number, a variable or '('");
  }

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  [[noreturn]] void error(const std::string& what) const {
    SourceLocation loc = locate(text_, pos_);
    fail(ErrorCode::ParseError, what + " at line " + std::to_string(loc.line) + ", column " +
                                    std::to_string(loc.column) + " (offset " + std::to_string(loc.offset) + ")");
  }

  std::string_view text_;
  std::size_t pos_;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Neg: return 2;
    case Expr::Kind::Mul: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

std::string wrap(const Expr& e, int min_prec) {
  std::string s = format_expr(e);
  return precedence(e) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

bool Expr::operator==(const Expr& o) const {
  return kind == o.kind && number == o.number && name == o.name && exponent == o.exponent && args == o.args;
}

Expr parse_expr(std::string_view text, std::size_t& pos) {
  ExprParser p(text, pos);
  Expr e = p.sum();
  pos = p.pos();
  return e;
}

std::string format_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number: return e.number.get_str();
    case Expr::Kind::Name: return e.name;
    case Expr::Kind::Neg: return "-" + wrap(e.args[0], 3);
    case Expr::Kind::Add: return format_expr(e.args[0]) + " + " + wrap(e.args[1], 2);
    case Expr::Kind::Sub: return format_expr(e.args[0]) + " - " + wrap(e.args[1], 2);
    case Expr::Kind::Mul: return wrap(e.args[0], 3) + "*" + wrap(e.args[1], 4);
    case Expr::Kind::Pow: return wrap(e.args[0], 5) + "^" + std::to_string(e.exponent);
  }
  return "";
}

Poly expr_to_poly(const Expr& e, const RingPtr& ring) {
  switch (e.kind) {
    case Expr::Kind::Number: return Poly::constant(ring, e.number);
    case Expr::Kind::Name: {
      auto idx = ring->index_of(e.name);
      if (!idx) fail(ErrorCode::UndeclaredName, "unknown variable '" + e.name + "'");
      return Poly::variable(ring, *idx);
    }
    case Expr::Kind::Neg: return -expr_to_poly(e.args[0], ring);
    case Expr::Kind::Add: return expr_to_poly(e.args[0], ring) + expr_to_poly(e.args[1], ring);
    case Expr::Kind::Sub: return expr_to_poly(e.args[0], ring) - expr_to_poly(e.args[1], ring);
    case Expr::Kind::Mul: return expr_to_poly(e.args[0], ring) * expr_to_poly(e.args[1], ring);
    case Expr::Kind::Pow: return expr_to_poly(e.args[0], ring).pow(e.exponent);
  }
  return Poly(ring);
}

void collect_names(const Expr& e, std::vector<std::string>& out) {
  if (e.kind == Expr::Kind::Name) out.push_back(e.name);
  for (const auto& a : e.args) collect_names(a, out);
}

SourceLocation locate(std::string_view text, std::size_t offset) {
  SourceLocation loc;
  loc.offset = offset;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else {
      ++loc.column;
    }
  }
  return loc;
}

Poly parse_poly(const RingPtr& ring, std::string_view text) {
  std::size_t pos = 0;
  Expr e = parse_expr(text, pos);
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) {
    SourceLocation loc = locate(text, pos);
    fail(ErrorCode::ParseError, "unexpected trailing input at column " + std::to_string(loc.column));
  }
  return expr_to_poly(e, ring);
}

}  // namespace fibercoh
