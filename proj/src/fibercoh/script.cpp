#include "fibercoh/script.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace fibercoh {

namespace {

class ScriptParser {
 public:
  explicit ScriptParser(std::string_view text) : text_(text) {}

  SessionScript run() {
    SessionScript s;
    skip();
    if (!at_word("ring")) error("a script starts with a ring declaration");
    s.ring = ring_decl();
    declare_ring(s.ring);
    for (;;) {
      skip();
      if (pos_ >= text_.size()) break;
      std::size_t start = pos_;
      std::string kw = ident("a declaration or 'cmd'");
      if (kw == "ideal") {
        s.decls.push_back(ideal_decl());
      } else if (kw == "module") {
        s.decls.push_back(module_decl());
      } else if (kw == "fiber") {
        s.decls.push_back(fiber_decl(s.ring));
      } else if (kw == "cmd") {
        s.command_locations.push_back(locate(text_, start));
        s.commands.push_back(command(s));
      } else if (kw == "ring") {
        error_at(start, "only one ring per script");
      } else {
        error_at(start, "unknown keyword '" + kw + "'");
      }
    }
    return s;
  }

 private:
  // Lexical helpers.
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
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }
  bool at_word(std::string_view w) {
    skip();
    if (text_.substr(pos_, w.size()) != w) return false;
    std::size_t e = pos_ + w.size();
    return e >= text_.size() || !(std::isalnum(static_cast<unsigned char>(text_[e])) || text_[e] == '_');
  }
  bool accept_word(std::string_view w) {
    if (!at_word(w)) return false;
    pos_ += w.size();
    return true;
  }
  void expect_word(std::string_view w) {
    if (!accept_word(w)) error("expected '" + std::string(w) + "'");
  }
  std::string ident(const std::string& what = "a name") {
    skip();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
    }
    if (start == pos_) error("expected " + what);
    return std::string(text_.substr(start, pos_ - start));
  }
  std::int64_t integer() {
    skip();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (digits == pos_) {
      pos_ = start;
      error("expected an integer");
    }
    try {
      return std::stoll(std::string(text_.substr(start, pos_ - start)));
    } catch (const std::exception&) {
      pos_ = start;
      error("integer out of range");
    }
  }
  Expr expr() {
    skip();
    std::size_t start = pos_;
    try {
      return parse_expr(text_, pos_);
    } catch (const ScriptError&) {
      throw;
    } catch (const Error& e) {
      (void)e;
      error_at(std::max(start, pos_), "malformed polynomial expression");
    }
  }
  Expr checked_expr(const std::set<std::string>& allowed) {
    skip();
    std::size_t start = pos_;
    Expr e = expr();
    std::vector<std::string> names;
    collect_names(e, names);
    for (const auto& n : names)
      if (!allowed.count(n)) throw ScriptError(ErrorCode::UndeclaredName, locate(text_, start), "unknown variable '" + n + "'");
    return e;
  }
  DegreeLit degree() {
    DegreeLit d;
    if (accept('(')) {
      d.c.push_back(integer());
      expect(',');
      d.c.push_back(integer());
      expect(')');
    } else {
      d.c.push_back(integer());
    }
    return d;
  }
  [[noreturn]] void error(const std::string& what) { error_at(pos_, what); }
  [[noreturn]] void error_at(std::size_t offset, const std::string& what) {
    throw ScriptError(ErrorCode::ParseError, locate(text_, offset), what);
  }

  // Declarations.
  std::vector<VarDecl> var_list() {
    std::vector<VarDecl> out;
    for (;;) {
      skip();
      if (at_word("vars2") || at_word("psi") || at_word("order") || peek() == ';' || peek() == '\0') break;
      VarDecl v;
      v.name = ident("a variable name");
      expect(':');
      v.degree = degree();
      out.push_back(std::move(v));
      accept(',');
    }
    if (out.empty()) error("expected a variable declaration");
    return out;
  }

  std::uint64_t field() {
    if (accept_word("QQ")) return 0;
    if (accept_word("GF")) {
      expect('(');
      std::int64_t p = integer();
      if (p < 2) error("GF(p) needs a prime p");
      expect(')');
      return static_cast<std::uint64_t>(p);
    }
    error("expected QQ or GF(p)");
  }

  void poly_base(RingDecl& r) {
    expect('(');
    r.characteristic = field();
    while (accept(',')) r.base_vars.push_back(ident("a parameter name"));
    expect(')');
    if (r.base_vars.empty()) error("poly(...) needs at least one parameter");
  }

  RingDecl ring_decl() {
    RingDecl r;
    expect_word("ring");
    r.name = ident("a ring name");
    expect_word("base");
    if (accept_word("QQ")) {
      r.base = "QQ";
    } else if (at_word("GF")) {
      r.base = "GF";
      r.characteristic = field();
    } else if (accept_word("poly")) {
      r.base = "poly";
      poly_base(r);
    } else if (accept_word("quotient")) {
      r.base = "quotient";
      expect('(');
      expect_word("poly");
      poly_base(r);
      expect(',');
      expect_word("ideal");
      expect('(');
      std::set<std::string> allowed(r.base_vars.begin(), r.base_vars.end());
      r.base_ideal.push_back(checked_expr(allowed));
      while (accept(',')) r.base_ideal.push_back(checked_expr(allowed));
      expect(')');
      expect(')');
    } else {
      error("expected a base: QQ, GF(p), poly(...) or quotient(...)");
    }
    expect_word("vars");
    r.vars = var_list();
    if (accept_word("vars2")) r.vars2 = var_list();
    if (accept_word("psi")) r.psi = degree();
    if (accept_word("order")) {
      std::size_t start = pos_;
      r.order = ident("an order");
      if (r.order != "grevlex" && r.order != "lex" && r.order != "block") error_at(start, "unknown order '" + r.order + "'");
    }
    expect(';');
    return r;
  }

  void declare_ring(const RingDecl& r) {
    for (const auto& z : r.base_vars) vars_.insert(z);
    for (const auto& v : r.vars) vars_.insert(v.name);
    for (const auto& v : r.vars2) vars_.insert(v.name);
    base_vars_ = std::set<std::string>(r.base_vars.begin(), r.base_vars.end());
  }

  void declare(const std::string& name, std::size_t at, Decl::Kind kind) {
    if (names_.count(name) || vars_.count(name)) error_at(at, "name '" + name + "' is already declared");
    names_[name] = kind;
  }

  Decl ideal_decl() {
    Decl d;
    d.kind = Decl::Kind::Ideal;
    skip();
    std::size_t at = pos_;
    d.name = ident();
    expect('=');
    expect('(');
    d.gens.push_back(checked_expr(vars_));
    while (accept(',')) d.gens.push_back(checked_expr(vars_));
    expect(')');
    expect(';');
    declare(d.name, at, d.kind);
    return d;
  }

  Decl module_decl() {
    Decl d;
    d.kind = Decl::Kind::Module;
    skip();
    std::size_t at = pos_;
    d.name = ident();
    expect('=');
    expect_word("coker");
    expect('[');
    if (!accept(']')) {
      for (;;) {
        std::vector<Expr> row;
        row.push_back(checked_expr(vars_));
        while (accept(',')) row.push_back(checked_expr(vars_));
        d.rows.push_back(std::move(row));
        if (accept(']')) break;
        expect(';');
      }
    }
    std::size_t shifts_at = pos_;
    expect_word("shifts");
    expect('(');
    d.shifts.push_back(degree());
    while (accept(',')) d.shifts.push_back(degree());
    expect(')');
    expect(';');
    if (!d.rows.empty()) {
      if (d.rows.size() != d.shifts.size()) error_at(shifts_at, "number of shifts must match the number of rows");
      for (const auto& row : d.rows)
        if (row.size() != d.rows[0].size()) error_at(shifts_at, "matrix rows must have equal length");
    }
    declare(d.name, at, d.kind);
    return d;
  }

  Decl fiber_decl(const RingDecl& r) {
    Decl d;
    d.kind = Decl::Kind::Fiber;
    skip();
    std::size_t at = pos_;
    d.name = ident();
    expect('=');
    if (accept_word("generic")) {
      d.generic = true;
      expect(';');
      declare(d.name, at, d.kind);
      return d;
    }
    expect_word("point");
    expect('(');
    std::vector<std::pair<std::string, std::size_t>> raw;
    std::vector<std::size_t> value_pos;
    if (!accept(')')) {
      for (;;) {
        skip();
        std::size_t vat = pos_;
        std::string z = ident("a parameter name");
        if (!base_vars_.count(z)) throw ScriptError(ErrorCode::UndeclaredName, locate(text_, vat), "unknown parameter '" + z + "'");
        expect('=');
        skip();
        value_pos.push_back(pos_);
        d.values.emplace_back(z, expr());
        if (accept(')')) break;
        expect(',');
      }
    }
    std::set<std::string> allowed;
    if (accept_word("over")) {
      d.ext_var = ident("an extension variable");
      expect(':');
      d.minpoly = checked_expr({d.ext_var});
      allowed.insert(d.ext_var);
    }
    for (std::size_t i = 0; i < d.values.size(); ++i) {
      std::vector<std::string> names;
      collect_names(d.values[i].second, names);
      for (const auto& n : names)
        if (!allowed.count(n))
          throw ScriptError(ErrorCode::UndeclaredName, locate(text_, value_pos[i]), "unknown name '" + n + "' in a point value");
    }
    std::set<std::string> given;
    for (const auto& [z, v] : d.values) {
      if (!given.insert(z).second) error_at(at, "parameter '" + z + "' assigned twice");
    }
    if (given.size() != r.base_vars.size()) error_at(at, "a point must assign every base parameter");
    expect(';');
    declare(d.name, at, d.kind);
    return d;
  }

  void require(const std::string& name, std::size_t at, std::initializer_list<Decl::Kind> kinds) {
    auto it = names_.find(name);
    if (it == names_.end()) throw ScriptError(ErrorCode::UndeclaredName, locate(text_, at), "undeclared name '" + name + "'");
    if (std::find(kinds.begin(), kinds.end(), it->second) == kinds.end())
      error_at(at, "'" + name + "' has the wrong kind here");
  }

  std::string target() {
    skip();
    std::size_t at = pos_;
    std::string n = ident();
    require(n, at, {Decl::Kind::Ideal, Decl::Kind::Module});
    return n;
  }

  std::string at_fiber() {
    expect_word("at");
    skip();
    std::size_t at = pos_;
    std::string n = ident("a fiber name");
    require(n, at, {Decl::Kind::Fiber});
    return n;
  }

  std::pair<DegreeLit, DegreeLit> window() {
    expect('[');
    DegreeLit lo = degree();
    expect(',');
    DegreeLit hi = degree();
    expect(']');
    return {lo, hi};
  }

  Command command(const SessionScript&) {
    Command c;
    skip();
    std::size_t at = pos_;
    std::string kind = ident("a command");
    if (kind == "localcoh") {
      c.kind = Command::Kind::LocalCoh;
      c.target = target();
      if (accept_word("window")) c.window = window();
      c.fiber = at_fiber();
      if (accept_word("route")) {
        std::size_t rat = pos_;
        c.route = ident("a route");
        if (c.route != "A" && c.route != "B" && c.route != "both") error_at(rat, "route must be A, B or both");
      }
    } else if (kind == "loci") {
      c.kind = Command::Kind::Loci;
      c.target = target();
    } else if (kind == "specialize") {
      c.kind = Command::Kind::Specialize;
      c.target = target();
      expect_word("power");
      std::int64_t k = integer();
      if (k < 1) error("power must be positive");
      c.power = static_cast<unsigned>(k);
      c.fiber = at_fiber();
      if (accept_word("window")) c.window = window();
    } else if (kind == "ratmap") {
      c.kind = Command::Kind::RatMap;
      expect('(');
      c.forms.push_back(checked_expr(vars_));
      while (accept(',')) c.forms.push_back(checked_expr(vars_));
      expect(')');
      c.fiber = at_fiber();
    } else if (kind == "invariants") {
      c.kind = Command::Kind::Invariants;
      c.target = target();
      c.fiber = at_fiber();
    } else if (kind == "betti") {
      c.kind = Command::Kind::Betti;
      c.target = target();
      c.fiber = at_fiber();
    } else if (kind == "harness") {
      c.kind = Command::Kind::Harness;
      c.target = target();
      expect_word("quantity");
      do {
        expect_word("h");
        expect('(');
        Quantity q;
        q.i = static_cast<int>(integer());
        expect(',');
        q.degree = degree();
        expect(')');
        c.quantities.push_back(std::move(q));
      } while (accept(','));
      for (;;) {
        if (accept_word("locus")) {
          std::size_t lat = pos_;
          c.locus = ident("a locus kind");
          if (c.locus != "duality" && c.locus != "none") error_at(lat, "locus must be duality or none");
        } else if (accept_word("grid")) {
          c.grid = integer();
        } else if (accept_word("random")) {
          c.random = integer();
        } else if (accept_word("range")) {
          c.range = integer();
        } else {
          break;
        }
      }
    } else {
      error_at(at, "unknown command '" + kind + "'");
    }
    expect(';');
    return c;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::set<std::string> vars_, base_vars_;
  std::map<std::string, Decl::Kind> names_;
};

std::string fmt_degree(const DegreeLit& d) {
  if (d.c.size() == 1) return std::to_string(d.c[0]);
  return "(" + std::to_string(d.c[0]) + "," + std::to_string(d.c[1]) + ")";
}

std::string fmt_exprs(const std::vector<Expr>& es) {
  std::string s;
  for (std::size_t i = 0; i < es.size(); ++i) s += (i ? ", " : "") + format_expr(es[i]);
  return s;
}

std::string fmt_field(std::uint64_t p) { return p == 0 ? "QQ" : "GF(" + std::to_string(p) + ")"; }

std::string fmt_vars(const std::vector<VarDecl>& vs) {
  std::string s;
  for (const auto& v : vs) s += " " + v.name + ":" + fmt_degree(v.degree);
  return s;
}

}  // namespace

const char* command_name(Command::Kind k) {
  switch (k) {
    case Command::Kind::LocalCoh: return "localcoh";
    case Command::Kind::Loci: return "loci";
    case Command::Kind::Specialize: return "specialize";
    case Command::Kind::RatMap: return "ratmap";
    case Command::Kind::Invariants: return "invariants";
    case Command::Kind::Harness: return "harness";
    case Command::Kind::Betti: return "betti";
  }
  return "";
}

const Decl* SessionScript::find(const std::string& name) const {
  for (const auto& d : decls)
    if (d.name == name) return &d;
  return nullptr;
}

SessionScript parse_script(std::string_view text) { return ScriptParser(text).run(); }

std::string format_command(const Command& c) {
  std::ostringstream os;
  os << "cmd " << command_name(c.kind);
  auto win = [&] {
    if (c.window) os << " window [" << fmt_degree(c.window->first) << ", " << fmt_degree(c.window->second) << "]";
  };
  switch (c.kind) {
    case Command::Kind::LocalCoh:
      os << " " << c.target;
      win();
      os << " at " << c.fiber;
      if (!c.route.empty()) os << " route " << c.route;
      break;
    case Command::Kind::Loci:
      os << " " << c.target;
      break;
    case Command::Kind::Specialize:
      os << " " << c.target << " power " << c.power << " at " << c.fiber;
      win();
      break;
    case Command::Kind::RatMap:
      os << " (" << fmt_exprs(c.forms) << ") at " << c.fiber;
      break;
    case Command::Kind::Invariants:
    case Command::Kind::Betti:
      os << " " << c.target << " at " << c.fiber;
      break;
    case Command::Kind::Harness:
      os << " " << c.target << " quantity ";
      for (std::size_t i = 0; i < c.quantities.size(); ++i)
        os << (i ? ", " : "") << "h(" << c.quantities[i].i << ", " << fmt_degree(c.quantities[i].degree) << ")";
      os << " locus " << c.locus;
      if (c.grid) os << " grid " << *c.grid;
      if (c.random) os << " random " << *c.random;
      if (c.range) os << " range " << *c.range;
      break;
  }
  os << ";";
  return os.str();
}

std::string format_script(const SessionScript& s) {
  std::ostringstream os;
  const RingDecl& r = s.ring;
  os << "ring " << r.name << " base ";
  std::string zs;
  for (const auto& z : r.base_vars) zs += ", " + z;
  if (r.base == "QQ" || r.base == "GF")
    os << fmt_field(r.characteristic);
  else if (r.base == "poly")
    os << "poly(" << fmt_field(r.characteristic) << zs << ")";
  else
    os << "quotient(poly(" << fmt_field(r.characteristic) << zs << "), ideal(" << fmt_exprs(r.base_ideal) << "))";
  os << " vars" << fmt_vars(r.vars);
  if (!r.vars2.empty()) os << " vars2" << fmt_vars(r.vars2);
  if (r.psi) os << " psi " << fmt_degree(*r.psi);
  os << " order " << r.order << ";\n";
  for (const auto& d : s.decls) {
    switch (d.kind) {
      case Decl::Kind::Ideal:
        os << "ideal " << d.name << " = (" << fmt_exprs(d.gens) << ");\n";
        break;
      case Decl::Kind::Module: {
        os << "module " << d.name << " = coker [";
        for (std::size_t i = 0; i < d.rows.size(); ++i) os << (i ? "; " : "") << fmt_exprs(d.rows[i]);
        os << "] shifts (";
        for (std::size_t i = 0; i < d.shifts.size(); ++i) os << (i ? ", " : "") << fmt_degree(d.shifts[i]);
        os << ");\n";
        break;
      }
      case Decl::Kind::Fiber:
        os << "fiber " << d.name << " = ";
        if (d.generic) {
          os << "generic;\n";
          break;
        }
        os << "point(";
        for (std::size_t i = 0; i < d.values.size(); ++i)
          os << (i ? ", " : "") << d.values[i].first << "=" << format_expr(d.values[i].second);
        os << ")";
        if (d.minpoly) os << " over " << d.ext_var << ": " << format_expr(*d.minpoly);
        os << ";\n";
        break;
    }
  }
  for (const auto& c : s.commands) os << format_command(c) << "\n";
  return os.str();
}

}  // namespace fibercoh
