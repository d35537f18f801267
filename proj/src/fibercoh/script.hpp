#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fibercoh/error.hpp"
#include "fibercoh/expr.hpp"

namespace fibercoh {

// Degree literal: `3` or `(1,-2)`.
struct DegreeLit {
  std::vector<std::int64_t> c;
  bool operator==(const DegreeLit&) const = default;
};

struct VarDecl {
  std::string name;
  DegreeLit degree;
  bool operator==(const VarDecl&) const = default;
};

struct RingDecl {
  std::string name;
  std::string base;  // QQ | GF | poly | quotient
  std::uint64_t characteristic = 0;
  std::vector<std::string> base_vars;
  std::vector<Expr> base_ideal;
  std::vector<VarDecl> vars, vars2;
  std::optional<DegreeLit> psi;
  std::string order = "grevlex";
  bool operator==(const RingDecl&) const = default;
};

struct Decl {
  enum class Kind { Ideal, Module, Fiber };
  Kind kind = Kind::Ideal;
  std::string name;
  std::vector<Expr> gens;               // ideal
  std::vector<std::vector<Expr>> rows;  // module: rows of the relation matrix
  std::vector<DegreeLit> shifts;        // module: generator degrees
  bool generic = false;                 // fiber
  std::vector<std::pair<std::string, Expr>> values;
  std::string ext_var;
  std::optional<Expr> minpoly;
  bool operator==(const Decl&) const = default;
};

struct Quantity {
  int i = 0;
  DegreeLit degree;
  bool operator==(const Quantity&) const = default;
};

struct Command {
  enum class Kind { LocalCoh, Loci, Specialize, RatMap, Invariants, Harness, Betti };
  Kind kind = Kind::LocalCoh;
  std::string target;
  std::string fiber;
  std::optional<std::pair<DegreeLit, DegreeLit>> window;
  std::string route;  // empty = automatic
  unsigned power = 1;
  std::vector<Expr> forms;
  std::vector<Quantity> quantities;
  std::string locus = "duality";
  std::optional<std::int64_t> grid, random, range;
  bool operator==(const Command&) const = default;
};

const char* command_name(Command::Kind k);

struct SessionScript {
  RingDecl ring;
  std::vector<Decl> decls;
  std::vector<Command> commands;
  std::vector<SourceLocation> command_locations;  // not part of equality

  const Decl* find(const std::string& name) const;
  bool operator==(const SessionScript& o) const {
    return ring == o.ring && decls == o.decls && commands == o.commands;
  }
};

// Error with the location of the offending token.
class ScriptError : public Error {
 public:
  ScriptError(ErrorCode code, SourceLocation loc, const std::string& message)
      : Error(code, "line " + std::to_string(loc.line) + ", column " + std::to_string(loc.column) + ": " + message),
        loc_(loc) {}
  const SourceLocation& location() const { return loc_; }

 private:
  SourceLocation loc_;
};

SessionScript parse_script(std::string_view text);
std::string format_script(const SessionScript& s);
std::string format_command(const Command& c);

}  // namespace fibercoh
