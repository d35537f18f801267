#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fibercoh/loci.hpp"
#include "fibercoh/script.hpp"

namespace fibercoh {

struct RunOptions {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  int window_slack = 1;
  unsigned power_cutoff = 0;  // 0 selects the per-source default
  bool csv = false;
  std::string out_dir;        // empty: keep results in memory only
};

struct CommandResult {
  std::string file;  // NN_command.json
  std::string json;
  std::string csv;   // empty unless requested and available
  bool ok = true;
};

struct RunResult {
  int exit_code = 0;
  std::vector<CommandResult> results;
};

// A parsed script bound to its ring and declared objects.
class Session {
 public:
  explicit Session(SessionScript script);

  const SessionScript& script() const { return script_; }
  const RingPtr& ring() const { return ring_; }

  ModulePresentation module(const std::string& name) const;
  std::vector<Poly> ideal(const std::string& name) const;
  FiberPoint fiber(const std::string& name) const;

  RunResult run(const RunOptions& opts) const;

 private:
  SessionScript script_;
  RingPtr ring_;
  std::map<std::string, ModulePresentation> modules_;
  std::map<std::string, std::vector<Poly>> ideals_;
  std::map<std::string, FiberPoint> fibers_;
};

RingPtr build_ring(const RingDecl& decl);

}  // namespace fibercoh
