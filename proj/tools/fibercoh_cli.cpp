#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fibercoh/fibercoh.h"

namespace {

int report(int status) {
  std::cerr << "fibercoh: " << (*fc_last_error() ? fc_last_error() : fc_status_name(status)) << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fiberwise local cohomology and specialization engine"};
  std::string script_path, out_dir = "out";
  std::uint64_t seed = 0;
  unsigned threads = 1, power_cutoff = 0;
  int window_slack = 1;
  bool csv = false, format_only = false, quiet = false;
  app.add_option("--script", script_path, "Session script (- for stdin)")->required();
  app.add_option("--seed", seed, "Seed for every random choice");
  app.add_option("--out", out_dir, "Directory for NN_command.json results");
  app.add_option("--threads", threads, "Worker threads for fiber sampling")->check(CLI::PositiveNumber);
  app.add_option("--window-slack", window_slack, "Extra degrees around presentation windows")->check(CLI::NonNegativeNumber);
  app.add_option("--power-cutoff", power_cutoff, "Largest power K for limit estimates (0: default)");
  app.add_flag("--csv", csv, "Also write CSV tables");
  app.add_flag("--format", format_only, "Print the canonical script and exit");
  app.add_flag("-q,--quiet", quiet, "Do not list written files");
  app.set_version_flag("--version", std::string(fc_version()));
  CLI11_PARSE(app, argc, argv);

  std::stringstream text;
  if (script_path == "-") {
    text << std::cin.rdbuf();
  } else {
    std::ifstream in(script_path, std::ios::binary);
    if (!in) {
      std::cerr << "fibercoh: cannot read " << script_path << "\n";
      return 2;
    }
    text << in.rdbuf();
  }

  fc_session* session = nullptr;
  if (int st = fc_session_parse(text.str().c_str(), &session)) {
    std::cerr << script_path << ": " << fc_last_error() << "\n";
    return st ? 2 : 0;
  }
  if (format_only) {
    char* canon = nullptr;
    int st = fc_session_format(session, &canon);
    if (st == FC_OK) std::cout << canon;
    fc_string_free(canon);
    fc_session_free(session);
    return st == FC_OK ? 0 : report(st);
  }

  fc_run_options opts;
  fc_run_options_init(&opts);
  opts.seed = seed;
  opts.threads = threads;
  opts.window_slack = window_slack;
  opts.power_cutoff = power_cutoff;
  opts.csv = csv ? 1 : 0;
  opts.out_dir = out_dir.c_str();

  fc_run* run = nullptr;
  int st = fc_session_run(session, &opts, &run);
  fc_session_free(session);
  if (st != FC_OK) return report(st);
  for (size_t i = 0; i < fc_run_count(run); ++i) {
    if (!fc_run_ok(run, i)) std::cerr << "fibercoh: command " << i + 1 << " failed, see " << fc_run_file(run, i) << "\n";
    if (!quiet) std::cout << out_dir << "/" << fc_run_file(run, i) << "\n";
  }
  int code = fc_run_exit_code(run);
  fc_run_free(run);
  return code;
}
