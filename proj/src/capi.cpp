#include "fibercoh/fibercoh.h"

#include <cstring>
#include <filesystem>
#include <memory>
#include <new>
#include <string>

#include "fibercoh/session.hpp"

using fibercoh::Error;
using fibercoh::ErrorCode;

struct fc_session {
  std::unique_ptr<fibercoh::Session> impl;
};

struct fc_run {
  fibercoh::RunResult impl;
};

namespace {

thread_local std::string last_error;
thread_local int last_line = 0, last_column = 0;

int to_status(ErrorCode c) { return static_cast<int>(c) + 1; }

void clear_error() {
  last_error.clear();
  last_line = last_column = 0;
}

int set_error(int status, const std::string& msg) {
  last_error = msg;
  return status;
}

template <class F>
int guarded(F&& f) {
  clear_error();
  try {
    f();
    return FC_OK;
  } catch (const fibercoh::ScriptError& e) {
    last_line = static_cast<int>(e.location().line);
    last_column = static_cast<int>(e.location().column);
    return set_error(to_status(e.code()), e.what());
  } catch (const Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return set_error(FC_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(FC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(FC_ERR_INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

const char* fc_version(void) { return "0.1.0"; }

const char* fc_status_name(int status) {
  if (status == FC_OK) return "Ok";
  if (status == FC_ERR_IO) return "IoError";
  if (status < 1 || status > to_status(ErrorCode::Internal)) return "Unknown";
  return fibercoh::to_string(static_cast<ErrorCode>(status - 1));
}

const char* fc_last_error(void) { return last_error.c_str(); }
int fc_last_error_line(void) { return last_line; }
int fc_last_error_column(void) { return last_column; }

int fc_session_parse(const char* text, fc_session** out) {
  if (!text || !out) return set_error(FC_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto s = std::make_unique<fc_session>();
    s->impl = std::make_unique<fibercoh::Session>(fibercoh::parse_script(text));
    *out = s.release();
  });
}

void fc_session_free(fc_session* s) { delete s; }

size_t fc_session_command_count(const fc_session* s) { return s ? s->impl->script().commands.size() : 0; }

int fc_session_format(const fc_session* s, char** out) {
  if (!s || !out) return set_error(FC_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::string text = fibercoh::format_script(s->impl->script());
    char* p = static_cast<char*>(std::malloc(text.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, text.c_str(), text.size() + 1);
    *out = p;
  });
}

void fc_string_free(char* p) { std::free(p); }

void fc_run_options_init(fc_run_options* o) {
  if (!o) return;
  fibercoh::RunOptions d;
  o->seed = d.seed;
  o->threads = d.threads;
  o->window_slack = d.window_slack;
  o->power_cutoff = d.power_cutoff;
  o->csv = d.csv ? 1 : 0;
  o->out_dir = nullptr;
}

int fc_session_run(const fc_session* s, const fc_run_options* o, fc_run** out) {
  if (!s || !out) return set_error(FC_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    fibercoh::RunOptions opts;
    if (o) {
      if (o->threads == 0) fibercoh::fail(ErrorCode::InvalidArgument, "threads must be positive");
      if (o->window_slack < 0) fibercoh::fail(ErrorCode::InvalidArgument, "window slack must be nonnegative");
      opts.seed = o->seed;
      opts.threads = o->threads;
      opts.window_slack = o->window_slack;
      opts.power_cutoff = o->power_cutoff;
      opts.csv = o->csv != 0;
      if (o->out_dir) opts.out_dir = o->out_dir;
    }
    auto r = std::make_unique<fc_run>();
    r->impl = s->impl->run(opts);
    *out = r.release();
  });
}

void fc_run_free(fc_run* r) { delete r; }
int fc_run_exit_code(const fc_run* r) { return r ? r->impl.exit_code : 1; }
size_t fc_run_count(const fc_run* r) { return r ? r->impl.results.size() : 0; }

const char* fc_run_file(const fc_run* r, size_t i) {
  return r && i < r->impl.results.size() ? r->impl.results[i].file.c_str() : nullptr;
}
const char* fc_run_json(const fc_run* r, size_t i) {
  return r && i < r->impl.results.size() ? r->impl.results[i].json.c_str() : nullptr;
}
const char* fc_run_csv(const fc_run* r, size_t i) {
  return r && i < r->impl.results.size() ? r->impl.results[i].csv.c_str() : nullptr;
}
int fc_run_ok(const fc_run* r, size_t i) { return r && i < r->impl.results.size() && r->impl.results[i].ok ? 1 : 0; }

}  // extern "C"
