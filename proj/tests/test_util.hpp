#pragma once

#include <array>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <sys/wait.h>

#include "socv/pipeline.hpp"

namespace socv::testing {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

// Runs the socv binary with a shell-quoted argument string; stdout only.
inline CliResult run_cli(const std::string& args) {
  std::string cmd = std::string("'") + SOCV_CLI_PATH + "' " + args + " 2>/dev/null";
  CliResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline bool command_available(const std::string& probe) {
  return std::system((probe + " >/dev/null 2>&1").c_str()) == 0;
}

inline bool z3_available() { return command_available("z3 -version"); }

inline bool cvc5_available() { return command_available("python3 -c 'import cvc5'"); }

inline std::string corpus_path(const std::string& rel) { return std::string(SOCV_SOURCE_DIR) + "/corpus/" + rel; }

}  // namespace socv::testing
