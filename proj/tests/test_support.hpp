#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <sys/wait.h>

// Path of the crembed executable, filled from --cli=... by the test main.
extern std::string g_cli_path;

inline std::string fixture_path(const std::string& name) {
  return std::string(CREMBED_FIXTURE_DIR) + "/" + name;
}

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout only; stderr is discarded
};

/// Run the crembed binary with the given argument string and capture stdout.
inline CliResult run_cli(const std::string& args) {
  if (g_cli_path.empty())
    throw std::runtime_error("CLI path not set; pass --cli=/path/to/crembed");
  const std::string command = g_cli_path + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + command);
  CliResult result;
  char buffer[4096];
  while (std::size_t n = fread(buffer, 1, sizeof buffer, pipe))
    result.output.append(buffer, n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}
