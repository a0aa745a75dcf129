#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace hbloch::cli {

enum class Status { Ok, Error, Flagged };

constexpr const char* to_string(Status s) {
  switch (s) {
    case Status::Ok: return "OK";
    case Status::Error: return "ERROR";
    case Status::Flagged: return "FLAGGED";
  }
  return "ERROR";
}

/// 0 for OK, 1 for ERROR, 2 for FLAGGED.
int exit_code(Status s);

struct CommandResult {
  Status status = Status::Ok;
  nlohmann::json payload = nlohmann::json::object();
  /// Plain-text body (the mu-grid CSV, help text); when set it replaces the
  /// JSON payload on output.
  std::string text;
  std::vector<std::string> diagnostics;
};

/// Parses and executes one subcommand. `args` excludes the program name.
/// Output files named by --out are written here; nothing goes to stdout.
CommandResult run(const std::vector<std::string>& args);

/// Process front end: runs, prints the result (unless --out took it) and
/// returns the exit code.
int main_entry(int argc, char** argv);

}  // namespace hbloch::cli
