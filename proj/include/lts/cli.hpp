#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lts {

struct RunConfig {
  // "i-number", "elliptic", "sigma", "verify ei", "verify central-quotient",
  // "packets verify", "stabilize verify", "report"
  std::string subcommand;
  std::string group;  // file path or catalog name
  std::optional<std::string> theta;
  std::string models;
  std::optional<std::string> generators;  // file path or inline JSON
  bool catalog = false;
  std::string format = "json";
  std::uint64_t seed = 0;
  int trials = 100;
  unsigned threads = 1;
};

enum class ExitCode : int {
  Ok = 0,
  IdentityFailure = 1,
  UnknownSubcommand = 2,
  MissingFile = 3,
  MalformedJson = 4,
  ModuleError = 5,
};

class CliError : public std::runtime_error {
 public:
  CliError(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

// Throws CliError. LTS_THREADS overrides --threads.
RunConfig parse_args(const std::vector<std::string>& args);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// parse_args + run; reports usage errors on err.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lts
