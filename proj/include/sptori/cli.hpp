#pragma once

// Command-line front end. run_cli is the whole program minus process I/O so
// tests can drive it in-process.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sptori/combinatorics.hpp"

namespace sptori {

enum class Command { Table, Construct, Verify, Roundtrip };
enum class OutputFormat { Text, Json };

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kBadParameters = 2;
inline constexpr int kConstructionFailed = 3;
}  // namespace exit_code

struct CliConfig {
  Command command = Command::Table;
  std::optional<int> n;
  std::optional<std::uint64_t> p;
  int precision = 8;
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::Text;
  std::optional<TorusTriple> triple;
  bool all = false;
  /// Test hook: plant a p^-1 entry on the diagonal before verifying.
  bool inject_fault = false;
};

struct CliResult {
  std::string out;
  std::string err;
  int exit_code = 0;
};

std::string cmd_table(int n, OutputFormat format);
/// Throws InvalidArgument / ConstructionError; run_cli maps them to exit codes.
CliResult cmd_construct(const CliConfig& cfg);
CliResult cmd_verify(const CliConfig& cfg);
CliResult cmd_roundtrip(int n, OutputFormat format);

/// args excludes the program name.
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace sptori
