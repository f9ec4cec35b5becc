#ifndef DSTARLAB_CLI_RUN_COMMAND_H_
#define DSTARLAB_CLI_RUN_COMMAND_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

namespace dstarlab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitValidation = 2,
  kExitIo = 3,
};

struct RunConfig {
  std::vector<std::filesystem::path> scenarios;
  std::filesystem::path output_dir;
  bool write_csv = true;
  bool write_json = true;
  // Overrides every scenario's seed; all repeats then share it. Without it,
  // repeat k runs with the scenario seed + k.
  std::optional<uint64_t> seed;
  int repeat = 1;
  int jobs = 1;
};

// Output directory used when --out is absent: $DSTARLAB_OUT, else
// ./dstarlab-out.
std::filesystem::path DefaultOutputDir();

// Runs every scenario |repeat| times, writing
// <output_dir>/<scenario id>/run-<k>/{trace.csv,summary.json}.
int RunCommand(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full command-line entry point.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace dstarlab::cli

#endif  // DSTARLAB_CLI_RUN_COMMAND_H_
