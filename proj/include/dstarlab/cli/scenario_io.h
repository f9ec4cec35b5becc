#ifndef DSTARLAB_CLI_SCENARIO_IO_H_
#define DSTARLAB_CLI_SCENARIO_IO_H_

#include <filesystem>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dstarlab/netsim/scenario.h"

namespace dstarlab::cli {

// The file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses scenario JSON text. Schema violations and failed validation both
// surface as netsim::ScenarioError with dotted field paths such as
// "flows[1].base_rtt_us".
netsim::Scenario ParseScenario(std::string_view text);

// Reads and parses a scenario file. Throws IoError when it cannot be read.
netsim::Scenario LoadScenario(const std::filesystem::path& path);

// Directory holding the bundled scenarios: $DSTARLAB_SCENARIO_DIR if set,
// otherwise the source tree's scenarios/ directory.
std::filesystem::path ScenarioDirectory();

// Bundled scenario files sorted by name.
std::vector<std::filesystem::path> ListScenarios(
    const std::filesystem::path& dir);

// Resolves a command-line reference: an existing path, or the name of a
// bundled scenario with or without the .json suffix.
std::filesystem::path ResolveScenario(const std::string& ref,
                                      const std::filesystem::path& dir);

// Writes |contents| to a sibling temporary file and renames it into place.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view contents);
void WriteFileAtomic(const std::filesystem::path& path,
                     const std::function<void(std::ostream&)>& write);

}  // namespace dstarlab::cli

#endif  // DSTARLAB_CLI_SCENARIO_IO_H_
