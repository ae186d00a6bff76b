#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace eon {

enum ExitCode : int {
  kExitOk = 0,
  kExitBadFlags = 1,
  kExitIo = 2,
  kExitInfeasibleTopology = 3,
};

struct StudySpec {
  std::vector<std::filesystem::path> topology_paths;
  std::string scenario = "expected";  // expected | unexpected | custom:<path>
  std::vector<int> schemes{1, 2};
  std::vector<std::uint64_t> seeds{1};
  int k = 3;
  std::optional<int> horizon;
  double delta_gbps = 100.0;
  double saturation_threshold = 0.75;
  bool auto_physical_upgrade = false;
  std::filesystem::path output_dir = "out";
  std::optional<std::filesystem::path> phy_config_path;
};

// `eonplan plan --topology <path> ...`. Writes one directory per
// (topology, scheme, seed) run plus summary.txt and the fig_*.csv files
// under the output directory.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eon
