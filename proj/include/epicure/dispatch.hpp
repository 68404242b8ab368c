#ifndef EPICURE_DISPATCH_HPP
#define EPICURE_DISPATCH_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace epicure {

struct GridSpec {
  double from = 0.0;
  double to = 0.0;
  int count = 0;

  std::vector<double> values() const;
};

/// Parses "a:b:n".
GridSpec parse_grid(const std::string& spec);

struct CommandOptions {
  std::string command;
  std::filesystem::path scenario_path;
  std::filesystem::path scenario_b_path;  // cross-apply only
  std::filesystem::path out_dir = ".";
  std::optional<GridSpec> grid;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  int strain = 1;  // solve-exclusive only
};

/// Runs one command against a scenario file, writing result.json (plus
/// command-specific CSV side files) into out_dir. Returns the process exit
/// status; on failure an error.json with a machine-readable code is written.
int dispatch(const CommandOptions& opts);

}  // namespace epicure

#endif
