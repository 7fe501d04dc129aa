#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "chnst/model.hpp"
#include "chnst/scheme.hpp"

namespace chnst {

/// Everything a CLI command needs, with the benchmark problem as default.
struct RunConfig {
  ModelParams model;
  StepConfig step;
  int level = 4;                        ///< mesh n = 2^level
  double final_time = 0.1;              ///< key "T"
  std::string preset = "taylor-green";  ///< initial condition name
  std::string output_dir = ".";
  int stride = 0;  ///< field snapshot every `stride` steps, 0 = none
  std::vector<int> levels = {2, 3, 4, 5};  ///< convergence study levels
};

/// Config rejection with the 1-based line it was detected on (0 when no
/// single line is responsible, e.g. an unreadable file).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses `key = value` lines; '#' starts a comment, blank lines are
/// ignored.  Unknown keys, unparsable values, and invariant violations
/// throw ConfigError with the offending line.  An empty document yields
/// the defaults above.
RunConfig parse_config(const std::string& text);

/// parse_config on the contents of `path`; unreadable file throws ConfigError.
RunConfig load_config_file(const std::string& path);

}  // namespace chnst
