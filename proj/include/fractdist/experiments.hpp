#ifndef FRACTDIST_EXPERIMENTS_HPP
#define FRACTDIST_EXPERIMENTS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fractdist/io.hpp"

namespace fractdist {

class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Sectioned key-value config: [section] lines, key = value pairs, # and ;
// comments. One experiment per file.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key, double fallback) const;
  long get_long_or(const std::string& section, const std::string& key, long fallback) const;
  bool get_bool_or(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& section, const std::string& key) const;

  void set(const std::string& section, const std::string& key, const std::string& value);

  // Sorted echo of every resolved key, for the run manifest.
  std::string canonical() const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

// Exit codes shared by the library runner and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitResolution = 3;
inline constexpr int kExitBudget = 4;

struct RunResult {
  int exit_code{kExitOk};
  std::vector<Artifact> artifacts;  // produced only on success
  std::string message;              // one-line status / error text
};

// Runs the experiment described by the config. `kind` must match the
// config's [experiment] kind. All outputs are returned in memory; nothing is
// written here.
RunResult run_experiment(const Config& config);

// Full batch entry point used by the CLI binary: applies --seed/--out
// overrides, runs, writes artifacts, reports. Returns the process exit code.
int run_cli(int argc, char** argv);

}  // namespace fractdist

#endif
