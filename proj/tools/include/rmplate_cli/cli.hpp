#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmplate/spaces.hpp"

namespace rmplate::cli {

enum class Command { Solve, Converge, Lock, Check, MeshInfo };
enum class SolverChoice { Auto, Saddle, Condensed };
enum class LoadChoice { Uniform, Manufactured };

struct RunConfig {
  Command command = Command::Solve;
  BoundaryCondition bc = BoundaryCondition::Clamped;
  MultiplierBasis multiplier = MultiplierBasis::Dual;
  SolverChoice solver = SolverChoice::Auto;
  LoadChoice load = LoadChoice::Uniform;
  double youngs_modulus = 1.0;
  double poisson_ratio = 0.3;
  double shear_correction = 5.0 / 6.0;
  std::vector<double> thicknesses{0.1};
  std::string mesh = "n=4";  ///< "n=K" for the built-in unit square, else a mesh file
  int levels = 4;
  int base_n = 4;
  std::string output = "rmplate";  ///< prefix of written files
  bool output_given = false;
  bool contrast = false;  ///< lock: also run the naive P1-P1 pair
};

/// Invalid configuration. `key()` names the offending option.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what);
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Exit codes of run() and run_cli().
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDomain = 3;

/// Throws ConfigError.
void validate(const RunConfig& config);

/// Executes one command. Result files are written only after the command
/// has completed; on any error nothing is written. Returns an exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses arguments (without the program name), applies an optional
/// key = value config file given by --config (command line wins over the
/// file, the file over defaults) and runs.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string to_string(Command c);
std::string to_string(BoundaryCondition bc);
std::string to_string(MultiplierBasis m);

}  // namespace rmplate::cli
