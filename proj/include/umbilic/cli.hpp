#ifndef UMBILIC_CLI_HPP
#define UMBILIC_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "umbilic/families.hpp"

namespace umbilic::cli {

/// Resolved run configuration: family parameters plus command options.
/// Serializes to the flat key=value config format; command-line flags win
/// over config-file values.
struct RunConfig {
  std::string family = "flat";
  int n = 1;
  int m = 1;
  std::optional<double> lambda;  // unset: family default, or budget for `budget`
  double r0 = 0.5;
  double r1 = 0.9;
  double R0 = 1.0;
  double epsilon = 0.1;
  int grid = 200;
  int samples = 100;
  std::uint64_t seed = 42;
  std::string out;

  FlatFamilyParams flat_params() const;
  SphereFamilyParams sphere_params() const;

  std::string serialize() const;
  /// Throws InvalidParamsError with a line/field diagnostic on bad input.
  static RunConfig parse_text(const std::string& text);

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Exit codes: 0 pass, 1 verification failure, 2 usage/config error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);
int run_cli(int argc, const char* const* argv);

}  // namespace umbilic::cli

#endif
