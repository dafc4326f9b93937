#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hrl::cli {

inline constexpr int kFormatVersion = 1;

/// Parse failure with the offending line (0 when not line-specific).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "config line " + std::to_string(line) + ": " + message
                                    : "config: " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Every tunable of every subcommand.  Text form:
///
///   format_version = 1
///   seed = 7
///   [corpus]
///   count = 100
///
/// Keys before the first section header belong to [general].
struct RunConfig {
  int format_version = kFormatVersion;
  std::uint64_t seed = 1;

  struct Corpus {
    int count = 100;
    double r_min = 0.2;
    double r_max = 5.0;
    int knots = 14;
    int degree = 5;
    int max_ell = 3;
  } corpus;

  struct Verify1D {
    int prop_cases = 500;
    int identity_profiles = 200;
    int corollary_profiles = 10;
    int hardy_profiles = 100;
  } verify_1d;

  struct VerifyDecomp {
    int fields = 100;
    int fd_points = 20;
    double fd_step = 1e-4;
  } verify_decomp;

  struct Constants {
    int dim_min = 3;
    int dim_max = 5;
  } constants;

  struct Quotient {
    double r_min = 1e-3;
    double r_max = 1e3;
    int basis = 120;
    int max_ell = 3;
    double wide_r_min = 1e-12;  // exploratory wide-domain rerun
    double wide_r_max = 1e12;
    int wide_basis = 240;
    int starts = 20;
    int budget = 20000;
    int pn_knots = 16;
  } quotient;

  struct Degeneracy {
    int log2_r_min = 4;
    int log2_r_max = 12;
    double ramp_factor = 2.0;
  } degeneracy;

  struct Sweep {
    std::vector<int> dims{2, 3};
    std::vector<double> weights{-1.0, 0.0, 0.5};
    int radial_dim_max = 6;
    int fields_per_family = 20;
  } sweep;

  /// Canonical key = value text (used for hashing and --dump-config).
  std::string canonical() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Hex FNV-1a/splitmix hash of the canonical text.
std::string config_hash(const RunConfig& config);

/// 2^lo, ..., 2^hi.
std::vector<double> power_of_two_grid(int lo, int hi);

}  // namespace hrl::cli
