#pragma once

// JSON run configuration shared by all subcommands.
//
//   { "physical": {...}, "run": {...}, "output": {...} }
//
// physical.a, physical.omega_b and physical.alpha are required; every other
// key has a default. Unknown keys anywhere are rejected.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rydw/params.hpp"

namespace rydw::cli {

/// Malformed or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RunSettings {
  int n_sites = 8;
  std::optional<int> max_bosons;  // subcommand default when absent
  double tol = 1e-10;
  int max_iter = 200'000;
  int krylov_max = 250;
  std::uint64_t seed = 20210807;
  int threads = 1;

  // scan
  std::optional<std::vector<double>> alpha_grid;
  std::optional<std::vector<double>> omega_grid;  // rad/s after unit conversion
  bool locate_critical = true;
  bool truncation_check = false;

  // protocol
  std::optional<int> q_d_index;     // q_d = 2 pi j / N, default N/2
  std::optional<double> beta_p;     // rad/s
  double beta_ratio = 1e-3;         // beta_p = ratio |omega_d| when beta_p is absent
  std::optional<double> omega_drive;
  std::string envelope = "constant";
  double ramp_time = 0.0;           // s
  std::optional<double> t_final;    // s, default tau_prep
  double dt = 0.0;                  // s, 0 = automatic
  int record_stride = 1;
  int steps_per_period = 24;
  std::vector<double> detuning_offsets;
};

struct OutputSettings {
  std::string directory = ".";
  std::string prefix;
  FrequencyUnits units = FrequencyUnits::angular;
};

struct RunConfig {
  PhysicalParams physical;  // delta placed at the sweet spot unless given
  bool delta_given = false;
  std::string c3_name = "nq80";
  bool c3_approximate = false;
  RunSettings run;
  OutputSettings output;

  std::string canonical;    // normalized JSON text of the input
  std::uint64_t hash = 0;   // FNV-1a of `canonical`

  /// Physical parameters with n_sites and the (subcommand) boson cutoff applied.
  PhysicalParams params(int default_max_bosons) const;
};

/// Parses a config document. Throws ConfigError with line/column or key path.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

std::uint64_t fnv1a(std::string_view data);

}  // namespace rydw::cli
