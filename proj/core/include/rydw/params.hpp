#pragma once

// Physical inputs of a Rydberg-dressed tweezer array and the closed-form
// quantities of the effective excitation-boson model derived from them.
//
// Unit conventions used throughout the library:
//   energies        stored as angular frequencies E/hbar  [rad/s]
//   lengths         micrometres                           [um]
//   C3              stored as C3/hbar                      [rad/s um^3]
//   mass            kilograms                              [kg]
// Lengths are converted to metres only where the boson zero-point length
// sqrt(hbar / (2 m omega_b)) enters.

#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace rydw {

namespace constants {

inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double rb87_mass = 1.44316060e-25;     // kg
inline constexpr double metres_per_micrometre = 1.0e-6;

/// C3/hbar of 87Rb at principal quantum number 80: 2 pi x 40 GHz um^3.
inline constexpr double c3_nq80 = 2.0 * std::numbers::pi * 40.0e9;
/// Order-of-magnitude smaller value used for n_q = 50 (approximate).
inline constexpr double c3_nq50 = 2.0 * std::numbers::pi * 4.0e9;

}  // namespace constants

enum class FrequencyUnits { angular, cyclic };

/// Converts a frequency given in `units` to rad/s.
double to_angular(double value, FrequencyUnits units);
FrequencyUnits parse_frequency_units(std::string_view name);
std::string_view to_string(FrequencyUnits units);

struct C3Preset {
  std::string_view name;
  double c3_over_hbar;  // rad/s um^3
  bool approximate;
};

/// Known presets: "nq80" (default) and "nq50" (flagged approximate).
C3Preset c3_preset(std::string_view name);

struct PhysicalParams {
  double c3_over_hbar = constants::c3_nq80;  // rad/s um^3
  double a = 4.0;                             // um
  double omega_b = 0.0;                       // rad/s
  double alpha = 0.0;
  double delta = 0.0;                         // rad/s, total detuning Delta_s + Delta_p
  double mass = constants::rb87_mass;         // kg
  int n_sites = 8;
  int max_bosons = 6;

  /// Dimensionless C3 / (hbar Delta a^3).
  double zeta() const;
  /// Rabi frequency Omega = Delta * alpha of the dressing lasers.
  double omega_rabi() const { return delta * alpha; }

  /// Throws DomainError on hard violations; returns soft warnings.
  std::vector<std::string> validate() const;
};

struct DerivedParams {
  double zeta = 0.0;
  double eps0 = 0.0;       // rad/s
  double t_e = 0.0;        // rad/s, signed
  double xi_b = 0.0;       // rad/s per um
  double xi_p = 0.0;       // rad/s per um
  double g_b = 0.0;
  double g_p = 0.0;
  double lambda_eb = 0.0;
  double omega_d = 0.0;    // rad/s, eps0 - 2|t_e| (may be negative)
};

DerivedParams derive(const PhysicalParams& p);

/// Positive root of 3 zeta^2 - zeta - 1, where the breathing and Peierls slopes coincide.
double sweet_spot_zeta();

/// Detuning C3 / (hbar zeta_ss a^3) that puts the array at the sweet spot.
double sweet_spot_detuning(double c3_over_hbar, double a);

/// Copy of `p` with its detuning moved onto the sweet spot.
PhysicalParams at_sweet_spot(PhysicalParams p);

/// True when p.delta equals the sweet-spot detuning within `rel_tol`.
bool is_sweet_spot(const PhysicalParams& p, double rel_tol = 1e-9);

/// Closed-form effective coupling at the sweet spot. Throws
/// SweetSpotRequiredError when the detuning is off the sweet spot by more than 1e-9 relative.
double lambda_eb_ss(const PhysicalParams& p);

/// Zero-point displacement sqrt(hbar / (2 m omega_b)) in micrometres.
double zero_point_length(double mass, double omega_b);

}  // namespace rydw
