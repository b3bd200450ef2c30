#pragma once

// Driven W-state preparation in the combined zero- and one-excitation space:
//
//   H(t) = H_ss (eps0 included) + beta(t) N^{-1/2} sum_n (s+_n e^{-i q_d n} + h.c.),
//   beta(t) = 2 beta_p env(t) cos(omega_drive t),
//
// started from the bare vacuum |0_e, 0_b>. Time is in seconds, rates in rad/s.

#include <cstdint>
#include <span>
#include <vector>

#include "rydw/hamiltonian.hpp"
#include "rydw/params.hpp"

namespace rydw {

enum class Envelope { constant, cosine_ramp };

struct DriveSpec {
  double q_d = 0.0;          // rad/site, must be 2 pi j / N
  double beta_p = 0.0;       // rad/s, > 0
  double omega_drive = 0.0;  // carrier, rad/s
  Envelope envelope = Envelope::constant;
  double ramp_time = 0.0;    // s, cosine_ramp only

  double envelope_at(double t) const;
  double amplitude_at(double t) const;  // beta(t)
  void validate(int n_sites) const;
};

/// Resonant drive for p: q_d = pi, carrier |omega_d|, beta_p = ratio |omega_d|.
DriveSpec resonant_drive(const PhysicalParams& p, double beta_ratio = 1e-3);

struct FidelityTrace {
  std::vector<double> times;
  std::vector<double> fidelity;
  std::vector<double> vacuum_population;
  std::vector<double> leakage;
  std::vector<double> norm_drift;

  std::size_t size() const { return times.size(); }
  double peak_fidelity() const;
};

struct SimulationOptions {
  /// Step size in s; <= 0 picks steps_per_period steps per fastest carrier period.
  double dt = 0.0;
  int record_stride = 1;
  int steps_per_period = 24;
  double norm_tolerance = 1e-8;
  double krylov_tol = 1e-13;
  int krylov_max = 60;
  std::size_t max_dimension = 200'000;
  TermSwitches switches{true, true, true};
};

/// pi / (2 beta_p).
double rwa_preparation_time(double beta_p);

/// <Psi_{k=pi}|F_{q_d}|0_e 0_b> / beta, by explicit summation over the ring.
Complex drive_matrix_element(double q_d, int n_sites);

/// Step the automatic choice would use for (p, drive).
double default_time_step(const PhysicalParams& p, const DriveSpec& drive, const SimulationOptions& options = {});

/// Propagates |0_e 0_b> to t_final with a fourth-order commutator-free Magnus
/// scheme (Krylov exponentials). Throws StepSizeError when the norm drift
/// exceeds options.norm_tolerance and CapacityError above options.max_dimension.
FidelityTrace simulate_drive(const PhysicalParams& p, const DriveSpec& drive, double t_final,
                             const SimulationOptions& options = {});

struct RobustnessPoint {
  double offset = 0.0;  // Delta = Delta_ss (1 + offset)
  double peak_fidelity = 0.0;
  double omega_drive = 0.0;
};

/// Peak fidelity over one Rabi period pi / beta_p for each detuning offset,
/// with the carrier retuned to |omega_d| of the shifted detuning.
/// `base` supplies a, omega_b, alpha, C3, N, M; its detuning is replaced.
std::vector<RobustnessPoint> detuning_robustness(const PhysicalParams& base, const DriveSpec& drive,
                                                 std::span<const double> offsets,
                                                 const SimulationOptions& options = {}, int threads = 1);

}  // namespace rydw
