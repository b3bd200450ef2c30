#pragma once

// Ground-state phase behaviour at the sweet spot: per-sector Lanczos solves
// swept over the dressing parameter alpha (equivalently Omega = Delta_ss alpha).

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rydw/eigensolver.hpp"
#include "rydw/params.hpp"

namespace rydw {

struct ScanPoint;

struct ScanOptions {
  double tol = 1e-10;
  int max_iter = 200'000;
  int krylov_max = 250;
  std::uint64_t seed = 20210807;
  int threads = 1;
  /// Bisection target for lambda_c: relative bracket width in lambda.
  double lambda_c_rel_width = 1e-3;
  bool locate_critical = true;
  /// Called after each grid point is solved, in grid order.
  std::function<void(const ScanPoint&)> on_point;

  LanczosOptions lanczos(int count) const;
};

struct ScanPoint {
  double alpha = 0.0;
  double lambda_eb = 0.0;
  double omega_rabi = 0.0;           // rad/s
  double e_gs_over_te = 0.0;         // (E_gs - eps0) / |t_e|
  double k_gs = 0.0;                 // non-negative member of a +-K pair
  double boson_number = 0.0;
  double w_overlap = 0.0;            // |<Psi_{k=pi}|gs>|^2
  double gap_pi_over_omega_b = 0.0;  // (E1 - E0)/omega_b in the K = pi sector
  /// Lowest energy / |t_e| of every sector, in brillouin_zone() order.
  std::vector<double> sector_energies;
};

struct ScanMeta {
  PhysicalParams base;
  std::uint64_t seed = 0;
  std::string started;
  std::string finished;
};

struct ScanResult {
  std::vector<ScanPoint> points;
  std::optional<double> lambda_critical;
  std::optional<double> alpha_critical;
  std::optional<double> omega_critical;
  /// Adjacent grid indices bracketing the first departure of K_gs from pi.
  std::optional<std::pair<std::size_t, std::size_t>> bracket;
  ScanMeta meta;
};

/// Solves one sweet-spot parameter point. Requires even n_sites and
/// p.delta at the sweet spot (SweetSpotRequiredError otherwise).
ScanPoint solve_point(const PhysicalParams& p, const ScanOptions& options = {});

/// Sweeps `alpha_grid` (strictly increasing, non-empty) with the detuning
/// held at the sweet spot, and brackets lambda_c where K_gs first leaves pi.
ScanResult ground_state_scan(const PhysicalParams& base, std::span<const double> alpha_grid,
                             const ScanOptions& options = {});
/// Same sweep parameterized by the Rabi frequency Omega = Delta_ss alpha (rad/s).
ScanResult ground_state_scan_omega(const PhysicalParams& base, std::span<const double> omega_grid,
                                   const ScanOptions& options = {});

struct PiCurvePoint {
  double omega_rabi = 0.0;
  double alpha = 0.0;
  double lambda_eb = 0.0;
  double e_pi_over_te = 0.0;  // lowest K = pi eigenvalue minus eps0, in |t_e|
  double boson_number = 0.0;
  double w_overlap = 0.0;
  double gap_pi_over_omega_b = 0.0;
};

struct PiCurve {
  std::vector<PiCurvePoint> points;
  /// Omega where the lowest K = pi level first drops below -2|t_e| (bisected).
  std::optional<double> omega_critical;
};

/// Values below -2 - flat_tol count as having left the flat branch.
inline constexpr double kFlatTolerance = 1e-8;

PiCurve pi_sector_curve(const PhysicalParams& base, std::span<const double> omega_grid,
                        const ScanOptions& options = {});

/// (E1 - E0)/omega_b in the K = pi sector of p (sweet spot, even N).
double spectral_gap_pi(const PhysicalParams& p, const ScanOptions& options = {},
                       TermSwitches switches = {});

struct TruncationCheck {
  int max_bosons_low = 0;
  int max_bosons_high = 0;
  double e_low_over_te = 0.0;
  double e_high_over_te = 0.0;
  double change_over_te() const { return std::abs(e_high_over_te - e_low_over_te); }
};

/// Ground-state energy at truncation M = p.max_bosons and M + delta_m.
TruncationCheck truncation_convergence(const PhysicalParams& p, int delta_m = 2,
                                       const ScanOptions& options = {});

/// Lowest energy of every sector (rad/s, eps0 excluded), brillouin_zone() order.
std::vector<double> sector_ground_energies(const PhysicalParams& p, const ScanOptions& options = {});

}  // namespace rydw
