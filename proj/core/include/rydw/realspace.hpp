#pragma once

// Full displacement-dependent on-site energy and hopping of a dressed
// excitation, with periodic site indexing (site N is site 0).

#include <span>
#include <vector>

#include "rydw/params.hpp"

namespace rydw {

/// Classical displacement of every atom from its trap minimum, in micrometres.
struct DisplacementField {
  std::vector<double> u;
  /// Validity region |u_n| < max_fraction * a.
  double max_fraction = 0.5;

  static DisplacementField zeros(int n_sites) { return {std::vector<double>(n_sites, 0.0)}; }
  int size() const { return static_cast<int>(u.size()); }
  /// Periodic access.
  double at(int n) const;
};

/// Brackets 1 - zeta^2 (a/R)^6 closer to zero than this raise SingularParameterError.
inline constexpr double kDefaultSingularityGuard = 1e-6;

/// On-site energy eps_n(u)/hbar in rad/s.
double onsite_energy(const DisplacementField& field, int n, const PhysicalParams& p,
                     double guard = kDefaultSingularityGuard);

/// Hopping amplitude t_{n,n+1}(u)/hbar in rad/s.
double hopping_amplitude(const DisplacementField& field, int n, const PhysicalParams& p,
                         double guard = kDefaultSingularityGuard);

/// Exact first derivatives of the two functions above at u = 0 (rad/s per um).
struct TangentSlopes {
  double onsite_forward = 0.0;   // d eps_n / d u_{n+1}
  double onsite_backward = 0.0;  // d eps_n / d u_{n-1}
  double hopping = 0.0;          // d t_{n,n+1} / d u_{n+1}
};

TangentSlopes tangent_slopes(const PhysicalParams& p);

/// eps0 + slope (u_{n+1} - u_{n-1}).
double onsite_energy_linear(const DisplacementField& field, int n, double eps0, double slope);
/// -t_e + slope (u_{n+1} - u_n).
double hopping_amplitude_linear(const DisplacementField& field, int n, double t_e, double slope);

/// Central difference of `onsite_energy` (site n) with respect to u_m at u = 0.
double onsite_slope_fd(const PhysicalParams& p, int n, int m, double step);
/// Central difference of `hopping_amplitude` (bond n,n+1) with respect to u_m at u = 0.
double hopping_slope_fd(const PhysicalParams& p, int n, int m, double step);

}  // namespace rydw
