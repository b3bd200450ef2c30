#include "rydw/params.hpp"

#include <cmath>

#include "rydw/errors.hpp"

namespace rydw {

double to_angular(double value, FrequencyUnits units) {
  return units == FrequencyUnits::cyclic ? 2.0 * std::numbers::pi * value : value;
}

FrequencyUnits parse_frequency_units(std::string_view name) {
  if (name == "angular") return FrequencyUnits::angular;
  if (name == "cyclic") return FrequencyUnits::cyclic;
  throw DomainError("unknown frequency units '" + std::string(name) +
                    "' (expected angular|cyclic)");
}

std::string_view to_string(FrequencyUnits units) {
  return units == FrequencyUnits::cyclic ? "cyclic" : "angular";
}

C3Preset c3_preset(std::string_view name) {
  if (name == "nq80") return {"nq80", constants::c3_nq80, false};
  if (name == "nq50") return {"nq50", constants::c3_nq50, true};
  throw DomainError("unknown C3 preset '" + std::string(name) + "' (expected nq80|nq50)");
}

double PhysicalParams::zeta() const { return c3_over_hbar / (delta * a * a * a); }

std::vector<std::string> PhysicalParams::validate() const {
  if (!(a > 0.0)) throw DomainError("lattice period a must be positive");
  if (!(omega_b > 0.0)) throw DomainError("trap frequency omega_b must be positive");
  if (!(mass > 0.0)) throw DomainError("atom mass must be positive");
  if (!(c3_over_hbar > 0.0)) throw DomainError("C3 must be positive");
  if (!(alpha >= 0.0)) throw DomainError("dressing parameter alpha must be non-negative");
  if (delta == 0.0 || !std::isfinite(delta)) throw DomainError("detuning delta must be finite and nonzero");
  if (n_sites < 2) throw DomainError("n_sites must be at least 2");
  if (max_bosons < 0) throw DomainError("max_bosons must be non-negative");

  std::vector<std::string> warnings;
  if (alpha > 0.2) {
    warnings.push_back("alpha > 0.2 lies outside the perturbative dressing regime");
  }
  if (alpha == 0.0) {
    warnings.push_back("alpha = 0: all dressing-induced terms vanish");
  }
  return warnings;
}

double zero_point_length(double mass, double omega_b) {
  return std::sqrt(constants::hbar / (2.0 * mass * omega_b)) / constants::metres_per_micrometre;
}

DerivedParams derive(const PhysicalParams& p) {
  p.validate();
  const double z = p.zeta();
  if (std::abs(std::abs(z) - 1.0) <= 1e-12) {
    throw SingularParameterError("|zeta| = 1: dressing resonance, bare energies diverge");
  }

  const double a3 = p.a * p.a * p.a;
  const double a4 = a3 * p.a;
  const double alpha4 = std::pow(p.alpha, 4);
  const double one_minus = 1.0 - z * z;

  DerivedParams d;
  d.zeta = z;
  d.eps0 = alpha4 * p.delta / one_minus;
  d.t_e = -alpha4 * p.c3_over_hbar / (a3 * one_minus);
  d.xi_b = 3.0 * alpha4 * p.delta / p.a * z * z / (one_minus * one_minus);
  d.xi_p = 3.0 * alpha4 * p.c3_over_hbar / a4 * (3.0 * z * z - 1.0) / (one_minus * one_minus);

  const double length = zero_point_length(p.mass, p.omega_b);
  d.g_b = d.xi_b * length / p.omega_b;
  d.g_p = d.xi_p * length / p.omega_b;

  // Brillouin-zone average of |vertex|^2 over 2|t_e| omega_b; the breathing and
  // Peierls cross terms average to zero, leaving g_b^2/2 + g_p^2.
  d.lambda_eb = d.t_e == 0.0
                    ? 0.0
                    : p.omega_b * (d.g_b * d.g_b + 2.0 * d.g_p * d.g_p) / std::abs(d.t_e);
  d.omega_d = d.eps0 - 2.0 * std::abs(d.t_e);
  return d;
}

double sweet_spot_zeta() { return (1.0 + std::sqrt(13.0)) / 6.0; }

double sweet_spot_detuning(double c3_over_hbar, double a) {
  if (!(a > 0.0)) throw DomainError("lattice period a must be positive");
  return c3_over_hbar / (sweet_spot_zeta() * a * a * a);
}

PhysicalParams at_sweet_spot(PhysicalParams p) {
  p.delta = sweet_spot_detuning(p.c3_over_hbar, p.a);
  return p;
}

bool is_sweet_spot(const PhysicalParams& p, double rel_tol) {
  const double ss = sweet_spot_detuning(p.c3_over_hbar, p.a);
  return std::abs(p.delta - ss) <= rel_tol * std::abs(ss);
}

double lambda_eb_ss(const PhysicalParams& p) {
  p.validate();
  if (!is_sweet_spot(p)) {
    throw SweetSpotRequiredError("lambda_eb_ss requires delta = C3 / (hbar zeta_ss a^3)");
  }
  const double z = sweet_spot_zeta();
  const double c3_si = constants::hbar * p.c3_over_hbar *
                       std::pow(constants::metres_per_micrometre, 3);  // J m^3
  const double a_si = p.a * constants::metres_per_micrometre;
  const double shape = std::pow(3.0 * z * z - 1.0, 2) / std::pow(1.0 - z * z, 3);
  return 13.5 * std::pow(p.alpha, 4) * c3_si / (p.mass * p.omega_b * p.omega_b * std::pow(a_si, 5)) *
         shape;
}

}  // namespace rydw
