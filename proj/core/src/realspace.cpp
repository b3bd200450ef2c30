#include "rydw/realspace.hpp"

#include <cmath>
#include <string>

#include "rydw/errors.hpp"

namespace rydw {

namespace {

int wrap(int n, int size) { return ((n % size) + size) % size; }

void check_field(const DisplacementField& field, const PhysicalParams& p) {
  if (field.size() < 2) throw DomainError("displacement field needs at least two sites");
  const double bound = field.max_fraction * p.a;
  for (double u : field.u) {
    if (!(std::abs(u) < bound)) {
      throw DomainError("displacement outside validity region |u| < " + std::to_string(bound) +
                        " um");
    }
  }
}

// 1 / (1 - zeta^2 (a/R)^6), with the resonance guard.
double resonance_factor(double zeta, double a, double separation, double guard) {
  const double x6 = std::pow(a / separation, 6);
  const double denom = 1.0 - zeta * zeta * x6;
  if (std::abs(denom) < guard) {
    throw SingularParameterError("dressing resonance: bracket 1 - zeta^2 (a/R)^6 = " +
                                 std::to_string(denom));
  }
  return 1.0 / denom;
}

}  // namespace

double DisplacementField::at(int n) const { return u[wrap(n, size())]; }

double onsite_energy(const DisplacementField& field, int n, const PhysicalParams& p, double guard) {
  check_field(field, p);
  const double z = p.zeta();
  const double right = p.a + field.at(n + 1) - field.at(n);
  const double left = p.a + field.at(n) - field.at(n - 1);
  return 0.5 * std::pow(p.alpha, 4) * p.delta *
         (resonance_factor(z, p.a, right, guard) + resonance_factor(z, p.a, left, guard));
}

double hopping_amplitude(const DisplacementField& field, int n, const PhysicalParams& p,
                         double guard) {
  check_field(field, p);
  const double r = p.a + field.at(n + 1) - field.at(n);
  return std::pow(p.alpha, 4) * p.c3_over_hbar / (r * r * r) *
         resonance_factor(p.zeta(), p.a, r, guard);
}

TangentSlopes tangent_slopes(const PhysicalParams& p) {
  const double z = p.zeta();
  const double alpha4 = std::pow(p.alpha, 4);
  const double one_minus_sq = std::pow(1.0 - z * z, 2);
  const double onsite = 3.0 * alpha4 * p.delta * z * z / (p.a * one_minus_sq);
  TangentSlopes s;
  s.onsite_forward = -onsite;
  s.onsite_backward = onsite;
  s.hopping = -3.0 * alpha4 * p.c3_over_hbar * (1.0 + z * z) / (std::pow(p.a, 4) * one_minus_sq);
  return s;
}

double onsite_energy_linear(const DisplacementField& field, int n, double eps0, double slope) {
  return eps0 + slope * (field.at(n + 1) - field.at(n - 1));
}

double hopping_amplitude_linear(const DisplacementField& field, int n, double t_e, double slope) {
  return -t_e + slope * (field.at(n + 1) - field.at(n));
}

double onsite_slope_fd(const PhysicalParams& p, int n, int m, double step) {
  auto field = DisplacementField::zeros(p.n_sites);
  const int idx = wrap(m, p.n_sites);
  field.u[idx] = step;
  const double plus = onsite_energy(field, n, p);
  field.u[idx] = -step;
  const double minus = onsite_energy(field, n, p);
  return (plus - minus) / (2.0 * step);
}

double hopping_slope_fd(const PhysicalParams& p, int n, int m, double step) {
  auto field = DisplacementField::zeros(p.n_sites);
  const int idx = wrap(m, p.n_sites);
  field.u[idx] = step;
  const double plus = hopping_amplitude(field, n, p);
  field.u[idx] = -step;
  const double minus = hopping_amplitude(field, n, p);
  return (plus - minus) / (2.0 * step);
}

}  // namespace rydw
