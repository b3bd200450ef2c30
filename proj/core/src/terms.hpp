#pragma once

// Column expansion shared by every Hamiltonian representation: for a
// real-space state |site; occ> it enumerates H|site; occ> as
// (destination site, destination occupations, real amplitude).

#include <cmath>
#include <cstdint>
#include <span>

#include "rydw/hamiltonian.hpp"

namespace rydw::detail {

template <class Visit>
void expand_column(const ModelTerms& terms, int n_sites, int max_bosons, int site,
                   std::span<std::uint8_t> occ, int total, Visit&& visit) {
  const double excitation_energy = (site >= 0 && terms.switches.onsite) ? terms.eps0 : 0.0;
  visit(site, std::span<const std::uint8_t>(occ), excitation_energy + terms.omega_b * total);
  if (site < 0) return;

  const int right = (site + 1) % n_sites;
  const int left = (site + n_sites - 1) % n_sites;

  if (terms.t_e != 0.0) {
    visit(right, std::span<const std::uint8_t>(occ), -terms.t_e);
    visit(left, std::span<const std::uint8_t>(occ), -terms.t_e);
  }

  // coeff * (b_m + b+_m) acting on the boson part, excitation moved to `dest`.
  auto displace = [&](int dest, int m, double coeff) {
    if (occ[m] > 0) {
      const double amp = coeff * std::sqrt(static_cast<double>(occ[m]));
      --occ[m];
      visit(dest, std::span<const std::uint8_t>(occ), amp);
      ++occ[m];
    }
    if (total < max_bosons) {
      const double amp = coeff * std::sqrt(static_cast<double>(occ[m]) + 1.0);
      ++occ[m];
      visit(dest, std::span<const std::uint8_t>(occ), amp);
      --occ[m];
    }
  };

  if (terms.switches.breathing && terms.g_b != 0.0) {
    const double c = terms.g_b * terms.omega_b;
    displace(site, right, c);
    displace(site, left, -c);
  }
  if (terms.switches.peierls && terms.g_p != 0.0) {
    const double c = terms.g_p * terms.omega_b;
    // c+_{s+1} c_s (phi_{s+1} - phi_s)
    displace(right, right, c);
    displace(right, site, -c);
    // c+_{s-1} c_s (phi_s - phi_{s-1})
    displace(left, site, c);
    displace(left, left, -c);
  }
}

}  // namespace rydw::detail
