#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace oracle {

namespace {

struct State {
  int site;  // -1: no excitation
  std::vector<int> occ;
  bool operator<(const State& o) const { return std::tie(site, occ) < std::tie(o.site, o.occ); }
};

using Ket = std::map<State, double>;

int total(const std::vector<int>& occ) {
  int t = 0;
  for (int x : occ) t += x;
  return t;
}

// phi_j = b_j + b+_j, with b+ dropped when it would exceed the cutoff.
Ket phi(const Ket& in, int j, int max_bosons) {
  Ket out;
  for (const auto& [s, amp] : in) {
    if (s.occ[j] > 0) {
      State t = s;
      t.occ[j] -= 1;
      out[t] += amp * std::sqrt(static_cast<double>(s.occ[j]));
    }
    if (total(s.occ) < max_bosons) {
      State t = s;
      t.occ[j] += 1;
      out[t] += amp * std::sqrt(static_cast<double>(s.occ[j] + 1));
    }
  }
  return out;
}

// c+_to c_from
Ket hop(const Ket& in, int from, int to) {
  Ket out;
  for (const auto& [s, amp] : in) {
    if (s.site != from) continue;
    State t = s;
    t.site = to;
    out[t] += amp;
  }
  return out;
}

Ket number(const Ket& in, int site) {
  Ket out;
  for (const auto& [s, amp] : in) {
    if (s.site == site) out[s] += amp;
  }
  return out;
}

void add(Ket& acc, const Ket& k, double scale) {
  for (const auto& [s, amp] : k) acc[s] += scale * amp;
}

}  // namespace

std::vector<std::vector<int>> boson_configs(int n_sites, int max_bosons) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(n_sites), 0);
  std::function<void(int, int)> rec = [&](int site, int left) {
    if (site == n_sites) {
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[static_cast<std::size_t>(site)] = k;
      rec(site + 1, left - k);
    }
    cur[static_cast<std::size_t>(site)] = 0;
  };
  rec(0, max_bosons);
  std::sort(out.begin(), out.end());
  return out;
}

Eigen::MatrixXd real_space_matrix(const Couplings& c, int excitations) {
  const int n = c.n_sites;
  const auto configs = boson_configs(n, c.max_bosons);
  std::vector<State> basis;
  if (excitations == 0) {
    for (const auto& occ : configs) basis.push_back({-1, occ});
  } else {
    for (int s = 0; s < n; ++s) {
      for (const auto& occ : configs) basis.push_back({s, occ});
    }
  }
  std::map<State, int> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);

  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const Ket in{{basis[static_cast<std::size_t>(col)], 1.0}};
    Ket out;
    // omega_b sum_n b+_n b_n
    for (const auto& [s, amp] : in) out[s] += c.omega_b * total(s.occ) * amp;
    for (int site = 0; site < n; ++site) {
      const int next = (site + 1) % n;
      const int prev = (site + n - 1) % n;
      if (c.onsite) add(out, number(in, site), c.eps0);
      // -t_e (c+_{n+1} c_n + h.c.)
      add(out, hop(in, site, next), -c.t_e);
      add(out, hop(in, next, site), -c.t_e);
      // g_b omega_b c+_n c_n (phi_{n+1} - phi_{n-1})
      const Ket occ = number(in, site);
      add(out, phi(occ, next, c.max_bosons), c.g_b * c.omega_b);
      add(out, phi(occ, prev, c.max_bosons), -c.g_b * c.omega_b);
      // g_p omega_b (c+_{n+1} c_n + h.c.)(phi_{n+1} - phi_n)
      for (int which : {next, site}) {
        const double sign = which == next ? 1.0 : -1.0;
        const Ket shifted = phi(in, which, c.max_bosons);
        add(out, hop(shifted, site, next), sign * c.g_p * c.omega_b);
        add(out, hop(shifted, next, site), sign * c.g_p * c.omega_b);
      }
    }
    for (const auto& [s, amp] : out) {
      if (amp != 0.0) h(index.at(s), col) += amp;
    }
  }
  return h;
}

std::vector<double> eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<double> free_sector_spectrum(int n_sites, int max_bosons, int j, double t_e, double omega_b) {
  // Boson momentum-mode occupations n_q, q = 2 pi p / N; same counting as site occupations.
  std::vector<double> out;
  for (const auto& modes : boson_configs(n_sites, max_bosons)) {
    int q_total = 0;
    for (int p = 0; p < n_sites; ++p) q_total += p * modes[static_cast<std::size_t>(p)];
    const double k = 2.0 * std::numbers::pi * (j - q_total) / n_sites;
    out.push_back(total(modes) * omega_b - 2.0 * t_e * std::cos(k));
  }
  std::sort(out.begin(), out.end());
  return out;
}

double Literal::bracket(double r) const {
  const double ratio = c3 / delta;
  return 1.0 / (1.0 - ratio * ratio / std::pow(r, 6));
}

double Literal::onsite(double u_prev, double u_here, double u_next) const {
  const double scale = std::pow(alpha, 4) * delta / 2.0;
  return scale * (bracket(a + u_next - u_here) + bracket(a + u_here - u_prev));
}

double Literal::hopping(double u_here, double u_next) const {
  const double r = a + u_next - u_here;
  return std::pow(alpha, 4) * c3 / (r * r * r) * bracket(r);
}

}  // namespace oracle
