#include "rydw/scan.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <numbers>

#include "parallel.hpp"
#include "rydw/errors.hpp"

namespace rydw {

namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void require_scan_point(const PhysicalParams& p) {
  if (p.n_sites % 2 != 0) {
    throw DomainError("sweet-spot scans need an even number of sites (K = pi must be allowed)");
  }
  if (!is_sweet_spot(p)) {
    throw SweetSpotRequiredError("scan points must sit at the sweet-spot detuning");
  }
}

// At alpha = 0 every dressing-induced energy vanishes together with |t_e|.
// The ratios reported in units of |t_e| are then the alpha -> 0 limits,
// where the boson cost omega_b dominates the vanishing coupling: evaluate the
// uncoupled model at unit alpha.
struct Evaluation {
  PhysicalParams params;
  TermSwitches switches;
  double abs_te;
};

Evaluation evaluation_point(const PhysicalParams& p) {
  Evaluation e{p, {}, 0.0};
  // alpha = 0: free model with a band narrow against omega_b, so the gap and
  // E/|t_e| are the limiting values rather than 0/0.
  if (p.alpha == 0.0) {
    e.params.alpha = 1e-3;
    e.switches.breathing = false;
    e.switches.peierls = false;
  }
  e.abs_te = std::abs(derive(e.params).t_e);
  return e;
}

struct SectorSolve {
  Momentum k;
  EigResult eig;
};

std::vector<SectorSolve> solve_sectors(const Evaluation& ev, const ScanOptions& options, bool pi_pair,
                                       bool only_pi = false) {
  const auto& p = ev.params;
  auto bosons = std::make_shared<const BosonSpace>(p.n_sites, p.max_bosons);
  std::vector<Momentum> zone = brillouin_zone(p.n_sites);
  if (only_pi) zone = {Momentum::from_index(p.n_sites / 2, p.n_sites)};
  std::vector<SectorSolve> out(zone.size());
  detail::parallel_for(zone.size(), options.threads, [&](std::size_t i) {
    const auto op = sector_operator(p, zone[i], ev.switches, bosons);
    const int want = (pi_pair && zone[i].is_pi()) ? 2 : 1;
    const int count = std::min<int>(want, static_cast<int>(op.dimension()));
    out[i] = {zone[i], lowest_eigenpairs(op, options.lanczos(count))};
  });
  return out;
}

double boson_number(const Vector& v, const BosonSpace& bosons) {
  double n = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) n += std::norm(v[i]) * bosons.total(static_cast<std::size_t>(i));
  return n;
}

double gap_of(const EigResult& eig, double omega_b) {
  if (eig.eigenvalues.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return (eig.eigenvalues[1] - eig.eigenvalues[0]) / omega_b;
}

bool ground_state_in_pi(const PhysicalParams& p, const ScanOptions& options) {
  const auto energies = sector_ground_energies(p, options);
  const auto zone = brillouin_zone(p.n_sites);
  double pi_energy = 0.0;
  double others = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < zone.size(); ++i) {
    if (zone[i].is_pi()) {
      pi_energy = energies[i];
    } else {
      others = std::min(others, energies[i]);
    }
  }
  return pi_energy <= others;
}

PhysicalParams with_alpha(PhysicalParams p, double alpha) {
  p.alpha = alpha;
  return p;
}

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw DomainError("scan grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0) || !std::isfinite(grid[i])) throw DomainError("scan grid values must be finite and >= 0");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("scan grid must be strictly increasing");
  }
}

}  // namespace

LanczosOptions ScanOptions::lanczos(int count) const {
  LanczosOptions o;
  o.count = count;
  o.tol = tol;
  o.max_iter = max_iter;
  o.krylov_max = krylov_max;
  o.seed = seed;
  return o;
}

std::vector<double> sector_ground_energies(const PhysicalParams& p, const ScanOptions& options) {
  const Evaluation ev = evaluation_point(p);
  const auto solves = solve_sectors(ev, options, false);
  std::vector<double> out;
  out.reserve(solves.size());
  for (const auto& s : solves) out.push_back(s.eig.eigenvalues.front());
  return out;
}

ScanPoint solve_point(const PhysicalParams& p, const ScanOptions& options) {
  require_scan_point(p);
  const Evaluation ev = evaluation_point(p);
  const auto solves = solve_sectors(ev, options, true);
  const BosonSpace bosons_view(p.n_sites, p.max_bosons);

  ScanPoint pt;
  pt.alpha = p.alpha;
  pt.lambda_eb = p.alpha == 0.0 ? 0.0 : derive(p).lambda_eb;
  pt.omega_rabi = p.omega_rabi();

  std::size_t best = 0;
  for (std::size_t i = 0; i < solves.size(); ++i) {
    const double e = solves[i].eig.eigenvalues.front();
    pt.sector_energies.push_back(e / ev.abs_te);
    if (e < solves[best].eig.eigenvalues.front()) best = i;
    if (solves[i].k.is_pi()) pt.gap_pi_over_omega_b = gap_of(solves[i].eig, ev.params.omega_b);
  }
  const auto& gs = solves[best];
  pt.e_gs_over_te = gs.eig.eigenvalues.front() / ev.abs_te;
  pt.k_gs = std::abs(gs.k.value());
  pt.boson_number = boson_number(gs.eig.eigenvectors.front(), bosons_view);
  pt.w_overlap = gs.k.is_pi() ? std::norm(gs.eig.eigenvectors.front()[0]) : 0.0;
  return pt;
}

ScanResult ground_state_scan(const PhysicalParams& base, std::span<const double> alpha_grid,
                             const ScanOptions& options) {
  check_grid(alpha_grid);
  require_scan_point(base);
  ScanResult result;
  result.meta.base = base;
  result.meta.seed = options.seed;
  result.meta.started = utc_now();

  for (double alpha : alpha_grid) {
    result.points.push_back(solve_point(with_alpha(base, alpha), options));
    if (options.on_point) options.on_point(result.points.back());
  }

  auto at_pi = [](const ScanPoint& pt) { return std::abs(pt.k_gs - std::numbers::pi) < 1e-9; };
  for (std::size_t i = 1; i < result.points.size(); ++i) {
    if (at_pi(result.points[i - 1]) && !at_pi(result.points[i])) {
      result.bracket = std::make_pair(i - 1, i);
      break;
    }
  }

  if (result.bracket && options.locate_critical) {
    double lo = alpha_grid[result.bracket->first];
    double hi = alpha_grid[result.bracket->second];
    // lambda ~ alpha^4: a relative lambda width w is an alpha ratio (1 + w)^(1/4).
    const double ratio = std::pow(1.0 + options.lambda_c_rel_width, 0.25);
    while (hi > lo * ratio) {
      const double mid = 0.5 * (lo + hi);
      if (ground_state_in_pi(with_alpha(base, mid), options)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double alpha_c = 0.5 * (lo + hi);
    result.alpha_critical = alpha_c;
    result.lambda_critical = derive(with_alpha(base, alpha_c)).lambda_eb;
    result.omega_critical = alpha_c * base.delta;
  }
  result.meta.finished = utc_now();
  return result;
}

ScanResult ground_state_scan_omega(const PhysicalParams& base, std::span<const double> omega_grid,
                                   const ScanOptions& options) {
  check_grid(omega_grid);
  std::vector<double> alphas;
  alphas.reserve(omega_grid.size());
  for (double omega : omega_grid) alphas.push_back(omega / base.delta);
  return ground_state_scan(base, alphas, options);
}

PiCurve pi_sector_curve(const PhysicalParams& base, std::span<const double> omega_grid,
                        const ScanOptions& options) {
  check_grid(omega_grid);
  require_scan_point(base);

  auto evaluate = [&](double omega) {
    const PhysicalParams p = with_alpha(base, omega / base.delta);
    const Evaluation ev = evaluation_point(p);
    const auto solves = solve_sectors(ev, options, true, true);
    const auto& eig = solves.front().eig;
    PiCurvePoint pt;
    pt.omega_rabi = omega;
    pt.alpha = p.alpha;
    pt.lambda_eb = p.alpha == 0.0 ? 0.0 : derive(p).lambda_eb;
    pt.e_pi_over_te = eig.eigenvalues.front() / ev.abs_te;
    pt.boson_number = boson_number(eig.eigenvectors.front(), BosonSpace(p.n_sites, p.max_bosons));
    pt.w_overlap = std::norm(eig.eigenvectors.front()[0]);
    pt.gap_pi_over_omega_b = gap_of(eig, p.omega_b);
    return pt;
  };
  auto departed = [](const PiCurvePoint& pt) { return pt.e_pi_over_te < -2.0 - kFlatTolerance; };

  PiCurve curve;
  for (double omega : omega_grid) curve.points.push_back(evaluate(omega));

  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    if (!departed(curve.points[i - 1]) && departed(curve.points[i])) {
      double lo = omega_grid[i - 1];
      double hi = omega_grid[i];
      const double ratio = std::pow(1.0 + options.lambda_c_rel_width, 0.25);
      while (hi > lo * ratio) {
        const double mid = 0.5 * (lo + hi);
        if (departed(evaluate(mid))) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      curve.omega_critical = 0.5 * (lo + hi);
      break;
    }
  }
  return curve;
}

double spectral_gap_pi(const PhysicalParams& p, const ScanOptions& options, TermSwitches switches) {
  require_scan_point(p);
  Evaluation ev = evaluation_point(p);
  if (p.alpha != 0.0) ev.switches = switches;
  const auto solves = solve_sectors(ev, options, true, true);
  return gap_of(solves.front().eig, p.omega_b);
}

TruncationCheck truncation_convergence(const PhysicalParams& p, int delta_m, const ScanOptions& options) {
  if (delta_m < 1) throw DomainError("truncation_convergence: delta_m must be >= 1");
  auto ground = [&](int m) {
    PhysicalParams q = p;
    q.max_bosons = m;
    const auto energies = sector_ground_energies(q, options);
    double e = std::numeric_limits<double>::infinity();
    for (double x : energies) e = std::min(e, x);
    return e / evaluation_point(q).abs_te;
  };
  TruncationCheck check;
  check.max_bosons_low = p.max_bosons;
  check.max_bosons_high = p.max_bosons + delta_m;
  check.e_low_over_te = ground(check.max_bosons_low);
  check.e_high_over_te = ground(check.max_bosons_high);
  return check;
}

}  // namespace rydw
