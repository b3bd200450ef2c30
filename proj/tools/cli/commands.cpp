#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "csv.hpp"
#include "rydw/errors.hpp"
#include "rydw/hamiltonian.hpp"
#include "rydw/protocol.hpp"
#include "rydw/scan.hpp"
#include "rydw/version.hpp"

namespace rydw::cli {

namespace {

using std::numbers::pi;
using Meta = std::vector<std::pair<std::string, std::string>>;

const std::vector<std::string> kScanColumns = {"lambda_eb",    "omega_rabi_rad_s", "e_gs_over_abs_te", "k_gs_rad",
                                               "boson_number", "w_overlap",        "gap_over_omega_b",
                                               "gap_over_abs_omega_d"};

// K = pi gap in units of |omega_d| at the given Rabi frequency; reported only.
double gap_over_omega_d(const PhysicalParams& base, double omega_rabi, double gap_over_omega_b) {
  PhysicalParams p = base;
  p.alpha = omega_rabi / base.delta;
  const double wd = std::abs(derive(p).omega_d);
  return wd > 0.0 ? gap_over_omega_b * base.omega_b / wd : std::numeric_limits<double>::quiet_NaN();
}

std::string hex(std::uint64_t v) {
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << v;
  return ss.str();
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Meta common_meta(const RunConfig& cfg, const PhysicalParams& p, const std::string& command) {
  return {{"generator", std::string("rydw ") + kVersion},
          {"command", command},
          {"config_hash", "fnv1a64:" + hex(cfg.hash)},
          {"n_sites", std::to_string(p.n_sites)},
          {"max_bosons", std::to_string(p.max_bosons)},
          {"seed", std::to_string(cfg.run.seed)},
          {"a_um", format_number(p.a)},
          {"omega_b_rad_s", format_number(p.omega_b)},
          {"delta_rad_s", format_number(p.delta)},
          {"c3_over_hbar_rad_s_um3", format_number(p.c3_over_hbar) + " (" + cfg.c3_name +
                                         (cfg.c3_approximate ? ", approximate" : "") + ")"},
          {"input_units", std::string(to_string(cfg.output.units))},
          {"written", utc_now()}};
}

std::string output_path(const RunConfig& cfg, const std::string& name) {
  std::string dir = cfg.output.directory.empty() ? "." : cfg.output.directory;
  return dir + "/" + cfg.output.prefix + name;
}

ScanOptions scan_options(const RunConfig& cfg) {
  ScanOptions o;
  o.tol = cfg.run.tol;
  o.max_iter = cfg.run.max_iter;
  o.krylov_max = cfg.run.krylov_max;
  o.seed = cfg.run.seed;
  o.threads = cfg.run.threads;
  o.locate_critical = cfg.run.locate_critical;
  return o;
}

std::vector<double> default_alpha_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 18; ++i) g.push_back(0.01 + 0.005 * i);
  return g;
}

void print_warnings(const PhysicalParams& p, std::ostream& out) {
  for (const auto& w : p.validate()) out << "warning: " << w << '\n';
}

std::string with_unit(double rad_s, FrequencyUnits units) {
  rad_s += 0.0;  // no "-0"
  if (units == FrequencyUnits::cyclic) return format_number(rad_s / (2.0 * pi)) + " Hz";
  return format_number(rad_s) + " rad/s";
}

}  // namespace

int cmd_derive(const RunConfig& cfg, std::ostream& out) {
  const PhysicalParams p = cfg.params(6);
  print_warnings(p, out);
  const DerivedParams d = derive(p);
  const FrequencyUnits u = cfg.output.units;
  const double delta_ss = sweet_spot_detuning(p.c3_over_hbar, p.a);
  out << "rydw " << kVersion << " derive\n";
  out << "a                 = " << format_number(p.a) << " um\n";
  out << "omega_b           = " << with_unit(p.omega_b, u) << '\n';
  out << "alpha             = " << format_number(p.alpha) << '\n';
  out << "delta             = " << with_unit(p.delta, u) << (is_sweet_spot(p) ? "  (sweet spot)" : "") << '\n';
  out << "zeta              = " << format_number(d.zeta) << '\n';
  out << "zeta_ss           = " << format_number(sweet_spot_zeta()) << '\n';
  out << "delta_ss          = " << with_unit(delta_ss, u) << '\n';
  out << "omega_rabi        = " << with_unit(p.omega_rabi(), u) << '\n';
  out << "eps0              = " << with_unit(d.eps0, u) << '\n';
  out << "t_e               = " << with_unit(d.t_e, u) << '\n';
  out << "xi_b              = " << with_unit(d.xi_b, u) << " per um\n";
  out << "xi_p              = " << with_unit(d.xi_p, u) << " per um\n";
  out << "g_b               = " << format_number(d.g_b) << '\n';
  out << "g_p               = " << format_number(d.g_p) << '\n';
  out << "lambda_eb         = " << format_number(d.lambda_eb) << '\n';
  out << "omega_d           = " << with_unit(d.omega_d, u) << "  (carrier uses |omega_d|)\n";
  if (d.omega_d != 0.0) out << "omega_b/|omega_d| = " << format_number(p.omega_b / std::abs(d.omega_d)) << '\n';
  out << "zero_point_length = " << format_number(zero_point_length(p.mass, p.omega_b)) << " um\n";
  out << "\nsweet-spot detuning by lattice period (c3 " << cfg.c3_name << ")\n";
  for (double a : {4.0, 10.0, 15.0}) {
    out << "  a = " << std::setw(4) << format_number(a) << " um  delta_ss = "
        << with_unit(sweet_spot_detuning(p.c3_over_hbar, a), u) << '\n';
  }
  return kOk;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
  const PhysicalParams base = cfg.params(6);
  print_warnings(base, out);
  if (!is_sweet_spot(base)) throw SweetSpotRequiredError("scan: physical.delta must be the sweet-spot detuning");
  if (base.n_sites % 2 != 0) throw DomainError("scan: run.n_sites must be even so that K = pi is allowed");

  std::vector<double> alphas;
  if (cfg.run.alpha_grid) {
    alphas = *cfg.run.alpha_grid;
  } else if (cfg.run.omega_grid) {
    for (double w : *cfg.run.omega_grid) alphas.push_back(w / base.delta);
  } else {
    alphas = default_alpha_grid();
  }
  std::vector<double> omegas;
  if (cfg.run.omega_grid) {
    omegas = *cfg.run.omega_grid;
  } else {
    for (double a : alphas) omegas.push_back(a * base.delta);
  }

  Meta meta = common_meta(cfg, base, "scan");
  Meta meta2 = meta, meta3 = meta, meta4 = meta;
  meta2.emplace_back("figure", "ground-state energy vs lambda_eb (eps0 excluded)");
  meta3.emplace_back("figure", "ground-state total quasimomentum vs lambda_eb");
  meta4.emplace_back("figure", "lowest K = pi eigenvalue vs Rabi frequency (eps0 excluded)");
  CsvWriter fig2(output_path(cfg, "fig2.csv"), meta2, kScanColumns);
  CsvWriter fig3(output_path(cfg, "fig3.csv"), meta3, kScanColumns);

  ScanOptions opts = scan_options(cfg);
  opts.on_point = [&](const ScanPoint& pt) {
    const std::vector<double> row = {pt.lambda_eb,    pt.omega_rabi, pt.e_gs_over_te,
                                     pt.k_gs,         pt.boson_number, pt.w_overlap,
                                     pt.gap_pi_over_omega_b, gap_over_omega_d(base, pt.omega_rabi, pt.gap_pi_over_omega_b)};
    fig2.row(row);
    fig3.row(row);
    out << "alpha " << format_number(pt.alpha) << "  lambda " << format_number(pt.lambda_eb) << "  E/|t_e| "
        << format_number(pt.e_gs_over_te) << "  K_gs " << format_number(pt.k_gs) << '\n';
  };
  const ScanResult scan = ground_state_scan(base, alphas, opts);
  for (CsvWriter* w : {&fig2, &fig3}) {
    w->comment("lambda_critical", scan.lambda_critical ? format_number(*scan.lambda_critical) : "not bracketed");
    w->comment("omega_critical_rad_s", scan.omega_critical ? format_number(*scan.omega_critical) : "not bracketed");
  }
  if (scan.lambda_critical) {
    out << "lambda_c = " << format_number(*scan.lambda_critical) << "  (alpha_c = " << format_number(*scan.alpha_critical)
        << ")\n";
  } else {
    out << "lambda_c not bracketed by the grid\n";
  }

  if (cfg.run.truncation_check) {
    PhysicalParams worst = base;
    worst.alpha = alphas.back();
    const TruncationCheck tc = truncation_convergence(worst, 2, opts);
    const std::string text = "M " + std::to_string(tc.max_bosons_low) + " -> " + std::to_string(tc.max_bosons_high) +
                             " changes E_gs/|t_e| by " + format_number(tc.change_over_te());
    fig2.comment("truncation_check", text);
    out << "truncation: " << text << '\n';
  }

  CsvWriter fig4(output_path(cfg, "fig4.csv"), meta4, kScanColumns);
  const PiCurve curve = pi_sector_curve(base, omegas, opts);
  for (const auto& pt : curve.points) {
    fig4.row({pt.lambda_eb, pt.omega_rabi, pt.e_pi_over_te, pi, pt.boson_number, pt.w_overlap, pt.gap_pi_over_omega_b,
              gap_over_omega_d(base, pt.omega_rabi, pt.gap_pi_over_omega_b)});
  }
  fig4.comment("omega_critical_rad_s", curve.omega_critical ? format_number(*curve.omega_critical) : "not bracketed");
  out << "wrote " << fig2.path() << ", " << fig3.path() << ", " << fig4.path() << '\n';
  return kOk;
}

int cmd_protocol(const RunConfig& cfg, std::ostream& out) {
  const PhysicalParams p = cfg.params(4);
  print_warnings(p, out);
  const RunSettings& r = cfg.run;
  const DerivedParams d = derive(p);

  DriveSpec drive;
  const int j = r.q_d_index.value_or(p.n_sites / 2);
  drive.q_d = 2.0 * pi * j / p.n_sites;
  drive.omega_drive = r.omega_drive.value_or(std::abs(d.omega_d));
  drive.beta_p = r.beta_p.value_or(r.beta_ratio * std::abs(d.omega_d));
  drive.envelope = r.envelope == "cosine_ramp" ? Envelope::cosine_ramp : Envelope::constant;
  drive.ramp_time = r.ramp_time;
  if (drive.beta_p > 0.1 * std::abs(d.omega_d)) {
    out << "warning: beta_p = " << format_number(drive.beta_p) << " rad/s exceeds 0.1 |omega_d| = "
        << format_number(0.1 * std::abs(d.omega_d)) << " rad/s; the rotating-wave picture does not apply\n";
  }
  const double tau = rwa_preparation_time(drive.beta_p);
  const double t_final = r.t_final.value_or(tau);

  SimulationOptions sim;
  sim.dt = r.dt;
  sim.record_stride = r.record_stride;
  sim.steps_per_period = r.steps_per_period;

  Meta meta = common_meta(cfg, p, "protocol");
  meta.emplace_back("q_d_rad", format_number(drive.q_d));
  meta.emplace_back("beta_p_rad_s", format_number(drive.beta_p));
  meta.emplace_back("tau_prep_s", format_number(tau));
  meta.emplace_back("omega_drive_rad_s", format_number(drive.omega_drive));
  meta.emplace_back("omega_d_rad_s", format_number(d.omega_d) + " (signed; default carrier is |omega_d|)");
  meta.emplace_back("envelope", r.envelope);
  meta.emplace_back("dt_s", format_number(default_time_step(p, drive, sim)));
  CsvWriter csv(output_path(cfg, "trace.csv"), meta,
                {"time_s", "fidelity", "rwa_sin2", "vacuum_population", "leakage", "norm_drift"});
  const FidelityTrace trace = simulate_drive(p, drive, t_final, sim);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double s = std::sin(drive.beta_p * trace.times[i]);
    csv.row({trace.times[i], trace.fidelity[i], s * s, trace.vacuum_population[i], trace.leakage[i],
             trace.norm_drift[i]});
  }
  out << "tau_prep = " << format_number(tau) << " s, peak fidelity " << format_number(trace.peak_fidelity())
      << ", final fidelity " << format_number(trace.fidelity.back()) << '\n';
  out << "wrote " << csv.path() << '\n';

  if (!r.detuning_offsets.empty()) {
    Meta rmeta = common_meta(cfg, p, "protocol");
    rmeta.emplace_back("beta_p_rad_s", format_number(drive.beta_p));
    rmeta.emplace_back("window_s", format_number(pi / drive.beta_p));
    CsvWriter rob(output_path(cfg, "robustness.csv"), rmeta, {"detuning_offset", "peak_fidelity", "omega_drive_rad_s"});
    const auto points = detuning_robustness(p, drive, r.detuning_offsets, sim, r.threads);
    for (const auto& pt : points) rob.row({pt.offset, pt.peak_fidelity, pt.omega_drive});
    out << "wrote " << rob.path() << '\n';
  }
  return kOk;
}

int cmd_sweetspot_check(const RunConfig& cfg, std::ostream& out) {
  const PhysicalParams base = cfg.params(6);
  print_warnings(base, out);
  if (!is_sweet_spot(base)) throw SweetSpotRequiredError("sweetspot-check: physical.delta must be the sweet-spot detuning");
  if (base.n_sites % 2 != 0) throw DomainError("sweetspot-check: run.n_sites must be even");
  bool all = true;

  {
    const DerivedParams d = derive(base);
    const double g = d.g_b;
    std::mt19937_64 rng(cfg.run.seed);
    std::uniform_real_distribution<double> q(-pi, pi);
    double worst = 0.0;
    for (int i = 0; i < 10'000; ++i) worst = std::max(worst, std::abs(vertex_ss(g, base.omega_b, pi, q(rng))));
    const double bound = 1e-14 * g * base.omega_b;
    const bool ok = worst <= bound;
    all = all && ok;
    out << (ok ? "PASS" : "FAIL") << "  vertex zero line: max |gamma(pi, q)| = " << format_number(worst)
        << " rad/s over 10000 q (bound " << format_number(bound) << ")\n";
  }

  std::vector<double> alphas;
  if (cfg.run.alpha_grid) {
    alphas = *cfg.run.alpha_grid;
  } else {
    for (int i = 1; i <= 10; ++i) alphas.push_back(0.01 * i);
  }
  const auto bosons = std::make_shared<const BosonSpace>(base.n_sites, base.max_bosons);
  const Momentum k_pi = Momentum::from_index(base.n_sites / 2, base.n_sites);
  for (double alpha : alphas) {
    PhysicalParams p = base;
    p.alpha = alpha;
    const DerivedParams d = derive(p);
    const auto h = sector_operator(p, k_pi, TermSwitches{true, true, true}, bosons);
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(h.dimension()));
    psi[static_cast<Eigen::Index>(h.basis().vacuum_index())] = 1.0;
    const double residual = (h.apply(psi) - (d.eps0 - 2.0 * std::abs(d.t_e)) * psi).norm();
    const double bound = 1e-10 * std::abs(d.t_e);
    const bool ok = residual <= bound || (d.t_e == 0.0 && residual == 0.0);
    all = all && ok;
    out << (ok ? "PASS" : "FAIL") << "  eigenstate residual at alpha " << format_number(alpha) << " (lambda "
        << format_number(d.lambda_eb) << "): " << format_number(residual) << " rad/s (bound " << format_number(bound)
        << ")\n";
  }
  return all ? kOk : kRuntimeFailure;
}

int dispatch(const std::string& command, const std::string& config_path, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig cfg = load_config(config_path);
    if (command == "derive") return cmd_derive(cfg, out);
    if (command == "scan") return cmd_scan(cfg, out);
    if (command == "protocol") return cmd_protocol(cfg, out);
    if (command == "sweetspot-check") return cmd_sweetspot_check(cfg, out);
    err << "error: unknown command '" << command << "'\n";
    return kUsageError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const SingularParameterError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const SweetSpotRequiredError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const InvalidMomentumError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}

}  // namespace rydw::cli
