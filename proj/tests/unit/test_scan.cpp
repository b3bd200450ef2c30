#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rydw/errors.hpp"
#include "rydw/scan.hpp"

using namespace rydw;
using std::numbers::pi;

namespace {

PhysicalParams base(int n, int m, double khz) {
  PhysicalParams p;
  p.a = 4.0;
  p.omega_b = 2.0 * pi * khz * 1e3;
  p.n_sites = n;
  p.max_bosons = m;
  return at_sweet_spot(p);
}

// Ground energy of the full real-space problem (no symmetry), in units of |t_e|.
double oracle_ground(const PhysicalParams& p) {
  const DerivedParams d = derive(p);
  const oracle::Couplings c{p.n_sites, p.max_bosons, 0.0, d.t_e, p.omega_b, d.g_b, d.g_p, false};
  return oracle::eigenvalues(oracle::real_space_matrix(c, 1)).front() / std::abs(d.t_e);
}

std::vector<double> alphas(int count, double step) {
  std::vector<double> g;
  for (int i = 1; i <= count; ++i) g.push_back(step * i);
  return g;
}

}  // namespace

TEST(Scan, BelowCriticalPointIsBareBlochState) {
  PhysicalParams p = base(6, 4, 2.0);
  p.alpha = 0.05;
  const ScanPoint pt = solve_point(p);
  EXPECT_NEAR(pt.e_gs_over_te, -2.0, 1e-9);
  EXPECT_DOUBLE_EQ(pt.k_gs, pi);
  EXPECT_LT(pt.boson_number, 1e-9);
  EXPECT_GT(pt.w_overlap, 1.0 - 1e-9);
  EXPECT_NEAR(pt.lambda_eb, derive(p).lambda_eb, 1e-15);
  EXPECT_NEAR(pt.omega_rabi, p.alpha * p.delta, 1e-6);
  ASSERT_EQ(pt.sector_energies.size(), 6u);
  for (double e : pt.sector_energies) EXPECT_GE(e, -2.0 - 1e-9);
}

TEST(Scan, ZeroCouplingLimit) {
  PhysicalParams p = base(6, 3, 2.0);
  p.alpha = 0.0;
  const ScanPoint pt = solve_point(p);
  EXPECT_NEAR(pt.e_gs_over_te, -2.0, 1e-12);
  EXPECT_DOUBLE_EQ(pt.k_gs, pi);
  EXPECT_EQ(pt.lambda_eb, 0.0);
  EXPECT_NEAR(pt.gap_pi_over_omega_b, 1.0, 1e-10);
  EXPECT_NEAR(spectral_gap_pi(p), 1.0, 1e-10);
}

TEST(Scan, GapIsOneBosonWithoutCoupling) {
  PhysicalParams p = base(8, 4, 2.0);
  p.alpha = 0.05;
  EXPECT_NEAR(spectral_gap_pi(p, {}, TermSwitches{false, false, false}), 1.0, 1e-10);
}

TEST(Scan, GroundEnergyNeverAboveBandMinimum) {
  PhysicalParams p = base(6, 4, 1.0);
  for (double a : {0.02, 0.05, 0.08, 0.1}) {
    p.alpha = a;
    const ScanPoint pt = solve_point(p);
    EXPECT_LE(pt.e_gs_over_te, -2.0 + 1e-9);
    EXPECT_NEAR(pt.e_gs_over_te, oracle_ground(p), 1e-9) << a;
  }
}

TEST(Scan, LocatesLevelCrossing) {
  const PhysicalParams p = base(6, 4, 1.0);
  const auto grid = alphas(10, 0.01);
  const ScanResult r = ground_state_scan(p, grid);
  ASSERT_TRUE(r.lambda_critical.has_value());
  ASSERT_TRUE(r.bracket.has_value());
  EXPECT_EQ(r.bracket->first, 4u);
  EXPECT_EQ(r.bracket->second, 5u);
  const double ac = *r.alpha_critical;
  EXPECT_GT(ac, grid[4]);
  EXPECT_LT(ac, grid[5]);
  EXPECT_NEAR(*r.omega_critical, ac * p.delta, 1e-6 * ac * p.delta);
  PhysicalParams q = p;
  q.alpha = ac;
  EXPECT_NEAR(*r.lambda_critical, derive(q).lambda_eb, 1e-12 * *r.lambda_critical);

  // The real-space oracle sees the flat level below and a lower state above.
  q.alpha = ac * (1.0 - 1e-3);
  EXPECT_NEAR(oracle_ground(q), -2.0, 1e-9);
  q.alpha = ac * (1.0 + 1e-3);
  EXPECT_LT(oracle_ground(q), -2.0 - 1e-7);

  int jumps = 0;
  for (std::size_t i = 1; i < r.points.size(); ++i) {
    if (std::abs(r.points[i].k_gs - r.points[i - 1].k_gs) > 1e-9) ++jumps;
  }
  EXPECT_EQ(jumps, 1);
  for (std::size_t i = r.bracket->second; i < r.points.size(); ++i) {
    EXPECT_GT(r.points[i].k_gs, 0.0);
    EXPECT_LT(r.points[i].k_gs, pi);
    EXPECT_LT(r.points[i].w_overlap, 1e-12);
  }
  EXPECT_FALSE(r.meta.started.empty());
  EXPECT_EQ(r.meta.seed, ScanOptions{}.seed);
}

TEST(Scan, DegenerateMomentumPairsAboveCritical) {
  PhysicalParams p = base(6, 4, 1.0);
  p.alpha = 0.08;
  const ScanPoint pt = solve_point(p);
  const auto zone = brillouin_zone(6);
  for (std::size_t i = 0; i < zone.size(); ++i) {
    for (std::size_t j = 0; j < zone.size(); ++j) {
      if (zone[i].j == -zone[j].j) EXPECT_NEAR(pt.sector_energies[i], pt.sector_energies[j], 1e-10);
    }
  }
}

TEST(Scan, NoCrossingLeavesCriticalEmpty) {
  const PhysicalParams p = base(6, 4, 2.0);
  ScanOptions o;
  const ScanResult r = ground_state_scan(p, alphas(4, 0.01), o);
  EXPECT_FALSE(r.lambda_critical.has_value());
  EXPECT_FALSE(r.bracket.has_value());
}

TEST(Scan, CallbackSeesEveryPointInOrder) {
  const PhysicalParams p = base(4, 3, 2.0);
  std::vector<double> seen;
  ScanOptions o;
  o.on_point = [&](const ScanPoint& pt) { seen.push_back(pt.alpha); };
  const auto grid = alphas(3, 0.02);
  ground_state_scan(p, grid, o);
  EXPECT_EQ(seen, grid);
}

TEST(Scan, ThreadedScanIsIdentical) {
  PhysicalParams p = base(6, 3, 1.0);
  p.alpha = 0.09;
  ScanOptions serial;
  ScanOptions threaded;
  threaded.threads = 3;
  const ScanPoint a = solve_point(p, serial);
  const ScanPoint b = solve_point(p, threaded);
  EXPECT_EQ(a.sector_energies, b.sector_energies);
  EXPECT_EQ(a.boson_number, b.boson_number);
}

TEST(Scan, OmegaParameterization) {
  const PhysicalParams p = base(4, 3, 2.0);
  const std::vector<double> omega = {0.02 * p.delta, 0.04 * p.delta};
  const ScanResult r = ground_state_scan_omega(p, omega);
  ASSERT_EQ(r.points.size(), 2u);
  EXPECT_NEAR(r.points[1].alpha, 0.04, 1e-14);
  EXPECT_NEAR(r.points[1].omega_rabi, omega[1], 1e-6);
}

TEST(Scan, PiSectorCurveFlatThenDeparts) {
  const PhysicalParams p = base(6, 4, 1.0);
  std::vector<double> omega;
  for (double a : alphas(12, 0.01)) omega.push_back(a * p.delta);
  omega.insert(omega.begin(), 0.0);
  const PiCurve curve = pi_sector_curve(p, omega);
  ASSERT_TRUE(curve.omega_critical.has_value());
  EXPECT_NEAR(curve.points.front().e_pi_over_te, -2.0, 1e-12);
  bool departed = false;
  double last = 0.0;
  for (const auto& pt : curve.points) {
    if (pt.omega_rabi < *curve.omega_critical) {
      EXPECT_NEAR(pt.e_pi_over_te, -2.0, kFlatTolerance);
    } else {
      if (departed) EXPECT_LT(pt.e_pi_over_te, last);
      departed = true;
      EXPECT_LT(pt.e_pi_over_te, -2.0 - kFlatTolerance);
    }
    last = pt.e_pi_over_te;
  }
  EXPECT_TRUE(departed);
}

TEST(Scan, TruncationCheckReportsBothCutoffs) {
  PhysicalParams p = base(4, 2, 2.0);
  p.alpha = 0.05;
  const TruncationCheck t = truncation_convergence(p, 2);
  EXPECT_EQ(t.max_bosons_low, 2);
  EXPECT_EQ(t.max_bosons_high, 4);
  EXPECT_NEAR(t.change_over_te(), std::abs(t.e_high_over_te - t.e_low_over_te), 0.0);
  EXPECT_LE(t.e_high_over_te, t.e_low_over_te + 1e-12);  // variational in M
  EXPECT_THROW(truncation_convergence(p, 0), DomainError);
}

TEST(Scan, Preconditions) {
  PhysicalParams p = base(5, 2, 2.0);
  p.alpha = 0.05;
  EXPECT_THROW(solve_point(p), DomainError);
  p = base(6, 2, 2.0);
  p.alpha = 0.05;
  p.delta *= 1.01;
  EXPECT_THROW(solve_point(p), SweetSpotRequiredError);
  const PhysicalParams q = base(4, 2, 2.0);
  const std::vector<double> empty;
  EXPECT_THROW(ground_state_scan(q, empty), DomainError);
  const std::vector<double> unsorted = {0.02, 0.01};
  EXPECT_THROW(ground_state_scan(q, unsorted), DomainError);
}
