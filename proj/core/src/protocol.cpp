#include "rydw/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "parallel.hpp"
#include "rydw/errors.hpp"

namespace rydw {

namespace {

using std::numbers::pi;

// Combined basis: zero-excitation states first (boson rank r -> r), then
// one-excitation states (site n, rank r -> D + n D + r).
struct CombinedSpace {
  std::shared_ptr<const BosonSpace> bosons;
  std::size_t d = 0;
  int n_sites = 0;

  std::size_t size() const { return d * static_cast<std::size_t>(n_sites + 1); }
  std::size_t excited(int site, std::size_t rank) const { return d + static_cast<std::size_t>(site) * d + rank; }
};

CombinedSpace make_space(int n_sites, int max_bosons, std::size_t limit) {
  CombinedSpace s;
  s.bosons = std::make_shared<const BosonSpace>(n_sites, max_bosons);
  s.d = s.bosons->size();
  s.n_sites = n_sites;
  if (s.size() > limit) {
    throw CapacityError("protocol space of dimension " + std::to_string(s.size()) + " exceeds limit " +
                        std::to_string(limit));
  }
  return s;
}

SparseMatrix drive_operator(const CombinedSpace& s, double q_d) {
  std::vector<Eigen::Triplet<Complex>> trip;
  trip.reserve(2 * s.d * static_cast<std::size_t>(s.n_sites));
  const double norm = 1.0 / std::sqrt(static_cast<double>(s.n_sites));
  for (int n = 0; n < s.n_sites; ++n) {
    const Complex up = norm * std::polar(1.0, -q_d * n);
    for (std::size_t r = 0; r < s.d; ++r) {
      const auto row = static_cast<Eigen::Index>(s.excited(n, r));
      const auto col = static_cast<Eigen::Index>(r);
      trip.emplace_back(row, col, up);
      trip.emplace_back(col, row, std::conj(up));
    }
  }
  const auto dim = static_cast<Eigen::Index>(s.size());
  SparseMatrix f(dim, dim);
  f.setFromTriplets(trip.begin(), trip.end());
  return f;
}

SparseMatrix static_hamiltonian(const PhysicalParams& p, const CombinedSpace& s, TermSwitches sw) {
  const ModelTerms terms = ModelTerms::from(p, sw);
  const SparseMatrix h0 = RealSpaceHamiltonian(RealSpaceBasis(s.bosons, 0), terms).to_sparse();
  const SparseMatrix h1 = RealSpaceHamiltonian(RealSpaceBasis(s.bosons, 1), terms).to_sparse();
  std::vector<Eigen::Triplet<Complex>> trip;
  trip.reserve(static_cast<std::size_t>(h0.nonZeros() + h1.nonZeros()));
  for (Eigen::Index r = 0; r < h0.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(h0, r); it; ++it) trip.emplace_back(it.row(), it.col(), it.value());
  }
  const auto off = static_cast<Eigen::Index>(s.d);
  for (Eigen::Index r = 0; r < h1.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(h1, r); it; ++it) trip.emplace_back(it.row() + off, it.col() + off, it.value());
  }
  const auto dim = static_cast<Eigen::Index>(s.size());
  SparseMatrix h(dim, dim);
  h.setFromTriplets(trip.begin(), trip.end());
  return h;
}

Vector w_state(const CombinedSpace& s, double k) {
  Vector w = Vector::Zero(static_cast<Eigen::Index>(s.size()));
  const double norm = 1.0 / std::sqrt(static_cast<double>(s.n_sites));
  for (int n = 0; n < s.n_sites; ++n) w[static_cast<Eigen::Index>(s.excited(n, 0))] = norm * std::polar(1.0, k * n);
  return w;
}

// psi <- exp(-i tau (c0 H0 + c1 F)) psi by Lanczos on the Krylov space of psi.
class KrylovExp {
public:
  KrylovExp(const SparseMatrix& h0, const SparseMatrix& f, double tol, int max_dim)
      : h0_(h0), f_(f), tol_(tol), max_dim_(max_dim) {}

  void apply(double tau, double c0, double c1, Vector& psi) {
    const double beta0 = psi.norm();
    if (beta0 == 0.0) return;
    const auto n = psi.size();
    basis_.resize(n, max_dim_ + 1);
    alpha_.assign(static_cast<std::size_t>(max_dim_), 0.0);
    beta_.assign(static_cast<std::size_t>(max_dim_), 0.0);
    basis_.col(0) = psi / beta0;
    Vector w(n);
    for (int m = 0; m < max_dim_; ++m) {
      w.noalias() = c0 * (h0_ * basis_.col(m));
      if (c1 != 0.0) w.noalias() += c1 * (f_ * basis_.col(m));
      // Full reorthogonalization, twice.
      for (int pass = 0; pass < 2; ++pass) {
        const Vector proj = basis_.leftCols(m + 1).adjoint() * w;
        w.noalias() -= basis_.leftCols(m + 1) * proj;
        if (pass == 0) alpha_[static_cast<std::size_t>(m)] = proj[m].real();
        else alpha_[static_cast<std::size_t>(m)] += proj[m].real();
      }
      const double b = w.norm();
      beta_[static_cast<std::size_t>(m)] = b;
      const int dim = m + 1;
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(dim, dim);
      for (int i = 0; i < dim; ++i) {
        t(i, i) = alpha_[static_cast<std::size_t>(i)];
        if (i + 1 < dim) t(i, i + 1) = t(i + 1, i) = beta_[static_cast<std::size_t>(i)];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      const Eigen::VectorXcd phases =
          (es.eigenvalues().cast<Complex>() * Complex(0.0, -tau)).array().exp().matrix();
      const Eigen::VectorXcd coeff =
          es.eigenvectors().cast<Complex>() * (phases.asDiagonal() * es.eigenvectors().row(0).transpose().cast<Complex>());
      const bool invariant = b <= 1e-14 * std::max(1.0, std::abs(alpha_[static_cast<std::size_t>(m)]));
      if (invariant || b * std::abs(coeff[dim - 1]) <= tol_ || dim == n) {
        psi.noalias() = beta0 * (basis_.leftCols(dim) * coeff);
        return;
      }
      basis_.col(m + 1) = w / b;
    }
    throw StepSizeError("Krylov exponential did not converge within " + std::to_string(max_dim_) +
                        " vectors; reduce the time step");
  }

private:
  const SparseMatrix& h0_;
  const SparseMatrix& f_;
  double tol_;
  int max_dim_;
  Eigen::MatrixXcd basis_;
  std::vector<double> alpha_;
  std::vector<double> beta_;
};

double period_rate(const PhysicalParams& p, const DriveSpec& drive) {
  return std::max({std::abs(drive.omega_drive), std::abs(derive(p).omega_d), p.omega_b});
}

}  // namespace

double DriveSpec::envelope_at(double t) const {
  if (envelope == Envelope::cosine_ramp && t < ramp_time) return 0.5 * (1.0 - std::cos(pi * t / ramp_time));
  return 1.0;
}

double DriveSpec::amplitude_at(double t) const {
  return 2.0 * beta_p * envelope_at(t) * std::cos(omega_drive * t);
}

void DriveSpec::validate(int n_sites) const {
  Momentum::from_value(q_d, n_sites);
  if (!(beta_p > 0.0) || !std::isfinite(beta_p)) throw DomainError("drive: beta_p must be > 0");
  if (!std::isfinite(omega_drive)) throw DomainError("drive: omega_drive must be finite");
  if (envelope == Envelope::cosine_ramp && !(ramp_time > 0.0)) {
    throw DomainError("drive: cosine ramp needs ramp_time > 0");
  }
}

DriveSpec resonant_drive(const PhysicalParams& p, double beta_ratio) {
  const double wd = std::abs(derive(p).omega_d);
  DriveSpec d;
  d.q_d = pi;
  d.omega_drive = wd;
  d.beta_p = beta_ratio * wd;
  return d;
}

double FidelityTrace::peak_fidelity() const {
  return fidelity.empty() ? 0.0 : *std::max_element(fidelity.begin(), fidelity.end());
}

double rwa_preparation_time(double beta_p) {
  if (!(beta_p > 0.0)) throw DomainError("rwa_preparation_time: beta_p must be > 0");
  return pi / (2.0 * beta_p);
}

Complex drive_matrix_element(double q_d, int n_sites) {
  const CombinedSpace s = make_space(n_sites, 0, kDefaultMaxDimension);
  Momentum::from_value(q_d, n_sites);
  Vector vacuum = Vector::Zero(static_cast<Eigen::Index>(s.size()));
  vacuum[0] = 1.0;
  const Vector driven = drive_operator(s, q_d) * vacuum;
  return w_state(s, pi).dot(driven);
}

double default_time_step(const PhysicalParams& p, const DriveSpec& drive, const SimulationOptions& options) {
  if (options.dt > 0.0) return options.dt;
  return 2.0 * pi / (period_rate(p, drive) * std::max(1, options.steps_per_period));
}

FidelityTrace simulate_drive(const PhysicalParams& p, const DriveSpec& drive, double t_final,
                             const SimulationOptions& options) {
  p.validate();
  drive.validate(p.n_sites);
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw DomainError("simulate_drive: t_final must be >= 0");
  if (options.record_stride < 1) throw DomainError("simulate_drive: record_stride must be >= 1");

  const CombinedSpace space = make_space(p.n_sites, p.max_bosons, options.max_dimension);
  const SparseMatrix h0 = static_hamiltonian(p, space, options.switches);
  const SparseMatrix f = drive_operator(space, drive.q_d);
  const Vector target = w_state(space, pi);

  const double dt_nominal = default_time_step(p, drive, options);
  const auto steps = static_cast<long>(std::max(1.0, std::ceil(t_final / dt_nominal - 1e-9)));
  const double dt = t_final / static_cast<double>(steps);

  Vector psi = Vector::Zero(static_cast<Eigen::Index>(space.size()));
  psi[0] = 1.0;

  FidelityTrace trace;
  auto record = [&](double t) {
    const double fid = std::norm(target.dot(psi));
    const double vac = std::norm(psi[0]);
    const double drift = std::abs(psi.squaredNorm() - 1.0);
    if (drift > options.norm_tolerance) {
      throw StepSizeError("norm drift " + std::to_string(drift) + " at t = " + std::to_string(t) +
                          " s exceeds tolerance; reduce dt");
    }
    trace.times.push_back(t);
    trace.fidelity.push_back(fid);
    trace.vacuum_population.push_back(vac);
    trace.leakage.push_back(std::max(0.0, 1.0 - fid - vac));
    trace.norm_drift.push_back(drift);
  };
  record(0.0);
  if (t_final == 0.0) return trace;

  // Commutator-free fourth-order Magnus: two exponentials per step built from
  // the drive sampled at the Gauss-Legendre nodes.
  const double s3 = std::sqrt(3.0);
  const double a1 = (3.0 - 2.0 * s3) / 12.0;
  const double a2 = (3.0 + 2.0 * s3) / 12.0;
  const double c1 = 0.5 - s3 / 6.0;
  const double c2 = 0.5 + s3 / 6.0;
  KrylovExp expm(h0, f, options.krylov_tol, options.krylov_max);
  for (long i = 0; i < steps; ++i) {
    const double t = dt * static_cast<double>(i);
    const double b1 = drive.amplitude_at(t + c1 * dt);
    const double b2 = drive.amplitude_at(t + c2 * dt);
    expm.apply(dt, 0.5, a2 * b1 + a1 * b2, psi);
    expm.apply(dt, 0.5, a1 * b1 + a2 * b2, psi);
    if ((i + 1) % options.record_stride == 0 || i + 1 == steps) {
      record(dt * static_cast<double>(i + 1));
    } else if (std::abs(psi.squaredNorm() - 1.0) > options.norm_tolerance) {
      record(dt * static_cast<double>(i + 1));
    }
  }
  return trace;
}

std::vector<RobustnessPoint> detuning_robustness(const PhysicalParams& base, const DriveSpec& drive,
                                                 std::span<const double> offsets,
                                                 const SimulationOptions& options, int threads) {
  const double delta_ss = sweet_spot_detuning(base.c3_over_hbar, base.a);
  std::vector<RobustnessPoint> out(offsets.size());
  detail::parallel_for(offsets.size(), threads, [&](std::size_t i) {
    PhysicalParams p = base;
    p.delta = delta_ss * (1.0 + offsets[i]);
    DriveSpec d = drive;
    d.omega_drive = std::abs(derive(p).omega_d);
    const FidelityTrace trace = simulate_drive(p, d, pi / d.beta_p, options);
    out[i] = {offsets[i], trace.peak_fidelity(), d.omega_drive};
  });
  return out;
}

}  // namespace rydw
