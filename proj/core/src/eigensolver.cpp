#include "rydw/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "rydw/errors.hpp"

namespace rydw {

namespace {

// Number of eigenvalues of the symmetric tridiagonal (d, e) below x.
int sturm_count(const std::vector<double>& d, const std::vector<double>& e, double x) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double off = i == 0 ? 0.0 : e[i - 1] * e[i - 1];
    q = d[i] - x - (i == 0 ? 0.0 : off / q);
    if (q == 0.0) q = -std::numeric_limits<double>::min();
    if (q < 0.0) ++count;
  }
  return count;
}

double lowest_tridiagonal_eigenvalue(const std::vector<double>& d, const std::vector<double>& e) {
  double lo = std::numeric_limits<double>::max();
  double hi = -std::numeric_limits<double>::max();
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < d.size() ? std::abs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(d, e, mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Eigenvector of (d, e) for eigenvalue `theta` by inverse iteration, using
// tridiagonal LU with partial pivoting.
std::vector<double> tridiagonal_eigenvector(const std::vector<double>& d, const std::vector<double>& e,
                                            double theta) {
  const std::size_t n = d.size();
  std::vector<double> x(n, 1.0);
  if (n == 1) return x;

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(d[i]) + (i + 1 < n ? std::abs(e[i]) : 0.0));
  const double tiny = std::max(scale, 1.0) * std::numeric_limits<double>::epsilon();

  std::vector<double> dl(e.begin(), e.begin() + static_cast<long>(n - 1));
  std::vector<double> du(dl);
  std::vector<double> dd(n);
  std::vector<double> du2(n, 0.0);
  std::vector<std::size_t> piv(n);
  for (std::size_t i = 0; i < n; ++i) {
    dd[i] = d[i] - theta;
    piv[i] = i;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(dd[i]) >= std::abs(dl[i])) {
      if (dd[i] == 0.0) dd[i] = tiny;
      const double f = dl[i] / dd[i];
      dl[i] = f;
      dd[i + 1] -= f * du[i];
    } else {
      const double f = dd[i] / dl[i];
      dd[i] = dl[i];
      dl[i] = f;
      const double tmp = du[i];
      du[i] = dd[i + 1];
      dd[i + 1] = tmp - f * dd[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du[i + 1];
      }
      piv[i] = i + 1;
    }
  }
  if (dd[n - 1] == 0.0) dd[n - 1] = tiny;

  auto solve = [&](std::vector<double>& b) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const std::size_t ip = piv[i];
      const double tmp = b[i + 1 - ip + i] - dl[i] * b[ip];
      b[i] = b[ip];
      b[i + 1] = tmp;
    }
    b[n - 1] /= dd[n - 1];
    b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / dd[n - 2];
    for (std::size_t i = n - 2; i-- > 0;) {
      b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / dd[i];
    }
    double norm = 0.0;
    for (double v : b) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : b) v /= norm;
  };
  for (int it = 0; it < 3; ++it) solve(x);
  return x;
}

void orthogonalize(Vector& w, const std::vector<Vector>& basis) {
  for (const auto& q : basis) w -= q * q.dot(w);
}

struct LevelOutcome {
  double value;
  Vector vector;
  double residual;
  bool converged;
};

class LanczosLevel {
public:
  LanczosLevel(const LinearOperator& op, const std::vector<Vector>& locked, const LanczosOptions& opt,
               int& budget, std::vector<double>* history)
      : op_(op), locked_(locked), opt_(opt), budget_(budget), history_(history) {}

  LevelOutcome run(Vector start) {
    const auto dim = static_cast<std::size_t>(op_.dimension());
    const std::size_t free_dim = dim - locked_.size();
    LevelOutcome best{std::numeric_limits<double>::infinity(), start, std::numeric_limits<double>::infinity(),
                      false};
    Vector q = std::move(start);
    while (budget_ > 0) {
      if (!prepare(q)) q = random_unit_vector(dim, opt_.seed + 7919u * (locked_.size() + 1) + restarts_);
      const auto cap = static_cast<std::size_t>(std::max(2, opt_.krylov_max));
      const std::size_t max_steps = std::min(cap, free_dim);

      basis_.clear();
      diag_.clear();
      off_.clear();
      basis_.push_back(q);
      Vector w(q.size());
      bool restart = false;
      while (!restart) {
        if (budget_ <= 0) {
          // Out of budget mid-cycle: keep the Lanczos estimate as the best so far.
          if (!diag_.empty() && last_estimate_ < best.residual) {
            const auto s = tridiagonal_eigenvector(diag_, off_, last_theta_);
            Vector x = Vector::Zero(static_cast<Eigen::Index>(dim));
            for (std::size_t i = 0; i < s.size(); ++i) x += s[i] * basis_[i];
            best = {last_theta_, x.normalized(), last_estimate_, false};
          }
          break;
        }
        op_.apply(std::span<const Complex>(basis_.back().data(), dim), std::span<Complex>(w.data(), dim));
        --budget_;
        // Reorthogonalize twice against the Krylov basis and the locked levels.
        const double alpha = basis_.back().dot(w).real();
        for (int pass = 0; pass < 2; ++pass) {
          orthogonalize(w, locked_);
          orthogonalize(w, basis_);
        }
        diag_.push_back(alpha);
        const double beta = w.norm();

        const double theta = lowest_tridiagonal_eigenvalue(diag_, off_);
        if (history_ != nullptr) history_->push_back(theta);
        const auto s = tridiagonal_eigenvector(diag_, off_, theta);
        const double estimate = std::abs(beta * s.back());
        last_theta_ = theta;
        last_estimate_ = estimate;
        const double target = opt_.tol * std::max(1.0, std::abs(theta));
        const bool exhausted = beta <= 1e-12 * std::max(1.0, std::abs(theta)) || basis_.size() >= max_steps;

        if (estimate <= 0.5 * target || exhausted) {
          LevelOutcome cand = ritz(s);
          if (cand.residual < best.residual) best = cand;
          if (cand.residual <= target) {
            cand.converged = true;
            return cand;
          }
          q = cand.vector;
          ++restarts_;
          restart = true;
          break;
        }
        off_.push_back(beta);
        basis_.push_back(w / beta);
      }
      if (!restart) break;
    }
    return best;
  }

private:
  bool prepare(Vector& q) const {
    for (int pass = 0; pass < 2; ++pass) orthogonalize(q, locked_);
    const double n = q.norm();
    if (!(n > 1e-8)) return false;
    q /= n;
    return true;
  }

  LevelOutcome ritz(const std::vector<double>& s) {
    const auto dim = static_cast<std::size_t>(op_.dimension());
    Vector x = Vector::Zero(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < s.size(); ++i) x += s[i] * basis_[i];
    for (int pass = 0; pass < 2; ++pass) orthogonalize(x, locked_);
    x.normalize();
    Vector hx(x.size());
    op_.apply(std::span<const Complex>(x.data(), dim), std::span<Complex>(hx.data(), dim));
    --budget_;
    const double value = x.dot(hx).real();
    const double residual = (hx - value * x).norm();
    return {value, std::move(x), residual, false};
  }

  const LinearOperator& op_;
  const std::vector<Vector>& locked_;
  const LanczosOptions& opt_;
  int& budget_;
  std::vector<double>* history_;
  std::vector<Vector> basis_;
  std::vector<double> diag_;
  std::vector<double> off_;
  std::uint64_t restarts_ = 0;
  double last_theta_ = 0.0;
  double last_estimate_ = std::numeric_limits<double>::infinity();
};

}  // namespace

Vector random_unit_vector(std::size_t dimension, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector v(static_cast<Eigen::Index>(dimension));
  for (auto& x : v) x = Complex{dist(rng), dist(rng)};
  v.normalize();
  return v;
}

EigResult lowest_eigenpairs(const LinearOperator& op, const LanczosOptions& options) {
  const std::size_t dim = op.dimension();
  if (options.count < 1) throw DomainError("lowest_eigenpairs: count must be >= 1");
  if (static_cast<std::size_t>(options.count) > dim) {
    throw DomainError("lowest_eigenpairs: count exceeds the operator dimension");
  }

  EigResult result;
  int budget = options.max_iter;
  std::vector<Vector> locked;
  std::vector<double> values;
  std::vector<double> residuals;
  for (int level = 0; level < options.count; ++level) {
    std::vector<double>* history = (options.record_history && level == 0) ? &result.ritz_history : nullptr;
    LanczosLevel solver(op, locked, options, budget, history);
    LevelOutcome out = solver.run(random_unit_vector(dim, options.seed + static_cast<std::uint64_t>(level)));
    if (!out.converged) {
      std::ostringstream msg;
      msg << "Lanczos did not converge for level " << level << " after " << options.max_iter
          << " operator applications (best value " << out.value << ", residual " << out.residual
          << ", dimension " << dim << ")";
      throw ConvergenceError(msg.str(), out.value, out.residual, options.max_iter - budget);
    }
    locked.push_back(std::move(out.vector));
    values.push_back(out.value);
    residuals.push_back(out.residual);
  }

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  for (auto i : order) {
    result.eigenvalues.push_back(values[i]);
    result.eigenvectors.push_back(std::move(locked[i]));
    result.residuals.push_back(residuals[i]);
  }
  result.iterations = options.max_iter - budget;
  result.converged = true;
  return result;
}

Eigen::MatrixXcd assemble_dense(const LinearOperator& op, std::size_t limit) {
  const std::size_t dim = op.dimension();
  if (dim > limit) {
    throw CapacityError("dense assembly of dimension " + std::to_string(dim) + " exceeds limit " +
                        std::to_string(limit));
  }
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd h(n, n);
  Vector e = Vector::Zero(n);
  Vector col(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    op.apply(std::span<const Complex>(e.data(), dim), std::span<Complex>(col.data(), dim));
    h.col(j) = col;
    e[j] = 0.0;
  }
  return h;
}

EigResult dense_spectrum(const Eigen::MatrixXcd& h, bool with_vectors) {
  EigResult result;
  const auto mode = with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  if (h.imag().cwiseAbs().maxCoeff() == 0.0) {
    const Eigen::MatrixXd real = h.real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(real, mode);
    result.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    if (with_vectors) {
      for (Eigen::Index i = 0; i < real.rows(); ++i) {
        result.eigenvectors.emplace_back(es.eigenvectors().col(i).cast<Complex>());
      }
    }
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, mode);
    result.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    if (with_vectors) {
      for (Eigen::Index i = 0; i < h.rows(); ++i) result.eigenvectors.emplace_back(es.eigenvectors().col(i));
    }
  }
  for (std::size_t i = 0; i < result.eigenvectors.size(); ++i) {
    const Vector& v = result.eigenvectors[i];
    result.residuals.push_back((h * v - result.eigenvalues[i] * v).norm());
  }
  result.converged = true;
  return result;
}

EigResult dense_spectrum(const LinearOperator& op, std::size_t limit, bool with_vectors) {
  return dense_spectrum(assemble_dense(op, limit), with_vectors);
}

}  // namespace rydw
