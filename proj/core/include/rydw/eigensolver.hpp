#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "rydw/hamiltonian.hpp"

namespace rydw {

struct EigResult {
  std::vector<double> eigenvalues;   // ascending, rad/s
  std::vector<Vector> eigenvectors;  // orthonormal, same order
  std::vector<double> residuals;     // ||H v - E v||
  int iterations = 0;                // operator applications
  bool converged = false;
  /// Lowest Ritz value after every Lanczos step of the first level.
  std::vector<double> ritz_history;
};

struct LanczosOptions {
  int count = 1;
  /// Accept a pair once ||H v - E v|| <= tol * max(1, |E|).
  double tol = 1e-10;
  /// Budget of operator applications over all levels.
  int max_iter = 50'000;
  std::uint64_t seed = 20210807;
  /// Krylov basis size before an explicit restart from the current Ritz vector.
  int krylov_max = 250;
  bool record_history = false;
};

/// Lowest `count` eigenpairs of a Hermitian operator. Each level is a
/// separate fully reorthogonalized Lanczos run deflated against the levels
/// already locked, which resolves degenerate eigenvalues one copy at a time.
/// Throws ConvergenceError once the iteration budget is exhausted.
EigResult lowest_eigenpairs(const LinearOperator& op, const LanczosOptions& options = {});

inline constexpr std::size_t kDenseLimit = 4000;

/// Column-by-column dense assembly of `op` (op applied to unit vectors).
Eigen::MatrixXcd assemble_dense(const LinearOperator& op, std::size_t limit = kDenseLimit);

/// Full spectrum by dense Hermitian diagonalization.
EigResult dense_spectrum(const LinearOperator& op, std::size_t limit = kDenseLimit,
                         bool with_vectors = false);
EigResult dense_spectrum(const Eigen::MatrixXcd& h, bool with_vectors = false);

/// Random complex unit vector, reproducible from `seed`.
Vector random_unit_vector(std::size_t dimension, std::uint64_t seed);

}  // namespace rydw
