#pragma once

// Matrix-free action of H = H0 + H_B + H_P on real-space and
// momentum-sector bases.
//
//   H0  = eps0 sum_n c+_n c_n - t_e sum_n (c+_{n+1} c_n + h.c.) + omega_b sum_n b+_n b_n
//   H_B = g_b omega_b sum_n c+_n c_n (phi_{n+1} - phi_{n-1})
//   H_P = g_p omega_b sum_n (c+_{n+1} c_n + h.c.)(phi_{n+1} - phi_n),   phi_n = b_n + b+_n
//
// Raising a boson beyond the total truncation M annihilates the component,
// so every operator here is the exact compression P H P onto the truncated space.

#include <span>

#include <Eigen/SparseCore>

#include "rydw/hilbert.hpp"
#include "rydw/params.hpp"

namespace rydw {

using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

/// Hermitian operator on C^dimension, applied without storing a matrix.
class LinearOperator {
public:
  virtual ~LinearOperator() = default;
  virtual std::size_t dimension() const = 0;
  /// out = H in. Throws DimensionMismatchError on size mismatch.
  virtual void apply(std::span<const Complex> in, std::span<Complex> out) const = 0;

  Vector apply(const Vector& in) const;

protected:
  void check_sizes(std::size_t in, std::size_t out) const;
};

struct TermSwitches {
  bool breathing = true;  // H_B
  bool peierls = true;    // H_P
  bool onsite = false;    // include eps0 for each excitation
};

/// Coefficients entering the operator, all in rad/s except the dimensionless g's.
struct ModelTerms {
  double eps0 = 0.0;
  double t_e = 0.0;
  double omega_b = 0.0;
  double g_b = 0.0;
  double g_p = 0.0;
  TermSwitches switches;

  static ModelTerms from(const PhysicalParams& p, TermSwitches switches = {});
  static ModelTerms from(const DerivedParams& d, double omega_b, TermSwitches switches = {});
};

class RealSpaceHamiltonian final : public LinearOperator {
public:
  RealSpaceHamiltonian(RealSpaceBasis basis, ModelTerms terms);

  std::size_t dimension() const override { return basis_.size(); }
  using LinearOperator::apply;
  void apply(std::span<const Complex> in, std::span<Complex> out) const override;

  const RealSpaceBasis& basis() const { return basis_; }
  const ModelTerms& terms() const { return terms_; }
  SparseMatrix to_sparse() const;

private:
  RealSpaceBasis basis_;
  ModelTerms terms_;
};

class SectorHamiltonian final : public LinearOperator {
public:
  SectorHamiltonian(SectorBasis basis, ModelTerms terms);

  std::size_t dimension() const override { return basis_.size(); }
  using LinearOperator::apply;
  void apply(std::span<const Complex> in, std::span<Complex> out) const override;

  const SectorBasis& basis() const { return basis_; }
  const ModelTerms& terms() const { return terms_; }
  SparseMatrix to_sparse() const;

private:
  SectorBasis basis_;
  ModelTerms terms_;
};

/// Sector operator for p.n_sites sites and truncation p.max_bosons at quasimomentum k.
SectorHamiltonian sector_operator(const PhysicalParams& p, double k, TermSwitches switches = {});
SectorHamiltonian sector_operator(const PhysicalParams& p, Momentum k, TermSwitches switches = {},
                                  std::shared_ptr<const BosonSpace> bosons = nullptr);

RealSpaceHamiltonian real_space_operator(const PhysicalParams& p, int excitations,
                                         TermSwitches switches = {});

/// Sweet-spot excitation-boson vertex 2 i g omega_b (sin k - sin q - sin(k+q)).
Complex vertex_ss(double g, double omega_b, double k, double q);

}  // namespace rydw
