#pragma once

// One-excitation (and zero-excitation) Hilbert spaces tensored with
// dispersionless bosons truncated at total occupation M.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace rydw {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;

inline constexpr std::size_t kDefaultMaxDimension = 4'000'000;

/// Occupation numbers m_0..m_{N-1} of the N trap bosons.
struct BosonConfig {
  std::vector<int> occupations;
  int total() const;
  friend bool operator==(const BosonConfig&, const BosonConfig&) = default;
};

/// All boson configurations with total occupation <= M, in ascending
/// lexicographic order of the occupation vector, with an O(N) ranking.
class BosonSpace {
public:
  BosonSpace(int n_sites, int max_bosons, std::size_t max_dimension = kDefaultMaxDimension);

  int n_sites() const { return n_sites_; }
  int max_bosons() const { return max_bosons_; }
  std::size_t size() const { return size_; }

  std::span<const std::uint8_t> config(std::size_t index) const {
    return {occupations_.data() + index * n_sites_, static_cast<std::size_t>(n_sites_)};
  }
  int total(std::size_t index) const { return totals_[index]; }

  /// Position of `occ` in the ordering; `occ` must have total <= M.
  std::size_t rank(std::span<const std::uint8_t> occ) const;

  /// Number of configurations of `sites` sites with total <= `budget`: C(sites + budget, sites).
  static std::uint64_t count(int sites, int budget);

private:
  int n_sites_;
  int max_bosons_;
  std::size_t size_;
  std::vector<std::uint8_t> occupations_;
  std::vector<int> totals_;
  std::vector<std::uint64_t> table_;  // (sites, budget) -> count
};

std::vector<BosonConfig> enumerate_boson_configs(int n_sites, int max_bosons,
                                                 std::size_t max_dimension = kDefaultMaxDimension);

/// Total quasimomentum 2 pi j / N with j in (-N/2, N/2].
struct Momentum {
  int j = 0;
  int n_sites = 1;

  double value() const;
  bool is_pi() const { return 2 * j == n_sites; }

  /// Throws InvalidMomentumError unless k is 2 pi j / N within 1e-9.
  static Momentum from_value(double k, int n_sites);
  static Momentum from_index(int j, int n_sites);
};

/// Every allowed momentum of an N-site ring, ascending.
std::vector<Momentum> brillouin_zone(int n_sites);

/// Real-space basis with 0 or 1 excitations. One-excitation index is
/// site * D + rank(bosons), D = number of boson configurations.
class RealSpaceBasis {
public:
  RealSpaceBasis(std::shared_ptr<const BosonSpace> bosons, int excitations);

  int excitations() const { return excitations_; }
  int n_sites() const { return bosons_->n_sites(); }
  std::size_t size() const;
  const BosonSpace& bosons() const { return *bosons_; }
  std::shared_ptr<const BosonSpace> boson_space() const { return bosons_; }

  /// Excitation site of state i, or -1 in the zero-excitation sector.
  int site(std::size_t index) const;
  std::size_t boson_index(std::size_t index) const;
  std::size_t index(int site, std::size_t boson_index) const;

private:
  std::shared_ptr<const BosonSpace> bosons_;
  int excitations_;
};

/// One-excitation states of total quasimomentum K. Representative c stands
/// for N^{-1/2} sum_n e^{iKn} T^n |excitation at 0; c>.
class SectorBasis {
public:
  SectorBasis(std::shared_ptr<const BosonSpace> bosons, Momentum k);

  Momentum momentum() const { return k_; }
  int n_sites() const { return bosons_->n_sites(); }
  std::size_t size() const { return bosons_->size(); }
  const BosonSpace& bosons() const { return *bosons_; }
  std::shared_ptr<const BosonSpace> boson_space() const { return bosons_; }

  /// Index of the zero-boson representative (the bare Bloch state).
  std::size_t vacuum_index() const { return 0; }

private:
  std::shared_ptr<const BosonSpace> bosons_;
  Momentum k_;
};

SectorBasis momentum_sector_basis(int n_sites, int max_bosons, double k,
                                  std::size_t max_dimension = kDefaultMaxDimension);

/// Maps a sector vector to the one-excitation real-space basis.
Vector embed(const SectorBasis& sector, const RealSpaceBasis& real, const Vector& v);

/// One-site translation T: excitation n -> n+1, boson m_i -> m_{i+1}.
Vector translate(const RealSpaceBasis& basis, const Vector& v);

struct TranslationEigenvalue {
  Complex phase;        // <psi|T|psi> / <psi|psi>
  double momentum;      // -arg(phase)
  bool is_eigenstate;   // false when |phase| < 1 - 1e-6
};

TranslationEigenvalue translation_eigenvalue(const Vector& v, const RealSpaceBasis& basis);

/// Rotates occupations so that site `shift` lands on site 0: out[i] = in[(i + shift) mod N].
void rotate_config(std::span<const std::uint8_t> in, int shift, std::span<std::uint8_t> out);

}  // namespace rydw
