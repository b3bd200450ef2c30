#include "rydw/hilbert.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "rydw/errors.hpp"

namespace rydw {

int BosonConfig::total() const { return std::accumulate(occupations.begin(), occupations.end(), 0); }

std::uint64_t BosonSpace::count(int sites, int budget) {
  if (budget < 0) return 0;
  // C(sites + budget, sites), exact in 64-bit for every size we can allocate.
  std::uint64_t c = 1;
  for (int i = 1; i <= sites; ++i) {
    c = c * static_cast<std::uint64_t>(budget + i) / static_cast<std::uint64_t>(i);
  }
  return c;
}

BosonSpace::BosonSpace(int n_sites, int max_bosons, std::size_t max_dimension)
    : n_sites_(n_sites), max_bosons_(max_bosons) {
  if (n_sites < 1) throw DomainError("boson space needs N >= 1");
  if (max_bosons < 0) throw DomainError("boson truncation M must be >= 0");
  if (max_bosons > 255) throw DomainError("boson truncation M must be <= 255");

  // Guard against overflow before asking for the exact count.
  long double approx = 1.0L;
  for (int i = 1; i <= n_sites; ++i) approx *= static_cast<long double>(max_bosons + i) / i;
  if (approx > static_cast<long double>(max_dimension)) {
    throw CapacityError("boson space C(" + std::to_string(n_sites + max_bosons) + ", " +
                        std::to_string(max_bosons) + ") exceeds maximum dimension " +
                        std::to_string(max_dimension));
  }
  size_ = static_cast<std::size_t>(count(n_sites, max_bosons));

  table_.resize(static_cast<std::size_t>(n_sites + 1) * (max_bosons + 1));
  for (int s = 0; s <= n_sites; ++s)
    for (int b = 0; b <= max_bosons; ++b) table_[s * (max_bosons + 1) + b] = count(s, b);

  occupations_.reserve(size_ * n_sites);
  totals_.reserve(size_);
  std::vector<std::uint8_t> occ(n_sites, 0);
  int total = 0;
  // Lexicographic successor: bump the last position that still fits under M
  // and clear everything after it.
  while (true) {
    occupations_.insert(occupations_.end(), occ.begin(), occ.end());
    totals_.push_back(total);
    int prefix = total;
    int pos = n_sites - 1;
    for (; pos >= 0; --pos) {
      if (prefix + 1 <= max_bosons) break;
      prefix -= occ[pos];
    }
    if (pos < 0) break;
    for (int k = pos + 1; k < n_sites; ++k) occ[k] = 0;
    ++occ[pos];
    total = prefix + 1;
  }
}

std::size_t BosonSpace::rank(std::span<const std::uint8_t> occ) const {
  std::size_t r = 0;
  int budget = max_bosons_;
  const int stride = max_bosons_ + 1;
  for (int i = 0; i < n_sites_; ++i) {
    const int rest = n_sites_ - i - 1;
    for (int v = 0; v < occ[i]; ++v) r += table_[rest * stride + (budget - v)];
    budget -= occ[i];
  }
  return r;
}

std::vector<BosonConfig> enumerate_boson_configs(int n_sites, int max_bosons,
                                                 std::size_t max_dimension) {
  const BosonSpace space(n_sites, max_bosons, max_dimension);
  std::vector<BosonConfig> out;
  out.reserve(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    auto c = space.config(i);
    out.push_back({std::vector<int>(c.begin(), c.end())});
  }
  return out;
}

double Momentum::value() const { return 2.0 * std::numbers::pi * j / n_sites; }

Momentum Momentum::from_index(int j, int n_sites) {
  if (n_sites < 1) throw DomainError("momentum needs N >= 1");
  // Fold into (-N/2, N/2].
  int jj = ((j % n_sites) + n_sites) % n_sites;
  if (2 * jj > n_sites) jj -= n_sites;
  return {jj, n_sites};
}

Momentum Momentum::from_value(double k, int n_sites) {
  const double x = k * n_sites / (2.0 * std::numbers::pi);
  const double j = std::round(x);
  if (std::abs(x - j) > 1e-9) {
    throw InvalidMomentumError("K = " + std::to_string(k) + " is not 2 pi j / " +
                               std::to_string(n_sites));
  }
  return from_index(static_cast<int>(j), n_sites);
}

std::vector<Momentum> brillouin_zone(int n_sites) {
  std::vector<Momentum> out;
  for (int j = -((n_sites - 1) / 2); j <= n_sites / 2; ++j) out.push_back({j, n_sites});
  return out;
}

RealSpaceBasis::RealSpaceBasis(std::shared_ptr<const BosonSpace> bosons, int excitations)
    : bosons_(std::move(bosons)), excitations_(excitations) {
  if (excitations_ != 0 && excitations_ != 1) {
    throw DomainError("only the 0- and 1-excitation sectors are supported");
  }
}

std::size_t RealSpaceBasis::size() const {
  return excitations_ == 0 ? bosons_->size() : bosons_->size() * bosons_->n_sites();
}

int RealSpaceBasis::site(std::size_t index) const {
  return excitations_ == 0 ? -1 : static_cast<int>(index / bosons_->size());
}

std::size_t RealSpaceBasis::boson_index(std::size_t index) const {
  return excitations_ == 0 ? index : index % bosons_->size();
}

std::size_t RealSpaceBasis::index(int site, std::size_t boson_index) const {
  return excitations_ == 0 ? boson_index : static_cast<std::size_t>(site) * bosons_->size() + boson_index;
}

SectorBasis::SectorBasis(std::shared_ptr<const BosonSpace> bosons, Momentum k)
    : bosons_(std::move(bosons)), k_(k) {
  if (k_.n_sites != bosons_->n_sites()) {
    throw InvalidMomentumError("momentum lattice size does not match the boson space");
  }
}

SectorBasis momentum_sector_basis(int n_sites, int max_bosons, double k, std::size_t max_dimension) {
  const Momentum mom = Momentum::from_value(k, n_sites);
  return SectorBasis(std::make_shared<const BosonSpace>(n_sites, max_bosons, max_dimension), mom);
}

void rotate_config(std::span<const std::uint8_t> in, int shift, std::span<std::uint8_t> out) {
  const int n = static_cast<int>(in.size());
  for (int i = 0; i < n; ++i) out[i] = in[(i + shift) % n];
}

Vector embed(const SectorBasis& sector, const RealSpaceBasis& real, const Vector& v) {
  if (real.excitations() != 1 || real.n_sites() != sector.n_sites() ||
      real.bosons().max_bosons() != sector.bosons().max_bosons()) {
    throw DimensionMismatchError("embed: sector and real-space bases are incompatible");
  }
  if (static_cast<std::size_t>(v.size()) != sector.size()) {
    throw DimensionMismatchError("embed: vector size does not match the sector basis");
  }
  const int n = sector.n_sites();
  const double k = sector.momentum().value();
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  const BosonSpace& bosons = real.bosons();
  Vector out = Vector::Zero(static_cast<Eigen::Index>(real.size()));
  std::vector<std::uint8_t> shifted(n);
  for (std::size_t c = 0; c < sector.size(); ++c) {
    const auto occ = sector.bosons().config(c);
    for (int s = 0; s < n; ++s) {
      // T^s |0; c> = |s; c'> with c'[i + s] = c[i].
      for (int i = 0; i < n; ++i) shifted[(i + s) % n] = occ[i];
      const std::size_t idx = real.index(s, bosons.rank(shifted));
      out[static_cast<Eigen::Index>(idx)] += norm * std::polar(1.0, k * s) * v[static_cast<Eigen::Index>(c)];
    }
  }
  return out;
}

Vector translate(const RealSpaceBasis& basis, const Vector& v) {
  if (static_cast<std::size_t>(v.size()) != basis.size()) {
    throw DimensionMismatchError("translate: vector size does not match the basis");
  }
  const int n = basis.n_sites();
  const BosonSpace& bosons = basis.bosons();
  Vector out = Vector::Zero(v.size());
  std::vector<std::uint8_t> shifted(n);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const int s = basis.site(i);
    const auto occ = bosons.config(basis.boson_index(i));
    for (int m = 0; m < n; ++m) shifted[(m + 1) % n] = occ[m];
    const int dest_site = s < 0 ? -1 : (s + 1) % n;
    const std::size_t j = basis.index(dest_site, bosons.rank(shifted));
    out[static_cast<Eigen::Index>(j)] = v[static_cast<Eigen::Index>(i)];
  }
  return out;
}

TranslationEigenvalue translation_eigenvalue(const Vector& v, const RealSpaceBasis& basis) {
  const double norm2 = v.squaredNorm();
  if (norm2 == 0.0) throw DomainError("translation_eigenvalue: zero vector");
  const Complex phase = v.dot(translate(basis, v)) / norm2;
  TranslationEigenvalue out;
  out.phase = phase;
  out.momentum = -std::arg(phase);
  out.is_eigenstate = std::abs(phase) >= 1.0 - 1e-6;
  return out;
}

}  // namespace rydw
