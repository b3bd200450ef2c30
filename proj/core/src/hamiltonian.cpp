#include "rydw/hamiltonian.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "rydw/errors.hpp"
#include "terms.hpp"

namespace rydw {

Vector LinearOperator::apply(const Vector& in) const {
  Vector out(in.size());
  apply(std::span<const Complex>(in.data(), static_cast<std::size_t>(in.size())),
        std::span<Complex>(out.data(), static_cast<std::size_t>(out.size())));
  return out;
}

void LinearOperator::check_sizes(std::size_t in, std::size_t out) const {
  if (in != dimension() || out != dimension()) {
    throw DimensionMismatchError("operator of dimension " + std::to_string(dimension()) +
                                 " applied to vectors of size " + std::to_string(in) + " -> " +
                                 std::to_string(out));
  }
}

ModelTerms ModelTerms::from(const DerivedParams& d, double omega_b, TermSwitches switches) {
  ModelTerms t;
  t.eps0 = d.eps0;
  t.t_e = d.t_e;
  t.omega_b = omega_b;
  t.g_b = d.g_b;
  t.g_p = d.g_p;
  t.switches = switches;
  return t;
}

ModelTerms ModelTerms::from(const PhysicalParams& p, TermSwitches switches) {
  return from(derive(p), p.omega_b, switches);
}

RealSpaceHamiltonian::RealSpaceHamiltonian(RealSpaceBasis basis, ModelTerms terms)
    : basis_(std::move(basis)), terms_(terms) {}

void RealSpaceHamiltonian::apply(std::span<const Complex> in, std::span<Complex> out) const {
  check_sizes(in.size(), out.size());
  const BosonSpace& bosons = basis_.bosons();
  const int n = bosons.n_sites();
  const int m = bosons.max_bosons();
  std::vector<std::uint8_t> occ(n);
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    const std::size_t b = basis_.boson_index(r);
    const auto src = bosons.config(b);
    occ.assign(src.begin(), src.end());
    Complex acc{0.0, 0.0};
    // Real symmetric: H[r, c] = H[c, r].
    detail::expand_column(terms_, n, m, basis_.site(r), occ, bosons.total(b),
                          [&](int dest, std::span<const std::uint8_t> d, double amp) {
                            acc += amp * in[basis_.index(dest, bosons.rank(d))];
                          });
    out[r] = acc;
  }
}

SparseMatrix RealSpaceHamiltonian::to_sparse() const {
  const BosonSpace& bosons = basis_.bosons();
  const int n = bosons.n_sites();
  std::vector<Eigen::Triplet<Complex>> triplets;
  std::vector<std::uint8_t> occ(n);
  for (std::size_t c = 0; c < basis_.size(); ++c) {
    const std::size_t b = basis_.boson_index(c);
    const auto src = bosons.config(b);
    occ.assign(src.begin(), src.end());
    detail::expand_column(terms_, n, bosons.max_bosons(), basis_.site(c), occ, bosons.total(b),
                          [&](int dest, std::span<const std::uint8_t> d, double amp) {
                            const auto r = basis_.index(dest, bosons.rank(d));
                            triplets.emplace_back(static_cast<int>(r), static_cast<int>(c), amp);
                          });
  }
  const auto dim = static_cast<Eigen::Index>(basis_.size());
  SparseMatrix h(dim, dim);
  h.setFromTriplets(triplets.begin(), triplets.end());
  h.prune(Complex{0.0, 0.0});
  return h;
}

SectorHamiltonian::SectorHamiltonian(SectorBasis basis, ModelTerms terms)
    : basis_(std::move(basis)), terms_(terms) {}

void SectorHamiltonian::apply(std::span<const Complex> in, std::span<Complex> out) const {
  check_sizes(in.size(), out.size());
  const BosonSpace& bosons = basis_.bosons();
  const int n = bosons.n_sites();
  const int m = bosons.max_bosons();
  const double k = basis_.momentum().value();
  std::vector<Complex> phase(n);
  for (int j = 0; j < n; ++j) phase[j] = std::polar(1.0, k * j);

  std::vector<std::uint8_t> occ(n);
  std::vector<std::uint8_t> rotated(n);
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    const auto src = bosons.config(r);
    occ.assign(src.begin(), src.end());
    Complex acc{0.0, 0.0};
    // H|K,r> = sum amp e^{-iKj} |K, rot_j(d)>, so H[r, c] = amp e^{+iKj}.
    detail::expand_column(terms_, n, m, 0, occ, bosons.total(r),
                          [&](int dest, std::span<const std::uint8_t> d, double amp) {
                            rotate_config(d, dest, rotated);
                            acc += amp * phase[dest] * in[bosons.rank(rotated)];
                          });
    out[r] = acc;
  }
}

SparseMatrix SectorHamiltonian::to_sparse() const {
  const BosonSpace& bosons = basis_.bosons();
  const int n = bosons.n_sites();
  const double k = basis_.momentum().value();
  std::vector<Eigen::Triplet<Complex>> triplets;
  std::vector<std::uint8_t> occ(n);
  std::vector<std::uint8_t> rotated(n);
  for (std::size_t c = 0; c < basis_.size(); ++c) {
    const auto src = bosons.config(c);
    occ.assign(src.begin(), src.end());
    detail::expand_column(terms_, n, bosons.max_bosons(), 0, occ, bosons.total(c),
                          [&](int dest, std::span<const std::uint8_t> d, double amp) {
                            rotate_config(d, dest, rotated);
                            triplets.emplace_back(static_cast<int>(bosons.rank(rotated)),
                                                  static_cast<int>(c),
                                                  amp * std::polar(1.0, -k * dest));
                          });
  }
  const auto dim = static_cast<Eigen::Index>(basis_.size());
  SparseMatrix h(dim, dim);
  h.setFromTriplets(triplets.begin(), triplets.end());
  h.prune(Complex{0.0, 0.0});
  return h;
}

SectorHamiltonian sector_operator(const PhysicalParams& p, Momentum k, TermSwitches switches,
                                  std::shared_ptr<const BosonSpace> bosons) {
  if (!bosons) bosons = std::make_shared<const BosonSpace>(p.n_sites, p.max_bosons);
  if (bosons->n_sites() != p.n_sites || bosons->max_bosons() != p.max_bosons) {
    throw DimensionMismatchError("boson space does not match (n_sites, max_bosons)");
  }
  return SectorHamiltonian(SectorBasis(std::move(bosons), k), ModelTerms::from(p, switches));
}

SectorHamiltonian sector_operator(const PhysicalParams& p, double k, TermSwitches switches) {
  return sector_operator(p, Momentum::from_value(k, p.n_sites), switches);
}

RealSpaceHamiltonian real_space_operator(const PhysicalParams& p, int excitations,
                                         TermSwitches switches) {
  auto bosons = std::make_shared<const BosonSpace>(p.n_sites, p.max_bosons);
  return RealSpaceHamiltonian(RealSpaceBasis(std::move(bosons), excitations),
                              ModelTerms::from(p, switches));
}

Complex vertex_ss(double g, double omega_b, double k, double q) {
  return Complex{0.0, 2.0 * g * omega_b * (std::sin(k) - std::sin(q) - std::sin(k + q))};
}

}  // namespace rydw
