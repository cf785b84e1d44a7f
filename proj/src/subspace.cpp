#include "spincomm/subspace.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "spincomm/errors.hpp"

namespace spincomm {

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i is exact at every step
    const std::uint64_t factor = n - k + i;
    if (result > std::numeric_limits<std::uint64_t>::max() / factor)
      throw InvalidArgument("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                            ") overflows");
    result = result * factor / i;
  }
  return result;
}

namespace {

// Largest excitation-sector dimension we are willing to enumerate.
constexpr std::uint64_t kMaxEnumerated = std::uint64_t{1} << 26;

}  // namespace

ExcitationBasis::ExcitationBasis(std::size_t n_sites, std::size_t n_excitations)
    : n_sites_(n_sites), n_excitations_(n_excitations) {
  if (n_excitations > n_sites)
    throw InvalidArgument("excitation count " + std::to_string(n_excitations) + " exceeds " +
                          std::to_string(n_sites) + " sites");
  const auto dim = binomial(n_sites, n_excitations);
  if (dim > kMaxEnumerated)
    throw InvalidArgument("sector dimension " + std::to_string(dim) + " too large to enumerate");
  dimension_ = static_cast<std::size_t>(dim);

  // Colex successor: bump the lowest element that can move, reset the rest.
  subsets_.reserve(dimension_ * n_excitations_);
  std::vector<std::size_t> cur(n_excitations_);
  for (std::size_t i = 0; i < n_excitations_; ++i) cur[i] = i;
  for (std::size_t r = 0; r < dimension_; ++r) {
    subsets_.insert(subsets_.end(), cur.begin(), cur.end());
    std::size_t i = 0;
    while (i < n_excitations_ && cur[i] + 1 == (i + 1 < n_excitations_ ? cur[i + 1] : n_sites_)) ++i;
    if (i == n_excitations_) break;
    ++cur[i];
    for (std::size_t j = 0; j < i; ++j) cur[j] = j;
  }
}

std::span<const std::size_t> ExcitationBasis::unrank(std::size_t index) const {
  if (index >= dimension_)
    throw InvalidArgument("basis index " + std::to_string(index) + " out of range");
  return {subsets_.data() + index * n_excitations_, n_excitations_};
}

std::size_t ExcitationBasis::rank(std::span<const std::size_t> sites) const {
  if (sites.size() != n_excitations_) throw InvalidArgument("subset size does not match sector");
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (sites[i] >= n_sites_ || (i > 0 && sites[i] <= sites[i - 1]))
      throw InvalidArgument("subset must be strictly increasing and in range");
    r += binomial(sites[i], i + 1);
  }
  return static_cast<std::size_t>(r);
}

std::uint64_t ExcitationBasis::full_index(std::size_t index) const {
  if (n_sites_ > 63) throw InvalidArgument("full-space index needs N <= 63");
  std::uint64_t bits = 0;
  for (auto s : unrank(index)) bits |= std::uint64_t{1} << (n_sites_ - 1 - s);
  return bits;
}

RestrictedHamiltonian restrict_hamiltonian(const SpinNetwork& network, std::size_t n_excitations) {
  ExcitationBasis basis(network.n_sites(), n_excitations);
  const std::size_t dim = basis.dimension();
  RealMatrix h = RealMatrix::Zero(dim, dim);

  std::vector<char> occupied(network.n_sites(), 0);
  std::vector<std::size_t> moved(n_excitations);
  for (std::size_t r = 0; r < dim; ++r) {
    const auto sites = basis.unrank(r);
    for (auto s : sites) occupied[s] = 1;

    for (std::size_t j = 0; j < network.n_sites(); ++j)
      h(r, r) += network.z_fields()[j] * (occupied[j] ? -1.0 : 1.0);

    for (const auto& e : network.edges()) {
      const bool oi = occupied[e.i] != 0;
      const bool oj = occupied[e.j] != 0;
      if (e.kind != CouplingKind::XY) h(r, r) += e.strength * (oi == oj ? 1.0 : -1.0);
      if (e.kind != CouplingKind::IsingZ && oi != oj) {
        const std::size_t from = oi ? e.i : e.j;
        const std::size_t to = oi ? e.j : e.i;
        std::copy(sites.begin(), sites.end(), moved.begin());
        *std::find(moved.begin(), moved.end(), from) = to;
        std::sort(moved.begin(), moved.end());
        h(basis.rank(moved), r) += 2.0 * e.strength;
      }
    }

    for (auto s : sites) occupied[s] = 0;
  }
  return {std::move(basis), std::move(h)};
}

ComplexVector embed_state(const ExcitationBasis& basis, const ComplexVector& amplitudes) {
  if (static_cast<std::size_t>(amplitudes.size()) != basis.dimension())
    throw InvalidArgument("amplitude vector has " + std::to_string(amplitudes.size()) +
                          " entries, sector has " + std::to_string(basis.dimension()));
  if (basis.n_sites() > 16) throw InvalidArgument("embedding limited to 16 sites");
  ComplexVector full = ComplexVector::Zero(Eigen::Index{1} << basis.n_sites());
  for (std::size_t r = 0; r < basis.dimension(); ++r)
    full(static_cast<Eigen::Index>(basis.full_index(r))) = amplitudes(static_cast<Eigen::Index>(r));
  return full;
}

RealMatrix embedding_isometry(const ExcitationBasis& basis) {
  if (basis.n_sites() > 16) throw InvalidArgument("embedding limited to 16 sites");
  RealMatrix iso = RealMatrix::Zero(Eigen::Index{1} << basis.n_sites(),
                                    static_cast<Eigen::Index>(basis.dimension()));
  for (std::size_t r = 0; r < basis.dimension(); ++r)
    iso(static_cast<Eigen::Index>(basis.full_index(r)), static_cast<Eigen::Index>(r)) = 1.0;
  return iso;
}

}  // namespace spincomm
