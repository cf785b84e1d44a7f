#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "spincomm/network.hpp"
#include "spincomm/types.hpp"

namespace spincomm {

// Binomial coefficient; throws InvalidArgument when the result does not fit.
std::uint64_t binomial(std::size_t n, std::size_t k);

// The n-excitation sector H^(n): all n-subsets of N sites, ranked in
// colexicographic order. For n = 1 the dense index equals the excited site.
class ExcitationBasis {
 public:
  ExcitationBasis(std::size_t n_sites, std::size_t n_excitations);

  std::size_t n_sites() const { return n_sites_; }
  std::size_t n_excitations() const { return n_excitations_; }
  std::size_t dimension() const { return dimension_; }

  // Sorted excited sites of basis state `index`.
  std::span<const std::size_t> unrank(std::size_t index) const;
  // Inverse of unrank; `sites` must be strictly increasing.
  std::size_t rank(std::span<const std::size_t> sites) const;

  // Position of the basis state in the 2^N computational basis (site 0 is the
  // most significant bit, matching full_hamiltonian). Requires N <= 63.
  std::uint64_t full_index(std::size_t index) const;

  friend bool operator==(const ExcitationBasis& a, const ExcitationBasis& b) {
    return a.n_sites_ == b.n_sites_ && a.n_excitations_ == b.n_excitations_;
  }

 private:
  std::size_t n_sites_;
  std::size_t n_excitations_;
  std::size_t dimension_;
  std::vector<std::size_t> subsets_;  // dimension_ * n_excitations_, row-major
};

// H restricted to one excitation sector. Every admitted coupling kind is real
// in the computational basis, so the block is stored as a real symmetric
// matrix.
struct RestrictedHamiltonian {
  ExcitationBasis basis;
  RealMatrix matrix;
};

RestrictedHamiltonian restrict_hamiltonian(const SpinNetwork& network, std::size_t n_excitations);

// Places sector amplitudes into a 2^N vector (test and oracle use, N <= 16).
ComplexVector embed_state(const ExcitationBasis& basis, const ComplexVector& amplitudes);

// 2^N x dim isometry whose columns are the embedded basis states.
RealMatrix embedding_isometry(const ExcitationBasis& basis);

}  // namespace spincomm
