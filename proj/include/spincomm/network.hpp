#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spincomm/types.hpp"

namespace spincomm {

// Two-site interactions that commute with the total z-spin. Nothing else is
// representable, so every SpinNetwork conserves excitation number.
enum class CouplingKind { Heisenberg, XY, IsingZ };

std::string_view to_string(CouplingKind kind);
CouplingKind parse_coupling_kind(std::string_view name);

// 4x4 operator on sites (i, j) in the basis |00>, |01>, |10>, |11>, where the
// left label is site i and |1> is the spin-up (excited) state.
//   XY:         sx sx + sy sy
//   IsingZ:     sz sz
//   Heisenberg: sx sx + sy sy + sz sz
template <typename Scalar = double>
Matrix<Scalar> pair_operator(CouplingKind kind) {
  Matrix<Scalar> op = Matrix<Scalar>::Zero(4, 4);
  if (kind != CouplingKind::IsingZ) {
    op(1, 2) = Scalar(2);
    op(2, 1) = Scalar(2);
  }
  if (kind != CouplingKind::XY) {
    op(0, 0) = Scalar(1);
    op(1, 1) = Scalar(-1);
    op(2, 2) = Scalar(-1);
    op(3, 3) = Scalar(1);
  }
  return op;
}

struct Edge {
  std::size_t i = 0;
  std::size_t j = 0;
  CouplingKind kind = CouplingKind::XY;
  double strength = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Z-total conserving spin-1/2 network:
//   H = sum_edges strength * pair_operator(kind) + sum_j z_fields[j] * sz_j
// Validated on construction and immutable afterwards.
class SpinNetwork {
 public:
  SpinNetwork(std::size_t n_sites, std::vector<Edge> edges, std::vector<double> z_fields,
              std::vector<std::size_t> alice_sites, std::vector<std::size_t> bob_sites);

  std::size_t n_sites() const { return n_sites_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<double>& z_fields() const { return z_fields_; }
  const std::vector<std::size_t>& alice_sites() const { return alice_; }
  const std::vector<std::size_t>& bob_sites() const { return bob_; }

  friend bool operator==(const SpinNetwork&, const SpinNetwork&) = default;

 private:
  std::size_t n_sites_;
  std::vector<Edge> edges_;
  std::vector<double> z_fields_;
  std::vector<std::size_t> alice_;
  std::vector<std::size_t> bob_;
};

// Open 1-D chain; couplings[j] joins sites j and j+1.
struct ChainSpec {
  std::size_t n_sites = 0;
  std::vector<double> couplings;
  CouplingKind kind = CouplingKind::XY;
};

// Path-graph network with Alice on the first n_alice sites and Bob on the
// last n_bob sites.
SpinNetwork chain_from_couplings(std::span<const double> couplings, CouplingKind kind,
                                 std::size_t n_alice, std::size_t n_bob);
SpinNetwork chain_network(const ChainSpec& chain, std::size_t n_alice, std::size_t n_bob);

// Inverse of chain_network: requires edges (j, j+1) for every j, one kind,
// no z-fields. Throws InvalidArgument otherwise.
ChainSpec chain_spec_from_network(const SpinNetwork& network);

// Uniform couplings in [low, high) from a seeded std::mt19937_64. The double
// is built from the top 53 bits of each draw, so the sequence is identical
// on every platform (std::uniform_real_distribution is not).
std::vector<double> random_couplings(std::size_t count, double low, double high,
                                     unsigned long long seed);

// Full 2^N Hamiltonian. Basis index = sum_j bit_j * 2^(N-1-j), i.e. site 0 is
// the most significant (leftmost) label. Intended for N <= 12.
RealMatrix full_hamiltonian(const SpinNetwork& network);

// Diagonal of Z-total = sum_j sz_j in the same full-space ordering.
RealVector z_total_diagonal(std::size_t n_sites);

}  // namespace spincomm
