#include "spincomm/network.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <utility>

#include "spincomm/errors.hpp"

namespace spincomm {

std::string_view to_string(CouplingKind kind) {
  switch (kind) {
    case CouplingKind::Heisenberg:
      return "heisenberg";
    case CouplingKind::XY:
      return "xy";
    case CouplingKind::IsingZ:
      return "ising_z";
  }
  return "unknown";
}

CouplingKind parse_coupling_kind(std::string_view name) {
  if (name == "heisenberg") return CouplingKind::Heisenberg;
  if (name == "xy") return CouplingKind::XY;
  if (name == "ising_z") return CouplingKind::IsingZ;
  throw InvalidArgument("unknown coupling kind '" + std::string(name) +
                        "' (expected heisenberg, xy or ising_z)");
}

namespace {

void check_site_set(const std::vector<std::size_t>& sites, std::size_t n_sites,
                    const char* who) {
  if (sites.empty()) throw InvalidArgument(std::string(who) + " control set is empty");
  std::set<std::size_t> seen;
  for (auto s : sites) {
    if (s >= n_sites)
      throw InvalidArgument(std::string(who) + " site " + std::to_string(s) + " out of range");
    if (!seen.insert(s).second)
      throw InvalidArgument(std::string(who) + " site " + std::to_string(s) + " listed twice");
  }
}

}  // namespace

SpinNetwork::SpinNetwork(std::size_t n_sites, std::vector<Edge> edges,
                         std::vector<double> z_fields, std::vector<std::size_t> alice_sites,
                         std::vector<std::size_t> bob_sites)
    : n_sites_(n_sites),
      edges_(std::move(edges)),
      z_fields_(std::move(z_fields)),
      alice_(std::move(alice_sites)),
      bob_(std::move(bob_sites)) {
  if (n_sites_ == 0) throw InvalidArgument("network needs at least one site");
  if (z_fields_.empty()) z_fields_.assign(n_sites_, 0.0);
  if (z_fields_.size() != n_sites_)
    throw InvalidArgument("z_fields has " + std::to_string(z_fields_.size()) +
                          " entries for " + std::to_string(n_sites_) + " sites");

  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& e : edges_) {
    if (e.i >= n_sites_ || e.j >= n_sites_)
      throw InvalidArgument("edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                            ") has a site index out of range");
    if (e.i == e.j) throw InvalidArgument("self-loop on site " + std::to_string(e.i));
    if (!pairs.insert(std::minmax(e.i, e.j)).second)
      throw InvalidArgument("duplicate edge (" + std::to_string(e.i) + ", " +
                            std::to_string(e.j) + ")");
  }

  check_site_set(alice_, n_sites_, "alice");
  check_site_set(bob_, n_sites_, "bob");
  for (auto a : alice_) {
    if (std::find(bob_.begin(), bob_.end(), a) != bob_.end())
      throw InvalidArgument("alice and bob control sets overlap at site " + std::to_string(a));
  }
}

SpinNetwork chain_from_couplings(std::span<const double> couplings, CouplingKind kind,
                                 std::size_t n_alice, std::size_t n_bob) {
  if (couplings.empty()) throw InvalidArgument("chain needs at least one coupling");
  const std::size_t n = couplings.size() + 1;
  if (n_alice == 0 || n_bob == 0) throw InvalidArgument("control sets must be non-empty");
  if (n_alice + n_bob > n)
    throw InvalidArgument("control sets overlap: " + std::to_string(n_alice) + " + " +
                          std::to_string(n_bob) + " > " + std::to_string(n) + " sites");

  std::vector<Edge> edges;
  edges.reserve(couplings.size());
  for (std::size_t j = 0; j < couplings.size(); ++j) edges.push_back({j, j + 1, kind, couplings[j]});

  std::vector<std::size_t> alice(n_alice), bob(n_bob);
  for (std::size_t k = 0; k < n_alice; ++k) alice[k] = k;
  for (std::size_t k = 0; k < n_bob; ++k) bob[k] = n - n_bob + k;
  return SpinNetwork(n, std::move(edges), {}, std::move(alice), std::move(bob));
}

SpinNetwork chain_network(const ChainSpec& chain, std::size_t n_alice, std::size_t n_bob) {
  if (chain.couplings.size() + 1 != chain.n_sites)
    throw InvalidArgument("chain of " + std::to_string(chain.n_sites) + " sites needs " +
                          std::to_string(chain.n_sites == 0 ? 0 : chain.n_sites - 1) +
                          " couplings, got " + std::to_string(chain.couplings.size()));
  return chain_from_couplings(chain.couplings, chain.kind, n_alice, n_bob);
}

ChainSpec chain_spec_from_network(const SpinNetwork& network) {
  const std::size_t n = network.n_sites();
  if (n < 2 || network.edges().size() != n - 1) throw InvalidArgument("network is not an open chain");
  ChainSpec chain{n, std::vector<double>(n - 1, 0.0), network.edges().front().kind};
  std::vector<bool> seen(n - 1, false);
  for (const auto& e : network.edges()) {
    const auto [lo, hi] = std::minmax(e.i, e.j);
    if (hi != lo + 1 || seen[lo]) throw InvalidArgument("network is not an open chain");
    if (e.kind != chain.kind) throw InvalidArgument("chain mixes coupling kinds");
    seen[lo] = true;
    chain.couplings[lo] = e.strength;
  }
  for (double z : network.z_fields()) {
    if (z != 0.0) throw InvalidArgument("chain has nonzero z-fields");
  }
  return chain;
}

std::vector<double> random_couplings(std::size_t count, double low, double high,
                                     unsigned long long seed) {
  if (!(high >= low)) throw InvalidArgument("random coupling interval is empty");
  std::mt19937_64 gen(seed);
  std::vector<double> out(count);
  for (auto& c : out) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    c = low + (high - low) * u;
  }
  return out;
}

RealMatrix full_hamiltonian(const SpinNetwork& network) {
  const std::size_t n = network.n_sites();
  if (n > 16) throw InvalidArgument("full-space Hamiltonian limited to 16 sites");
  const std::size_t dim = std::size_t{1} << n;
  auto bit = [n](std::size_t state, std::size_t site) {
    return (state >> (n - 1 - site)) & 1U;
  };

  RealMatrix h = RealMatrix::Zero(dim, dim);
  for (std::size_t s = 0; s < dim; ++s) {
    for (std::size_t j = 0; j < n; ++j) h(s, s) += network.z_fields()[j] * (bit(s, j) ? -1.0 : 1.0);
    for (const auto& e : network.edges()) {
      const auto bi = bit(s, e.i);
      const auto bj = bit(s, e.j);
      if (e.kind != CouplingKind::XY) h(s, s) += e.strength * (bi == bj ? 1.0 : -1.0);
      if (e.kind != CouplingKind::IsingZ && bi != bj) {
        const std::size_t flipped =
            s ^ (std::size_t{1} << (n - 1 - e.i)) ^ (std::size_t{1} << (n - 1 - e.j));
        h(flipped, s) += 2.0 * e.strength;
      }
    }
  }
  return h;
}

RealVector z_total_diagonal(std::size_t n_sites) {
  const std::size_t dim = std::size_t{1} << n_sites;
  RealVector z(dim);
  for (std::size_t s = 0; s < dim; ++s) {
    const auto ones = static_cast<double>(std::popcount(s));
    z(s) = static_cast<double>(n_sites) - 2.0 * ones;
  }
  return z;
}

}  // namespace spincomm
