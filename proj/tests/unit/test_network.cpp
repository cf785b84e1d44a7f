#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "spincomm/errors.hpp"
#include "spincomm/network.hpp"
#include "spincomm/network_io.hpp"

using namespace spincomm;

namespace {

SpinNetwork random_network(std::mt19937& gen, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::bernoulli_distribution coin(0.5);
  std::vector<Edge> edges;
  const CouplingKind kinds[] = {CouplingKind::Heisenberg, CouplingKind::XY, CouplingKind::IsingZ};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || coin(gen)) edges.push_back({i, j, kinds[gen() % 3], u(gen)});
    }
  }
  std::vector<double> z(n);
  for (auto& h : z) h = u(gen);
  return SpinNetwork(n, edges, z, {0}, {n - 1});
}

}  // namespace

TEST_CASE("build_network accepts the documented examples") {
  SUBCASE("300-site Heisenberg chain with 20 control sites per side") {
    nlohmann::json desc = {{"kind", "heisenberg"},
                           {"couplings", std::vector<double>(299, 1.0)},
                           {"n_alice", 20},
                           {"n_bob", 20}};
    const auto net = build_network(desc);
    CHECK(net.n_sites() == 300);
    CHECK(net.alice_sites().front() == 0);
    CHECK(net.alice_sites().back() == 19);
    CHECK(net.bob_sites().front() == 280);
    CHECK(net.bob_sites().back() == 299);
  }
  SUBCASE("smallest legal XY instance") {
    nlohmann::json desc = {{"n_sites", 2},
                           {"edges", {{0, 1, "xy", 1.0}}},
                           {"alice_sites", {0}},
                           {"bob_sites", {1}}};
    const auto net = build_network(desc);
    CHECK(net.edges().size() == 1);
    CHECK(net.z_fields() == std::vector<double>{0.0, 0.0});
  }
}

TEST_CASE("build_network rejects malformed descriptions") {
  nlohmann::json base = {{"n_sites", 10},
                         {"edges", {{0, 1, "xy", 1.0}, {1, 2, "heisenberg", 0.5}}},
                         {"alice_sites", {0, 5}},
                         {"bob_sites", {5, 9}}};
  CHECK_THROWS_AS(build_network(base), InvalidArgument);  // overlap at 5

  base["bob_sites"] = {8, 9};
  CHECK_NOTHROW(build_network(base));

  auto dup = base;
  dup["edges"].push_back({1, 0, "xy", 2.0});
  CHECK_THROWS_AS(build_network(dup), InvalidArgument);

  auto range = base;
  range["edges"].push_back({3, 10, "xy", 1.0});
  CHECK_THROWS_AS(build_network(range), InvalidArgument);

  auto kind = base;
  kind["edges"].push_back({3, 4, "transverse", 1.0});
  CHECK_THROWS_AS(build_network(kind), InvalidArgument);

  auto missing = base;
  missing.erase("bob_sites");
  CHECK_THROWS_AS(build_network(missing), InvalidArgument);
}

TEST_CASE("chain_from_couplings") {
  SUBCASE("29 random couplings in [0.95, 1.05]") {
    const auto c = random_couplings(28, 0.95, 1.05, 2024);
    for (double x : c) {
      CHECK(x >= 0.95);
      CHECK(x < 1.05);
    }
    const auto net = chain_from_couplings(c, CouplingKind::XY, 2, 2);
    CHECK(net.n_sites() == 29);
    CHECK(net.bob_sites() == std::vector<std::size_t>{27, 28});
  }
  SUBCASE("104 uniform sites") {
    const std::vector<double> c(103, 1.0);
    const auto net = chain_from_couplings(c, CouplingKind::XY, 2, 2);
    CHECK(net.edges().size() == 103);
  }
  SUBCASE("zero couplings are legal") {
    const std::vector<double> c{0.0, 0.0};
    CHECK(chain_from_couplings(c, CouplingKind::XY, 1, 1).n_sites() == 3);
  }
  SUBCASE("errors") {
    const std::vector<double> c{1.0, 1.0};
    CHECK_THROWS_AS(chain_from_couplings(c, CouplingKind::XY, 2, 2), InvalidArgument);
    CHECK_THROWS_AS(chain_from_couplings({}, CouplingKind::XY, 1, 1), InvalidArgument);
    CHECK_THROWS_AS(chain_network(ChainSpec{5, {1.0, 1.0}, CouplingKind::XY}, 1, 1), InvalidArgument);
  }
}

TEST_CASE("random couplings are reproducible from the seed") {
  const auto a = random_couplings(26, 0.95, 1.05, 7);
  const auto b = random_couplings(26, 0.95, 1.05, 7);
  const auto c = random_couplings(26, 0.95, 1.05, 8);
  CHECK(a == b);
  CHECK(a != c);
  // First draw of mt19937_64 with the default seed is 14514284786278117030.
  const auto d = random_couplings(1, 0.0, 1.0, 5489);
  CHECK(d[0] == static_cast<double>(14514284786278117030ULL >> 11) * 0x1.0p-53);
}

TEST_CASE("full Hamiltonian is Hermitian, conserves Z-total and matches the Kronecker oracle") {
  std::mt19937 gen(11);
  for (std::size_t n = 2; n <= 7; ++n) {
    const auto net = random_network(gen, n);
    const RealMatrix h = full_hamiltonian(net);
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);

    const RealVector z = z_total_diagonal(n);
    const RealMatrix comm = h * z.asDiagonal() - z.asDiagonal() * h;
    CHECK(comm.cwiseAbs().maxCoeff() < 1e-12);

    const ComplexMatrix ref = oracle::kron_hamiltonian(net);
    CHECK((h.cast<Complex>() - ref).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("Z-total conservation at N = 10") {
  std::mt19937 gen(3);
  const auto net = random_network(gen, 10);
  const RealMatrix h = full_hamiltonian(net);
  const RealVector z = z_total_diagonal(10);
  CHECK((h * z.asDiagonal() - z.asDiagonal() * h).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("network JSON round trip") {
  std::mt19937 gen(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto net = random_network(gen, 3 + static_cast<std::size_t>(trial % 6));
    const auto text = network_to_json(net).dump();
    CHECK(build_network(nlohmann::json::parse(text)) == net);
  }
}

TEST_CASE("chain_spec_from_network inverts chain_network") {
  const ChainSpec chain{5, {0.9, 1.0, 1.1, 1.2}, CouplingKind::XY};
  const auto back = chain_spec_from_network(chain_network(chain, 1, 1));
  CHECK(back.couplings == chain.couplings);
  CHECK(back.kind == CouplingKind::XY);

  const SpinNetwork ring(4, {{0, 1, CouplingKind::XY, 1}, {1, 2, CouplingKind::XY, 1}, {0, 3, CouplingKind::XY, 1}},
                         {}, {0}, {2});
  CHECK_THROWS_AS(chain_spec_from_network(ring), InvalidArgument);
}
