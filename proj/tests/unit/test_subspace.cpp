#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "spincomm/errors.hpp"
#include "spincomm/network.hpp"
#include "spincomm/subspace.hpp"

using namespace spincomm;

TEST_CASE("binomial") {
  CHECK(binomial(300, 1) == 300);
  CHECK(binomial(10, 5) == 252);
  CHECK(binomial(4, 7) == 0);
  CHECK(binomial(60, 30) == 118264581564861424ULL);
  CHECK_THROWS_AS(binomial(200, 100), InvalidArgument);
}

TEST_CASE("excitation basis: rank/unrank, colex order, dimensions") {
  for (std::size_t n = 0; n <= 9; ++n) {
    std::uint64_t total = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      const ExcitationBasis basis(n == 0 ? 1 : n, n == 0 ? 0 : k);
      total += basis.dimension();
      std::set<std::uint64_t> seen;
      for (std::size_t r = 0; r < basis.dimension(); ++r) {
        const auto sub = basis.unrank(r);
        CHECK(basis.rank(sub) == r);
        seen.insert(basis.full_index(r));
        if (r > 0) {
          // colex: compare from the largest element down
          const auto prev = basis.unrank(r - 1);
          bool less = false;
          for (std::size_t i = sub.size(); i-- > 0;) {
            if (prev[i] != sub[i]) {
              less = prev[i] < sub[i];
              break;
            }
          }
          CHECK(less);
        }
      }
      CHECK(seen.size() == basis.dimension());
    }
    if (n > 0) CHECK(total == (std::uint64_t{1} << n));
  }

  const ExcitationBasis single(300, 1);
  for (std::size_t k : {0, 17, 299}) CHECK(single.unrank(k)[0] == k);
  CHECK_THROWS_AS(ExcitationBasis(3, 4), InvalidArgument);
}

TEST_CASE("restrict_hamiltonian examples") {
  SUBCASE("uniform XY chain, n = 1: tridiagonal with 2 off the diagonal") {
    const auto net = chain_from_couplings(std::vector<double>(5, 1.0), CouplingKind::XY, 1, 1);
    const auto h = restrict_hamiltonian(net, 1);
    RealMatrix expect = RealMatrix::Zero(6, 6);
    for (int j = 0; j < 5; ++j) expect(j, j + 1) = expect(j + 1, j) = 2.0;
    CHECK((h.matrix - expect).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("n = 0 is a 1x1 block; the vacuum is stationary") {
    const auto net = chain_from_couplings(std::vector<double>{1.0, 0.5}, CouplingKind::Heisenberg, 1, 1);
    const auto h = restrict_hamiltonian(net, 0);
    CHECK(h.matrix.rows() == 1);
    CHECK(h.matrix(0, 0) == doctest::Approx(1.5));
  }
  SUBCASE("N = 3 Heisenberg chain matches the n = 1 block of the 8x8 Kronecker Hamiltonian") {
    const auto net = chain_from_couplings(std::vector<double>{1.0, 1.0}, CouplingKind::Heisenberg, 1, 1);
    const auto h = restrict_hamiltonian(net, 1);
    const ComplexMatrix full = oracle::kron_hamiltonian(net);
    // n = 1 states |100>, |010>, |001> are full indices 4, 2, 1
    const int idx[] = {4, 2, 1};
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) CHECK(std::abs(full(idx[r], idx[c]) - h.matrix(r, c)) < 1e-14);
    // hand values: ends see one antiparallel bond, the middle two
    CHECK(h.matrix(0, 0) == doctest::Approx(0.0));
    CHECK(h.matrix(1, 1) == doctest::Approx(-2.0));
    CHECK(h.matrix(0, 1) == doctest::Approx(2.0));
  }
  CHECK_THROWS_AS(restrict_hamiltonian(chain_from_couplings(std::vector<double>{1.0}, CouplingKind::XY, 1, 1), 3),
                  InvalidArgument);
}

TEST_CASE("block equivalence with the full Hamiltonian for every sector") {
  std::mt19937 gen(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const CouplingKind kinds[] = {CouplingKind::Heisenberg, CouplingKind::XY, CouplingKind::IsingZ};
  for (std::size_t n : {3u, 5u, 7u, 9u}) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (j == i + 1 || gen() % 3 == 0) edges.push_back({i, j, kinds[gen() % 3], u(gen)});
    std::vector<double> z(n);
    for (auto& h : z) h = u(gen);
    const SpinNetwork net(n, edges, z, {0}, {n - 1});
    const ComplexMatrix full = oracle::kron_hamiltonian(net);
    for (std::size_t k = 0; k <= n; ++k) {
      const auto h = restrict_hamiltonian(net, k);
      const RealMatrix iso = embedding_isometry(h.basis);
      const ComplexMatrix projected = iso.transpose().cast<Complex>() * full * iso.cast<Complex>();
      CHECK((projected - h.matrix.cast<Complex>()).cwiseAbs().maxCoeff() < 1e-12);

      // off-diagonal entries only between subsets one hop apart along an edge
      for (std::size_t r = 0; r < h.basis.dimension(); ++r) {
        for (std::size_t c = 0; c < h.basis.dimension(); ++c) {
          if (r == c || h.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) == 0.0) continue;
          const auto a = h.basis.unrank(r);
          const auto b = h.basis.unrank(c);
          std::vector<std::size_t> only_a, only_b;
          std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
          std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
          REQUIRE(only_a.size() == 1);
          REQUIRE(only_b.size() == 1);
          bool has_edge = false;
          for (const auto& e : net.edges())
            has_edge = has_edge || (std::minmax(e.i, e.j) == std::minmax(only_a[0], only_b[0]) &&
                                    e.kind != CouplingKind::IsingZ);
          CHECK(has_edge);
        }
      }
    }
  }
}

TEST_CASE("embed_state") {
  SUBCASE("n = 1, e_0, N = 2 gives |10>") {
    const ExcitationBasis basis(2, 1);
    const ComplexVector full = embed_state(basis, ComplexVector::Unit(2, 0));
    CHECK(full.size() == 4);
    CHECK(full(2) == Complex(1.0));
    CHECK(full.norm() == doctest::Approx(1.0));
  }
  SUBCASE("n = 0 gives the all-zero ket") {
    const ExcitationBasis basis(4, 0);
    const ComplexVector full = embed_state(basis, ComplexVector::Ones(1));
    CHECK(full(0) == Complex(1.0));
    CHECK(full.norm() == doctest::Approx(1.0));
  }
  SUBCASE("n = 2, N = 4 uniform amplitudes give six equal entries") {
    const ExcitationBasis basis(4, 2);
    const ComplexVector full = embed_state(basis, ComplexVector::Constant(6, 1.0 / std::sqrt(6.0)));
    int nonzero = 0;
    for (Eigen::Index s = 0; s < 16; ++s) {
      if (std::abs(full(s)) > 0.0) {
        ++nonzero;
        CHECK(std::popcount(static_cast<unsigned>(s)) == 2);
        CHECK(std::abs(full(s)) == doctest::Approx(1.0 / std::sqrt(6.0)));
      }
    }
    CHECK(nonzero == 6);
  }
  CHECK_THROWS_AS(embed_state(ExcitationBasis(4, 2), ComplexVector::Ones(5)), InvalidArgument);
}
