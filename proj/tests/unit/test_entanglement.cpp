#include <doctest.h>

#include <random>

#include "spincomm/entanglement.hpp"
#include "spincomm/errors.hpp"

using namespace spincomm;

namespace {

Matrix4c bell() {
  Eigen::Matrix<Complex, 4, 1> v = Eigen::Matrix<Complex, 4, 1>::Zero();
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v * v.adjoint();
}

}  // namespace

TEST_CASE("concurrence of reference states") {
  CHECK(concurrence(TwoQubitState(bell())) == doctest::Approx(1.0).epsilon(1e-12));

  Matrix4c product = Matrix4c::Zero();
  product(1, 1) = 1.0;
  CHECK(concurrence(TwoQubitState(product)) == doctest::Approx(0.0));

  // a|0>+b|1> on each qubit, still a product state
  Eigen::Matrix<Complex, 2, 1> q(Complex(0.6, 0.0), Complex(0.0, 0.8));
  Eigen::Matrix<Complex, 4, 1> pq;
  pq << q(0) * q(0), q(0) * q(1), q(1) * q(0), q(1) * q(1);
  CHECK(concurrence(TwoQubitState(pq * pq.adjoint())) < 1e-7);

  const double p = 0.6;
  const Matrix4c werner = p * bell() + (1 - p) * Matrix4c::Identity() / 4.0;
  CHECK(concurrence(TwoQubitState(werner)) == doctest::Approx((3 * p - 1) / 2).epsilon(1e-12));
  const Matrix4c separable = 0.2 * bell() + 0.8 * Matrix4c::Identity() / 4.0;
  CHECK(concurrence(TwoQubitState(separable)) == 0.0);
}

TEST_CASE("TwoQubitState validation") {
  Matrix4c m = Matrix4c::Identity() / 4.0;
  CHECK_NOTHROW(TwoQubitState{m});
  Matrix4c herm = m;
  herm(0, 1) = Complex(0.0, 0.1);
  CHECK_THROWS_AS(TwoQubitState{herm}, InvalidArgument);
  CHECK_THROWS_AS(TwoQubitState{Matrix4c(2.0 * m)}, InvalidArgument);
  Matrix4c neg = Matrix4c::Zero();
  neg(0, 0) = 1.2;
  neg(1, 1) = -0.2;
  CHECK_THROWS_AS(TwoQubitState{neg}, InvalidArgument);
}

TEST_CASE("decoded_joint_state examples") {
  SUBCASE("c_b = 1 is the Bell state") {
    CHECK((decoded_joint_state(1.0, {0.4}).matrix() - bell()).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("c_b = 0, rho~11 = 1 is separable") {
    Matrix4c expect = Matrix4c::Zero();
    expect(0, 0) = expect(2, 2) = 0.5;
    const auto rho = decoded_joint_state(0.0, {1.0});
    CHECK((rho.matrix() - expect).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(concurrence(rho) == 0.0);
  }
  SUBCASE("c_b = 0.5, rho~11 = 0.3 eigenvalues") {
    const auto lambdas = concurrence_lambdas(decoded_joint_state(0.5, {0.3}));
    const double a = std::sqrt(0.3 * 0.5 + 0.7);
    const double b = std::sqrt(0.5);
    CHECK(lambdas[0] == doctest::Approx((a + b) * (a + b) / 4).epsilon(1e-12));
    CHECK(lambdas[1] == doctest::Approx((a - b) * (a - b) / 4).epsilon(1e-12));
    CHECK(lambdas[2] < 1e-10);
    CHECK(lambdas[3] < 1e-10);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(decoded_joint_state(1.5, {0.3}), InvalidArgument);
    CHECK_THROWS_AS(decoded_joint_state(0.5, {-0.1}), InvalidArgument);
    CHECK_THROWS_AS(decoded_joint_state(0.5, {0.5}, Complex(0.6, 0.0)), InvalidArgument);
  }
}

TEST_CASE("verify_concurrence_identity") {
  const auto high = verify_concurrence_identity(0.99625, {0.2});
  CHECK(high.entanglement == doctest::Approx(0.9981232388838565).epsilon(1e-12));
  CHECK(verify_concurrence_identity(0.0, {0.7}).entanglement == doctest::Approx(0.0));
  for (double r : {0.0, 0.5, 1.0}) {
    const auto one = verify_concurrence_identity(1.0, {r});
    CHECK(one.entanglement == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(one.lambda2 == doctest::Approx(0.0));
  }
  // with rho~ = |0><0| the only nonzero eigenvalue is c_b itself; below the
  // eigensolver's resolution it reads as 0 and E is lost, which is accepted
  for (double c : {1e-30, 1e-20, 1e-16, 1e-14, 1e-12}) {
    const auto tiny = verify_concurrence_identity(c, {1.0});
    CHECK(tiny.entanglement <= std::sqrt(c) + 1e-15);
  }
  CHECK(verify_concurrence_identity(1e-12, {1.0}).entanglement == doctest::Approx(1e-6).epsilon(1e-6));
}

TEST_CASE("identity holds for random triples, independent of the completion") {
  std::mt19937_64 gen(2718);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double c = u(gen);
    const double r = u(gen);
    // |off|^2 <= r (1 - r) keeps rho~ PSD
    const double radius = std::sqrt(r * (1 - r)) * u(gen);
    const Complex off = std::polar(radius, 2 * 3.141592653589793 * u(gen));
    const auto check = verify_concurrence_identity(c, {r}, off);
    CHECK(std::abs(check.entanglement - std::sqrt(c)) < 1e-8);
    CHECK(std::abs(check.numeric[0] - check.lambda1) < 1e-9);
    CHECK(std::abs(check.numeric[1] - check.lambda2) < 1e-9);
    CHECK(std::abs(check.numeric[2]) < 1e-10);
    CHECK(std::abs(check.numeric[3]) < 1e-10);
  }
}
