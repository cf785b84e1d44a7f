#include "spincomm/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>

#include "spincomm/errors.hpp"

namespace spincomm {

namespace {

Matrix4c sigma_y_sigma_y() {
  // sy (x) sy is real: it maps |00> -> -|11>, |01> -> |10>.
  Matrix4c m = Matrix4c::Zero();
  m(0, 3) = -1.0;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  m(3, 0) = -1.0;
  return m;
}

void require_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0))
    throw InvalidArgument(std::string(what) + " = " + std::to_string(x) + " lies outside [0, 1]");
}

}  // namespace

TwoQubitState::TwoQubitState(const Matrix4c& rho, const Tolerances& tol) : rho_(rho) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol.psd)
    throw InvalidArgument("density matrix is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > tol.psd) throw InvalidArgument("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix4c> eig(rho);
  if (eig.eigenvalues().minCoeff() < -tol.psd)
    throw InvalidArgument("density matrix is not positive semidefinite");
}

TwoQubitState decoded_joint_state(double c_b, const LeakSpec& leak,
                                  std::optional<Complex> rho_tilde_offdiag, const Tolerances& tol) {
  require_unit_interval(c_b, "c_b");
  require_unit_interval(leak.rho_tilde_11, "rho_tilde_11");
  const double a = leak.rho_tilde_11;
  const Complex off = rho_tilde_offdiag.value_or(Complex(0.0));
  if (std::norm(off) > a * (1.0 - a) + tol.psd)
    throw InvalidArgument("rho_tilde completion is not positive semidefinite");

  Matrix4c rho = Matrix4c::Zero();
  rho(0, 0) = 1.0;
  rho(0, 3) = std::sqrt(c_b);
  rho(3, 0) = std::sqrt(c_b);
  rho(2, 2) = (1.0 - c_b) * a;
  rho(2, 3) = (1.0 - c_b) * off;
  rho(3, 2) = (1.0 - c_b) * std::conj(off);
  rho(3, 3) = (1.0 - c_b) * (1.0 - a) + c_b;
  return TwoQubitState(0.5 * rho, tol);
}

namespace {

std::string sci(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

double eigenvalue_resolution(double scale) {
  return 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, scale);
}

}  // namespace

std::array<double, 4> concurrence_lambdas(const TwoQubitState& state, const Tolerances& tol) {
  // With rho = A A^dagger (A = V sqrt(D)), rho * rho~ and A^dagger rho~ A share
  // their spectrum, and the latter is Hermitian PSD, so the repeated zero
  // eigenvalues come out at roundoff level instead of sqrt(roundoff).
  const Matrix4c& rho = state.matrix();
  const Matrix4c yy = sigma_y_sigma_y();
  const Matrix4c flipped = yy * rho.conjugate() * yy;
  Eigen::SelfAdjointEigenSolver<Matrix4c> dec(rho);
  const Eigen::Vector4d d = dec.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix4c a = dec.eigenvectors() * d.cast<Complex>().asDiagonal();
  const Matrix4c h = a.adjoint() * flipped * a;
  Eigen::SelfAdjointEigenSolver<Matrix4c> eig(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("concurrence eigensolve failed");
  // Eigenvalues are only resolved to ~eps * |h|; anything below that is an
  // exact zero smeared by roundoff, and its square root (~1e-8) would leak
  // straight into the concurrence.
  const double floor = eigenvalue_resolution(eig.eigenvalues().cwiseAbs().maxCoeff());
  std::array<double, 4> lambdas{};
  for (int i = 0; i < 4; ++i) {
    const double l = eig.eigenvalues()(i);
    if (l < -tol.psd) throw InvalidArgument("negative concurrence eigenvalue; input is not a valid state");
    lambdas[static_cast<std::size_t>(i)] = l < floor ? 0.0 : l;
  }
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  return lambdas;
}

double concurrence(const TwoQubitState& rho, const Tolerances& tol) {
  const auto l = concurrence_lambdas(rho, tol);
  return std::max(0.0, std::sqrt(l[0]) - std::sqrt(l[1]) - std::sqrt(l[2]) - std::sqrt(l[3]));
}

ConcurrenceCheck verify_concurrence_identity(double c_b, const LeakSpec& leak,
                                             std::optional<Complex> rho_tilde_offdiag,
                                             const Tolerances& tol) {
  const auto rho = decoded_joint_state(c_b, leak, rho_tilde_offdiag, tol);
  ConcurrenceCheck check;
  check.numeric = concurrence_lambdas(rho, tol);
  check.entanglement = std::max(0.0, std::sqrt(check.numeric[0]) - std::sqrt(check.numeric[1]) -
                                         std::sqrt(check.numeric[2]) - std::sqrt(check.numeric[3]));

  const double a = leak.rho_tilde_11;
  const double x = std::sqrt(a * c_b + 1.0 - a);
  const double y = std::sqrt(c_b);
  check.lambda1 = 0.25 * (x + y) * (x + y);
  check.lambda2 = 0.25 * (x - y) * (x - y);

  const std::array<double, 4> closed{check.lambda1, check.lambda2, 0.0, 0.0};
  for (std::size_t i = 0; i < 4; ++i) {
    if (std::abs(check.numeric[i] - closed[i]) > 1e-9)
      throw NumericalError("concurrence eigenvalue " + std::to_string(i + 1) + " = " +
                           sci(check.numeric[i]) + " disagrees with closed form " + sci(closed[i]));
  }
  // A closed-form eigenvalue below the resolution floor is reported as 0, which
  // costs up to its square root in E; that is a conditioning limit, not a failure.
  double allowed = 1e-8;
  const double floor = eigenvalue_resolution(check.numeric[0]);
  for (double l : closed)
    if (l > 0.0 && l <= 2.0 * floor) allowed += std::sqrt(l);
  if (std::abs(check.entanglement - y) > allowed)
    throw NumericalError("concurrence " + sci(check.entanglement) + " differs from sqrt(c_b) = " + sci(y));
  return check;
}

}  // namespace spincomm
