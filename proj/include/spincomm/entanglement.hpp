#pragma once

#include <array>
#include <optional>

#include "spincomm/tolerances.hpp"
#include "spincomm/types.hpp"

namespace spincomm {

using Matrix4c = Eigen::Matrix<Complex, 4, 4>;

// Density matrix of two qubits in the order |00>, |01>, |10>, |11>; the left
// label is Alice's reference spin, the right label Bob's decoded spin.
class TwoQubitState {
 public:
  explicit TwoQubitState(const Matrix4c& rho, const Tolerances& tol = default_tolerances());
  const Matrix4c& matrix() const { return rho_; }

 private:
  Matrix4c rho_;
};

// <0|rho_tilde|0> of the decoded leak state.
struct LeakSpec {
  double rho_tilde_11 = 1.0;
};

// Joint state of the reference spin and Bob's decoded spin when half of a Bell
// pair is sent with transfer quality c_b:
//   1/2 [ (1-c)|1><1| (x) rho~ + c|11><11| + |00><00| + sqrt(c)(|00><11| + |11><00|) ]
// rho~ = [[r11, off], [conj(off), 1 - r11]]; off defaults to 0 and must keep
// rho~ positive semidefinite.
TwoQubitState decoded_joint_state(double c_b, const LeakSpec& leak,
                                  std::optional<Complex> rho_tilde_offdiag = std::nullopt,
                                  const Tolerances& tol = default_tolerances());

// Eigenvalues of rho (sy x sy) rho* (sy x sy), nonincreasing, clipped at 0.
std::array<double, 4> concurrence_lambdas(const TwoQubitState& rho,
                                          const Tolerances& tol = default_tolerances());

// Wootters concurrence max{0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)}.
double concurrence(const TwoQubitState& rho, const Tolerances& tol = default_tolerances());

struct ConcurrenceCheck {
  double entanglement = 0.0;        // concurrence of the decoded state
  double lambda1 = 0.0;             // closed forms
  double lambda2 = 0.0;
  std::array<double, 4> numeric{};  // eigensolved
};

// Builds the decoded state, eigensolves it, and compares against
//   l1,2 = 1/4 (sqrt(r11 c + 1 - r11) +/- sqrt(c))^2, l3 = l4 = 0,  E = sqrt(c).
// Throws NumericalError if E differs from sqrt(c_b) by more than 1e-8 or an
// eigenvalue differs from its closed form by more than 1e-9.
ConcurrenceCheck verify_concurrence_identity(double c_b, const LeakSpec& leak,
                                             std::optional<Complex> rho_tilde_offdiag = std::nullopt,
                                             const Tolerances& tol = default_tolerances());

}  // namespace spincomm
