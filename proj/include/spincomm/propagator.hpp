#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "spincomm/subspace.hpp"
#include "spincomm/tolerances.hpp"
#include "spincomm/types.hpp"

namespace spincomm {

// Eigendecomposition H = V diag(lambda) V^T of a restricted Hamiltonian, kept
// so that U(t) = exp(-iHt) can be formed for many t without refactoring.
class SpectralPropagator {
 public:
  SpectralPropagator(ExcitationBasis basis, RealVector eigenvalues, RealMatrix eigenvectors);

  const ExcitationBasis& basis() const { return basis_; }
  const RealVector& eigenvalues() const { return eigenvalues_; }
  const RealMatrix& eigenvectors() const { return eigenvectors_; }
  Eigen::Index dimension() const { return eigenvalues_.size(); }

  // exp(-iHt) restricted to the given rows and columns.
  ComplexMatrix block(std::span<const Eigen::Index> rows, std::span<const Eigen::Index> cols,
                      double t) const;
  ComplexMatrix matrix(double t) const;

 private:
  ExcitationBasis basis_;
  RealVector eigenvalues_;    // ascending
  RealMatrix eigenvectors_;   // orthonormal columns
};

SpectralPropagator diagonalize(const RestrictedHamiltonian& h,
                               const Tolerances& tol = default_tolerances());

// V exp(-i lambda t) V^T x. Throws NumericalError if the norm drifts by more
// than tol.unitarity (relative).
ComplexVector evolve(const SpectralPropagator& p, const ComplexVector& state, double t,
                     const Tolerances& tol = default_tolerances());

struct Trajectory {
  std::vector<double> times;
  ComplexMatrix states;  // one column per entry of `times`
};

Trajectory sample_trajectory(const SpectralPropagator& p, const ComplexVector& state0,
                             std::span<const double> times,
                             const Tolerances& tol = default_tolerances());

// Hamiltonian held fixed over step `step`; receives the state at the start of
// that step so feedback schedules can be expressed.
using StepHamiltonian = std::function<RealMatrix(std::size_t step, const ComplexVector& current)>;

// state_{k+1} = exp(-i H_k dt) state_k, each exponential formed from a fresh
// eigendecomposition of the frozen matrix. Returns n_steps + 1 samples at
// times k * dt.
Trajectory step_piecewise(const StepHamiltonian& hamiltonian_at, const ComplexVector& state0,
                          double dt, std::size_t n_steps,
                          const Tolerances& tol = default_tolerances());

// Exact exponential exp(-i H dt) applied to `state` for one real symmetric H.
ComplexVector exponential_step(const RealMatrix& h, const ComplexVector& state, double dt,
                               const Tolerances& tol = default_tolerances());

// CSV: t,site_0_abs2,...[,site_0_re,site_0_im,...]
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, bool with_amplitudes);

}  // namespace spincomm
