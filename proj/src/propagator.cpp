#include "spincomm/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "spincomm/errors.hpp"

namespace spincomm {

namespace {

void require_symmetric(const RealMatrix& h, const Tolerances& tol) {
  if (h.rows() != h.cols()) throw InvalidArgument("Hamiltonian matrix is not square");
  if (h.size() == 0) return;
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double asym = (h - h.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol.hermiticity * scale)
    throw NumericalError("Hamiltonian is not Hermitian (asymmetry " + std::to_string(asym) + ")");
}

void require_unit(const ComplexVector& state, const Tolerances& tol) {
  if (std::abs(state.norm() - 1.0) > tol.state_norm)
    throw InvalidArgument("state is not normalised (norm " + std::to_string(state.norm()) + ")");
}

ComplexVector phases(const RealVector& eigenvalues, double t) {
  return (eigenvalues * (-t)).unaryExpr([](double a) { return std::polar(1.0, a); });
}

ComplexVector apply_spectral(const RealMatrix& vectors, const RealVector& values,
                             const ComplexVector& state, double t) {
  const ComplexVector coeffs = vectors.transpose().cast<Complex>() * state;
  return vectors.cast<Complex>() * phases(values, t).cwiseProduct(coeffs);
}

void check_norm(const ComplexVector& before, const ComplexVector& after, const Tolerances& tol) {
  const double n0 = before.norm();
  const double drift = std::abs(after.norm() - n0);
  if (drift > tol.unitarity * std::max(1.0, n0))
    throw NumericalError("evolution broke unitarity (norm drift " + std::to_string(drift) + ")");
}

}  // namespace

SpectralPropagator::SpectralPropagator(ExcitationBasis basis, RealVector eigenvalues,
                                       RealMatrix eigenvectors)
    : basis_(std::move(basis)),
      eigenvalues_(std::move(eigenvalues)),
      eigenvectors_(std::move(eigenvectors)) {
  if (eigenvectors_.rows() != eigenvalues_.size() || eigenvectors_.cols() != eigenvalues_.size() ||
      static_cast<std::size_t>(eigenvalues_.size()) != basis_.dimension())
    throw InvalidArgument("spectral data does not match the basis dimension");
}

ComplexMatrix SpectralPropagator::block(std::span<const Eigen::Index> rows,
                                        std::span<const Eigen::Index> cols, double t) const {
  if (t == 0.0) {  // U(0) = 1 exactly, not V V^T
    ComplexMatrix id = ComplexMatrix::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c)
        if (rows[r] == cols[c]) id(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = 1.0;
    return id;
  }
  const auto n = dimension();
  RealMatrix vr(static_cast<Eigen::Index>(rows.size()), n);
  RealMatrix vc(static_cast<Eigen::Index>(cols.size()), n);
  for (std::size_t r = 0; r < rows.size(); ++r) vr.row(static_cast<Eigen::Index>(r)) = eigenvectors_.row(rows[r]);
  for (std::size_t c = 0; c < cols.size(); ++c) vc.row(static_cast<Eigen::Index>(c)) = eigenvectors_.row(cols[c]);
  const ComplexVector e = phases(eigenvalues_, t);
  return vr.cast<Complex>() * e.asDiagonal() * vc.transpose().cast<Complex>();
}

ComplexMatrix SpectralPropagator::matrix(double t) const {
  const ComplexMatrix v = eigenvectors_.cast<Complex>();
  return v * phases(eigenvalues_, t).asDiagonal() * v.transpose();
}

SpectralPropagator diagonalize(const RestrictedHamiltonian& h, const Tolerances& tol) {
  require_symmetric(h.matrix, tol);
  if (static_cast<std::size_t>(h.matrix.rows()) != h.basis.dimension())
    throw InvalidArgument("Hamiltonian does not match its basis dimension");
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h.matrix);
  if (solver.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  return SpectralPropagator(h.basis, solver.eigenvalues(), solver.eigenvectors());
}

ComplexVector evolve(const SpectralPropagator& p, const ComplexVector& state, double t,
                     const Tolerances& tol) {
  if (state.size() != p.dimension())
    throw InvalidArgument("state dimension " + std::to_string(state.size()) +
                          " does not match propagator dimension " + std::to_string(p.dimension()));
  if (t == 0.0) return state;
  ComplexVector out = apply_spectral(p.eigenvectors(), p.eigenvalues(), state, t);
  check_norm(state, out, tol);
  return out;
}

Trajectory sample_trajectory(const SpectralPropagator& p, const ComplexVector& state0,
                             std::span<const double> times, const Tolerances& tol) {
  require_unit(state0, tol);
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) throw InvalidArgument("sample times must be increasing");
  }
  Trajectory traj{{times.begin(), times.end()},
                  ComplexMatrix(p.dimension(), static_cast<Eigen::Index>(times.size()))};
  const ComplexVector coeffs = p.eigenvectors().transpose().cast<Complex>() * state0;
  const ComplexMatrix v = p.eigenvectors().cast<Complex>();
  for (std::size_t k = 0; k < times.size(); ++k) {
    auto col = traj.states.col(static_cast<Eigen::Index>(k));
    if (times[k] == 0.0) {
      col = state0;
      continue;
    }
    col = v * phases(p.eigenvalues(), times[k]).cwiseProduct(coeffs);
    check_norm(state0, col, tol);
  }
  return traj;
}

ComplexVector exponential_step(const RealMatrix& h, const ComplexVector& state, double dt,
                               const Tolerances& tol) {
  require_symmetric(h, tol);
  if (h.rows() != state.size()) throw InvalidArgument("step Hamiltonian does not match state dimension");
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  ComplexVector out = apply_spectral(solver.eigenvectors(), solver.eigenvalues(), state, dt);
  check_norm(state, out, tol);
  return out;
}

Trajectory step_piecewise(const StepHamiltonian& hamiltonian_at, const ComplexVector& state0,
                          double dt, std::size_t n_steps, const Tolerances& tol) {
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
  require_unit(state0, tol);
  Trajectory traj{std::vector<double>(n_steps + 1),
                  ComplexMatrix(state0.size(), static_cast<Eigen::Index>(n_steps + 1))};
  ComplexVector current = state0;
  traj.times[0] = 0.0;
  traj.states.col(0) = current;
  for (std::size_t k = 0; k < n_steps; ++k) {
    current = exponential_step(hamiltonian_at(k, current), current, dt, tol);
    traj.times[k + 1] = static_cast<double>(k + 1) * dt;
    traj.states.col(static_cast<Eigen::Index>(k + 1)) = current;
  }
  return traj;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, bool with_amplitudes) {
  const auto dim = traj.states.rows();
  out << "t";
  for (Eigen::Index j = 0; j < dim; ++j) out << ",site_" << j << "_abs2";
  if (with_amplitudes) {
    for (Eigen::Index j = 0; j < dim; ++j) out << ",site_" << j << "_re,site_" << j << "_im";
  }
  out << '\n';
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const auto col = traj.states.col(static_cast<Eigen::Index>(k));
    out << traj.times[k];
    for (Eigen::Index j = 0; j < dim; ++j) out << ',' << std::norm(col(j));
    if (with_amplitudes) {
      for (Eigen::Index j = 0; j < dim; ++j) out << ',' << col(j).real() << ',' << col(j).imag();
    }
    out << '\n';
  }
}

}  // namespace spincomm
