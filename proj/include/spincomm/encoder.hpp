#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "spincomm/network.hpp"
#include "spincomm/propagator.hpp"
#include "spincomm/subspace.hpp"
#include "spincomm/tolerances.hpp"
#include "spincomm/types.hpp"

namespace spincomm {

// Diagonal 0/1 projector onto sector states whose excitations all lie inside a
// site set, with the all-zero pattern excluded. Stored as the kept indices.
struct ControlSubspaceProjector {
  ExcitationBasis basis;
  std::vector<Eigen::Index> kept;
};

ControlSubspaceProjector make_projector(const ExcitationBasis& basis,
                                        std::span<const std::size_t> sites);

// Top singular triplets of P_B U(t) P_A. Vectors are in sector coordinates
// (length = basis dimension), one column per triplet. The global phase of each
// pair (w_j, v_j) makes the largest-magnitude entry of w_j real and positive.
struct EncodingSolution {
  double time = 0.0;
  std::size_t subspace_n = 1;
  RealVector singular_values;
  ComplexMatrix right_vectors;
  ComplexMatrix left_vectors;
};

struct TransferOutcome {
  double c_b = 0.0;
  // Normalised B-projected state on Bob's kept indices; absent when c_b is
  // below the arrival floor.
  std::optional<ComplexVector> arrival_state;
  double leak_norm = 1.0;
};

// Average fidelity over pure message states. `lower` is exact for
// single-excitation encodings and a lower bound otherwise.
struct FidelityEnvelope {
  double lower = 0.5;
  double upper = 2.0 / 3.0;
};

// The nonzero |kept_B| x |kept_A| block of P_B U(t) P_A.
ComplexMatrix projected_propagator(const SpectralPropagator& p, const ControlSubspaceProjector& pa,
                                   const ControlSubspaceProjector& pb, double t);

EncodingSolution optimal_encoding(const SpectralPropagator& p, const ControlSubspaceProjector& pa,
                                  const ControlSubspaceProjector& pb, double t, std::size_t k);

std::vector<EncodingSolution> sweep_times(const SpectralPropagator& p,
                                          const ControlSubspaceProjector& pa,
                                          const ControlSubspaceProjector& pb,
                                          std::span<const double> t_grid, std::size_t k);

// a, a+step, ..., up to b (inclusive within 1e-9 * step).
std::vector<double> uniform_grid(double a, double b, double step);

// Golden-section search for a local maximum of f on [lo, hi].
double golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                               double x_tol = 1e-7);

// Coarse argmax of s1 over t_grid, then golden-section refinement within one
// grid step on either side. Returns the refined solution (k triplets).
EncodingSolution best_time(const SpectralPropagator& p, const ControlSubspaceProjector& pa,
                           const ControlSubspaceProjector& pb, std::span<const double> t_grid,
                           std::size_t k, bool refine = true);

struct MultiSubspaceResult {
  EncodingSolution best;
  std::size_t subspace_n = 1;
  std::vector<double> s1_by_sector;  // index n - 1
};

// Independent SVDs in H^(1) .. H^(n_max); the sector with the largest s1 wins
// (ties go to the lower sector).
MultiSubspaceResult multi_subspace_optimum(const SpinNetwork& network, double t,
                                           std::size_t n_max,
                                           const Tolerances& tol = default_tolerances());

TransferOutcome transfer_outcome(const SpectralPropagator& p, const ControlSubspaceProjector& pa,
                                 const ControlSubspaceProjector& pb,
                                 const ComplexVector& initial_state, double t,
                                 const Tolerances& tol = default_tolerances());

FidelityEnvelope average_fidelity(double c_b);

// Least-squares slope of the excitation centroid sum_j j |psi_j|^2 / sum |psi_j|^2
// against t, using samples with t in [t_lo, t_hi].
double group_velocity(const Trajectory& traj, double t_lo, double t_hi);

}  // namespace spincomm
