#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spincomm/network.hpp"
#include "spincomm/propagator.hpp"
#include "spincomm/tolerances.hpp"
#include "spincomm/types.hpp"

namespace spincomm {

// Static XY chain used to design boundary controls: the physical chain with
// n_phantom extra sites on each end, every new coupling and both controllable
// end couplings set to 1. Physical site j sits at extended index n_phantom + j.
struct PhantomExtension {
  ChainSpec physical;
  std::size_t n_phantom = 0;
  ChainSpec extended;

  std::size_t physical_sites() const { return physical.n_sites; }
  std::size_t extended_index(std::size_t physical_site) const { return n_phantom + physical_site; }
};

PhantomExtension build_phantom_system(const ChainSpec& physical, std::size_t n_phantom);

// Boundary couplings J_A (edge 0-1) and J_B (edge N-2 - N-1) for each time
// step, plus the two trajectories they were derived from. psi lives on the
// extended chain, phi on the physical chain; both are sampled at k * dt.
struct ControlSchedule {
  double t_total = 0.0;
  double dt = 0.0;
  std::size_t n_phantom = 0;
  std::vector<double> j_a;
  std::vector<double> j_b;

  double achieved_c_b = 0.0;       // |phi_{N-1}(T)|^2, Bob reads the last site
  double achieved_c_b_pair = 0.0;  // weight on Bob's two sites {N-2, N-1}
  double modified_c_b = 0.0;       // s1^2 of the static extended chain

  std::size_t clamp_count = 0;     // steps where a ratio exceeded [-1, 1]
  std::size_t hold_count = 0;      // 0/0 steps that reused the previous value
  double max_imag_residue = 0.0;   // see derive_controls

  Trajectory psi;
  Trajectory phi;
};

// Derives J_A, J_B so that the physical chain shadows the optimally encoded
// extended chain on its bulk sites.
//
// The extended-chain encoding w1 comes from a real SVD of the projected
// propagator in parity-rotated coordinates x'_j = i^(j - n_phantom) x_j, where
// the XY dynamics is real. For step k the controls are
//   J_A = psi_{n_phantom}(t_k) / phi_0(t_k),
//   J_B = psi_{n_phantom+N-1}(t_k) / phi_{N-1}(t_k),
// evaluated on the real parts of the rotated amplitudes, clamped to [-1, 1],
// then phi advances by one exact exponential of the frozen Hamiltonian.
// max_imag_residue is the largest imaginary part of any rotated boundary
// amplitude or projected-propagator entry; above tol.control_imag_abort the
// derivation aborts with NumericalError. |phi| < tol.control_zero is treated
// as 0/0 and holds the previous value (initially 1).
ControlSchedule derive_controls(const PhantomExtension& ext, double t_total, std::size_t n_steps,
                                const Tolerances& tol = default_tolerances());

// max over samples and bulk sites 1..N-2 of |phi_j - psi_{n_phantom + j}|.
double shadow_residual(const ControlSchedule& schedule);

// Largest deviation from the alternating structure: amplitudes at even offset
// from `origin` real, at odd offset imaginary.
double parity_residual(const Trajectory& traj, std::size_t origin);

struct BaselineResult {
  double max_c_b = 0.0;        // Bob = last two sites
  double t_at_max = 0.0;
  double max_last_site = 0.0;  // Bob reads only the last site
};

// Static chain, single excitation injected at site 0. Maximises C_B over the
// grid, then refines the best coarse local maxima by golden-section search
// within one grid step.
BaselineResult uncontrolled_baseline(const ChainSpec& physical, std::span<const double> t_grid,
                                     bool refine = true);

struct ReplayResult {
  Trajectory phi;
  double c_b = 0.0;       // last site
  double c_b_pair = 0.0;  // last two sites
};

// Runs phi on `physical` under a given schedule (piecewise constant, one value
// per step). The chain may differ from the one the schedule was derived for.
ReplayResult simulate_controls(const ChainSpec& physical, std::span<const double> j_a,
                               std::span<const double> j_b, double dt,
                               const Tolerances& tol = default_tolerances());

}  // namespace spincomm
