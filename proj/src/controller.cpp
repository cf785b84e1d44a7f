#include "spincomm/controller.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "spincomm/encoder.hpp"
#include "spincomm/errors.hpp"
#include "spincomm/subspace.hpp"

namespace spincomm {

namespace {

// i^m for the parity rotation x'_j = i^(j - origin) x_j.
Complex rotation(long long j, long long origin) {
  switch (((j - origin) % 4 + 4) % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

RealMatrix single_excitation_xy(std::span<const double> couplings) {
  return restrict_hamiltonian(chain_from_couplings(couplings, CouplingKind::XY, 1, 1), 1).matrix;
}

std::string sci(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

void require_xy_chain(const ChainSpec& chain) {
  if (chain.kind != CouplingKind::XY)
    throw InvalidArgument("boundary control is only derived for XY chains");
  if (chain.couplings.size() + 1 != chain.n_sites)
    throw InvalidArgument("chain coupling count does not match its length");
}

struct BoundaryRatio {
  double value;
  double residue;
  bool defined;
};

BoundaryRatio boundary_ratio(Complex psi_b, Complex phi_b, Complex rot, double zero) {
  const Complex psi_r = rot * psi_b;
  const Complex phi_r = rot * phi_b;
  const double residue = std::max(std::abs(psi_r.imag()), std::abs(phi_r.imag()));
  if (std::abs(phi_r.real()) < zero) return {0.0, residue, false};
  return {psi_r.real() / phi_r.real(), residue, true};
}

}  // namespace

PhantomExtension build_phantom_system(const ChainSpec& physical, std::size_t n_phantom) {
  require_xy_chain(physical);
  if (physical.n_sites < 4) throw InvalidArgument("controlled chain needs at least 4 sites");
  if (n_phantom < 1) throw InvalidArgument("need at least one phantom spin per side");

  PhantomExtension ext{physical, n_phantom, {}};
  ext.extended.kind = CouplingKind::XY;
  ext.extended.n_sites = physical.n_sites + 2 * n_phantom;
  auto& c = ext.extended.couplings;
  c.assign(n_phantom, 1.0);
  c.push_back(1.0);  // J_A position
  c.insert(c.end(), physical.couplings.begin() + 1, physical.couplings.end() - 1);
  c.push_back(1.0);  // J_B position
  c.insert(c.end(), n_phantom, 1.0);
  return ext;
}

ControlSchedule derive_controls(const PhantomExtension& ext, double t_total, std::size_t n_steps,
                                const Tolerances& tol) {
  if (n_steps < 1) throw InvalidArgument("need at least one time step");
  if (!(t_total > 0.0)) throw InvalidArgument("total time must be positive");
  require_xy_chain(ext.physical);

  const std::size_t n = ext.physical.n_sites;
  const std::size_t np = ext.n_phantom;
  const std::size_t m = ext.extended.n_sites;
  const auto origin = static_cast<long long>(np);

  const auto p = diagonalize(restrict_hamiltonian(chain_network(ext.extended, np + 1, np + 1), 1), tol);
  std::vector<std::size_t> alice(np + 1), bob(np + 1);
  for (std::size_t k = 0; k <= np; ++k) {
    alice[k] = k;
    bob[k] = m - np - 1 + k;
  }
  const auto pa = make_projector(p.basis(), alice);
  const auto pb = make_projector(p.basis(), bob);

  // Real SVD in rotated coordinates.
  const ComplexMatrix block = projected_propagator(p, pa, pb, t_total);
  ComplexMatrix rotated(block.rows(), block.cols());
  for (Eigen::Index r = 0; r < block.rows(); ++r) {
    for (Eigen::Index c = 0; c < block.cols(); ++c) {
      rotated(r, c) = rotation(pb.kept[static_cast<std::size_t>(r)], origin) * block(r, c) /
                      rotation(pa.kept[static_cast<std::size_t>(c)], origin);
    }
  }
  ControlSchedule sched;
  sched.max_imag_residue = rotated.imag().cwiseAbs().maxCoeff();
  if (sched.max_imag_residue > tol.control_imag_abort)
    throw NumericalError("rotated projected propagator is not real (residue " +
                         sci(sched.max_imag_residue) + ")");
  Eigen::JacobiSVD<RealMatrix> svd(rotated.real(), Eigen::ComputeThinV);
  RealVector w_rot = svd.matrixV().col(0);
  Eigen::Index big = 0;
  w_rot.cwiseAbs().maxCoeff(&big);
  if (w_rot(big) < 0.0) w_rot = -w_rot;
  ComplexVector w = ComplexVector::Zero(static_cast<Eigen::Index>(m));
  for (std::size_t a = 0; a < pa.kept.size(); ++a) {
    const auto j = pa.kept[a];
    w(j) = w_rot(static_cast<Eigen::Index>(a)) / rotation(j, origin);
  }

  sched.t_total = t_total;
  sched.dt = t_total / static_cast<double>(n_steps);
  sched.n_phantom = np;
  sched.modified_c_b = svd.singularValues()(0) * svd.singularValues()(0);

  std::vector<double> times(n_steps + 1);
  for (std::size_t k = 0; k <= n_steps; ++k) times[k] = static_cast<double>(k) * sched.dt;
  sched.psi = sample_trajectory(p, w, times, tol);

  const auto ia = static_cast<Eigen::Index>(ext.extended_index(0));
  const auto ib = static_cast<Eigen::Index>(ext.extended_index(n - 1));
  const Complex rot_a = rotation(ia, origin);
  const Complex rot_b = rotation(ib, origin);
  const auto last = static_cast<Eigen::Index>(n - 1);

  std::vector<double> couplings = ext.physical.couplings;
  double held_a = 1.0;
  double held_b = 1.0;
  auto control = [&](std::size_t k, const ComplexVector& phi) -> RealMatrix {
    const auto col = static_cast<Eigen::Index>(k);
    const auto ra = boundary_ratio(sched.psi.states(ia, col), phi(0), rot_a, tol.control_zero);
    const auto rb = boundary_ratio(sched.psi.states(ib, col), phi(last), rot_b, tol.control_zero);
    sched.max_imag_residue = std::max({sched.max_imag_residue, ra.residue, rb.residue});
    if (sched.max_imag_residue > tol.control_imag_abort)
      throw NumericalError("control ratio has imaginary residue " +
                           sci(sched.max_imag_residue) + " at step " + std::to_string(k));
    auto settle = [&](const BoundaryRatio& r, double& held) {
      if (!r.defined) {
        ++sched.hold_count;
        return held;
      }
      double v = r.value;
      if (std::abs(v) > 1.0) {
        ++sched.clamp_count;
        v = std::clamp(v, -1.0, 1.0);
      }
      held = v;
      return v;
    };
    const double ja = settle(ra, held_a);
    const double jb = settle(rb, held_b);
    sched.j_a.push_back(ja);
    sched.j_b.push_back(jb);
    couplings.front() = ja;
    couplings.back() = jb;
    return single_excitation_xy(couplings);
  };

  ComplexVector phi0 = ComplexVector::Zero(static_cast<Eigen::Index>(n));
  phi0(0) = 1.0;
  sched.phi = step_piecewise(control, phi0, sched.dt, n_steps, tol);

  const auto final_col = static_cast<Eigen::Index>(n_steps);
  sched.achieved_c_b = std::norm(sched.phi.states(last, final_col));
  sched.achieved_c_b_pair = sched.achieved_c_b + std::norm(sched.phi.states(last - 1, final_col));
  return sched;
}

double shadow_residual(const ControlSchedule& schedule) {
  const auto n = schedule.phi.states.rows();
  const auto offset = static_cast<Eigen::Index>(schedule.n_phantom);
  if (n < 3) return 0.0;
  const auto bulk_phi = schedule.phi.states.middleRows(1, n - 2);
  const auto bulk_psi = schedule.psi.states.middleRows(offset + 1, n - 2);
  return (bulk_phi - bulk_psi).cwiseAbs().maxCoeff();
}

double parity_residual(const Trajectory& traj, std::size_t origin) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < traj.states.rows(); ++j) {
    const Complex rot = rotation(j, static_cast<long long>(origin));
    for (Eigen::Index k = 0; k < traj.states.cols(); ++k)
      worst = std::max(worst, std::abs((rot * traj.states(j, k)).imag()));
  }
  return worst;
}

BaselineResult uncontrolled_baseline(const ChainSpec& physical, std::span<const double> t_grid,
                                     bool refine) {
  if (physical.couplings.size() + 1 != physical.n_sites || physical.n_sites < 2)
    throw InvalidArgument("baseline needs a chain of at least two sites");
  const auto net = chain_network(physical, 1, 1);
  const auto p = diagonalize(restrict_hamiltonian(net, 1));
  const auto n = static_cast<Eigen::Index>(physical.n_sites);

  // Only column 0 of U(t) is needed: u_r(t) = sum_k V(r,k) V(0,k) e^{-i lambda_k t}.
  const RealMatrix& v = p.eigenvectors();
  const RealVector weight_last = v.row(n - 1).transpose().cwiseProduct(v.row(0).transpose());
  const RealVector weight_prev = v.row(n - 2).transpose().cwiseProduct(v.row(0).transpose());
  auto arrival = [&](double t) {
    const ComplexVector e = (p.eigenvalues() * (-t)).unaryExpr([](double a) { return std::polar(1.0, a); });
    const double last = std::norm(weight_last.cast<Complex>().dot(e));
    const double prev = std::norm(weight_prev.cast<Complex>().dot(e));
    return std::pair{last + prev, last};
  };

  BaselineResult best;
  std::vector<double> pair(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const auto [cb, last] = arrival(t_grid[i]);
    pair[i] = cb;
    if (cb > best.max_c_b) {
      best.max_c_b = cb;
      best.t_at_max = t_grid[i];
    }
    best.max_last_site = std::max(best.max_last_site, last);
  }
  if (!refine || t_grid.size() < 3) return best;

  // Refine the strongest coarse local maxima.
  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < pair.size(); ++i) {
    const bool left = i == 0 || pair[i] >= pair[i - 1];
    const bool right = i + 1 == pair.size() || pair[i] >= pair[i + 1];
    if (left && right) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](auto a, auto b) { return pair[a] > pair[b]; });
  peaks.resize(std::min<std::size_t>(peaks.size(), 16));
  for (auto i : peaks) {
    const double lo = t_grid[i == 0 ? 0 : i - 1];
    const double hi = t_grid[std::min(i + 1, t_grid.size() - 1)];
    const double t_pair = golden_section_maximize([&](double t) { return arrival(t).first; }, lo, hi, 1e-8);
    const double t_last = golden_section_maximize([&](double t) { return arrival(t).second; }, lo, hi, 1e-8);
    const auto [cb, _] = arrival(t_pair);
    if (cb > best.max_c_b) {
      best.max_c_b = cb;
      best.t_at_max = t_pair;
    }
    best.max_last_site = std::max(best.max_last_site, arrival(t_last).second);
  }
  return best;
}

ReplayResult simulate_controls(const ChainSpec& physical, std::span<const double> j_a,
                               std::span<const double> j_b, double dt, const Tolerances& tol) {
  require_xy_chain(physical);
  if (physical.n_sites < 4) throw InvalidArgument("controlled chain needs at least 4 sites");
  if (j_a.size() != j_b.size()) throw InvalidArgument("J_A and J_B schedules differ in length");

  std::vector<double> couplings = physical.couplings;
  auto step = [&](std::size_t k, const ComplexVector&) -> RealMatrix {
    couplings.front() = j_a[k];
    couplings.back() = j_b[k];
    return single_excitation_xy(couplings);
  };
  const auto n = static_cast<Eigen::Index>(physical.n_sites);
  ComplexVector phi0 = ComplexVector::Zero(n);
  phi0(0) = 1.0;

  ReplayResult out;
  out.phi = step_piecewise(step, phi0, dt, j_a.size(), tol);
  const auto last = out.phi.states.col(out.phi.states.cols() - 1);
  out.c_b = std::norm(last(n - 1));
  out.c_b_pair = out.c_b + std::norm(last(n - 2));
  return out;
}

}  // namespace spincomm
