#include "spincomm/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spincomm/errors.hpp"

namespace spincomm {

ControlSubspaceProjector make_projector(const ExcitationBasis& basis,
                                        std::span<const std::size_t> sites) {
  std::vector<char> inside(basis.n_sites(), 0);
  for (auto s : sites) {
    if (s >= basis.n_sites()) throw InvalidArgument("control site out of range");
    inside[s] = 1;
  }
  ControlSubspaceProjector proj{basis, {}};
  if (basis.n_excitations() == 0) return proj;
  for (std::size_t r = 0; r < basis.dimension(); ++r) {
    const auto sub = basis.unrank(r);
    if (std::all_of(sub.begin(), sub.end(), [&](std::size_t s) { return inside[s] != 0; }))
      proj.kept.push_back(static_cast<Eigen::Index>(r));
  }
  return proj;
}

namespace {

void require_same_basis(const SpectralPropagator& p, const ControlSubspaceProjector& pa,
                        const ControlSubspaceProjector& pb) {
  if (!(pa.basis == p.basis()) || !(pb.basis == p.basis()))
    throw InvalidArgument("projectors and propagator use different excitation sectors");
}

}  // namespace

ComplexMatrix projected_propagator(const SpectralPropagator& p, const ControlSubspaceProjector& pa,
                                   const ControlSubspaceProjector& pb, double t) {
  require_same_basis(p, pa, pb);
  return p.block(pb.kept, pa.kept, t);
}

EncodingSolution optimal_encoding(const SpectralPropagator& p, const ControlSubspaceProjector& pa,
                                  const ControlSubspaceProjector& pb, double t, std::size_t k) {
  const auto na = static_cast<Eigen::Index>(pa.kept.size());
  const auto nb = static_cast<Eigen::Index>(pb.kept.size());
  if (static_cast<Eigen::Index>(k) > std::min(na, nb))
    throw InvalidArgument("requested " + std::to_string(k) + " singular triplets from a " +
                          std::to_string(nb) + "x" + std::to_string(na) + " block");
  const ComplexMatrix block = projected_propagator(p, pa, pb, t);

  EncodingSolution sol;
  sol.time = t;
  sol.subspace_n = p.basis().n_excitations();
  const auto dim = p.dimension();
  const auto kk = static_cast<Eigen::Index>(k);
  sol.singular_values = RealVector::Zero(kk);
  sol.right_vectors = ComplexMatrix::Zero(dim, kk);
  sol.left_vectors = ComplexMatrix::Zero(dim, kk);
  if (kk == 0) return sol;

  Eigen::JacobiSVD<ComplexMatrix> svd(block, Eigen::ComputeThinU | Eigen::ComputeThinV);
  for (Eigen::Index j = 0; j < kk; ++j) {
    ComplexVector w = svd.matrixV().col(j);
    ComplexVector v = svd.matrixU().col(j);
    Eigen::Index big = 0;
    w.cwiseAbs().maxCoeff(&big);
    const Complex phase = std::abs(w(big)) > 0.0 ? std::conj(w(big)) / std::abs(w(big)) : Complex(1.0);
    w *= phase;
    v *= phase;
    w(big) = std::abs(w(big));
    sol.singular_values(j) = svd.singularValues()(j);
    for (Eigen::Index a = 0; a < na; ++a) sol.right_vectors(pa.kept[static_cast<std::size_t>(a)], j) = w(a);
    for (Eigen::Index b = 0; b < nb; ++b) sol.left_vectors(pb.kept[static_cast<std::size_t>(b)], j) = v(b);
  }
  return sol;
}

std::vector<EncodingSolution> sweep_times(const SpectralPropagator& p,
                                          const ControlSubspaceProjector& pa,
                                          const ControlSubspaceProjector& pb,
                                          std::span<const double> t_grid, std::size_t k) {
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) throw InvalidArgument("time grid must be increasing");
  }
  std::vector<EncodingSolution> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) out.push_back(optimal_encoding(p, pa, pb, t, k));
  return out;
}

std::vector<double> uniform_grid(double a, double b, double step) {
  if (!(step > 0.0)) throw InvalidArgument("grid step must be positive");
  if (b < a) throw InvalidArgument("grid end precedes its start");
  const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = a + static_cast<double>(i) * step;
  return grid;
}

double golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                               double x_tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > x_tol) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

EncodingSolution best_time(const SpectralPropagator& p, const ControlSubspaceProjector& pa,
                           const ControlSubspaceProjector& pb, std::span<const double> t_grid,
                           std::size_t k, bool refine) {
  if (t_grid.empty()) throw InvalidArgument("time grid is empty");
  const auto coarse = sweep_times(p, pa, pb, t_grid, std::max<std::size_t>(k, 1));
  std::size_t best = 0;
  for (std::size_t i = 1; i < coarse.size(); ++i) {
    if (coarse[i].singular_values(0) > coarse[best].singular_values(0)) best = i;
  }
  if (!refine || t_grid.size() < 2) return optimal_encoding(p, pa, pb, t_grid[best], k);

  const double lo = t_grid[best == 0 ? 0 : best - 1];
  const double hi = t_grid[std::min(best + 1, t_grid.size() - 1)];
  auto s1 = [&](double t) {
    return optimal_encoding(p, pa, pb, t, 1).singular_values(0);
  };
  const double t_star = golden_section_maximize(s1, lo, hi, 1e-6);
  // Keep the grid point if refinement landed somewhere worse.
  const double t = s1(t_star) >= coarse[best].singular_values(0) ? t_star : t_grid[best];
  return optimal_encoding(p, pa, pb, t, k);
}

MultiSubspaceResult multi_subspace_optimum(const SpinNetwork& network, double t,
                                           std::size_t n_max, const Tolerances& tol) {
  if (n_max == 0) throw InvalidArgument("n_max must be at least 1");
  if (n_max > network.alice_sites().size())
    throw InvalidArgument("n_max exceeds the number of Alice's sites");
  MultiSubspaceResult result;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto dim = binomial(network.n_sites(), n);
    if (dim > tol.max_sector_dimension)
      throw InvalidArgument("sector H^(" + std::to_string(n) + ") has dimension " +
                            std::to_string(dim) + ", above the cap of " +
                            std::to_string(tol.max_sector_dimension));
    const auto p = diagonalize(restrict_hamiltonian(network, n), tol);
    const auto pa = make_projector(p.basis(), network.alice_sites());
    const auto pb = make_projector(p.basis(), network.bob_sites());
    const std::size_t k = std::min<std::size_t>({1, pa.kept.size(), pb.kept.size()});
    auto sol = optimal_encoding(p, pa, pb, t, k);
    const double s1 = k == 0 ? 0.0 : sol.singular_values(0);
    result.s1_by_sector.push_back(s1);
    if (n == 1 || s1 > result.s1_by_sector[result.subspace_n - 1]) {
      result.best = std::move(sol);
      result.subspace_n = n;
    }
  }
  return result;
}

TransferOutcome transfer_outcome(const SpectralPropagator& p, const ControlSubspaceProjector& pa,
                                 const ControlSubspaceProjector& pb,
                                 const ComplexVector& initial_state, double t,
                                 const Tolerances& tol) {
  require_same_basis(p, pa, pb);
  if (initial_state.size() != p.dimension()) throw InvalidArgument("initial state has wrong dimension");
  if (std::abs(initial_state.norm() - 1.0) > tol.state_norm)
    throw InvalidArgument("initial state is not normalised");
  double inside = 0.0;
  for (auto a : pa.kept) inside += std::norm(initial_state(a));
  const double outside = std::sqrt(std::max(0.0, initial_state.squaredNorm() - inside));
  if (outside > tol.support)
    throw InvalidArgument("initial state has weight " + std::to_string(outside) +
                          " outside Alice's encoding subspace");

  const ComplexVector evolved = evolve(p, initial_state, t, tol);
  ComplexVector on_b(static_cast<Eigen::Index>(pb.kept.size()));
  for (std::size_t b = 0; b < pb.kept.size(); ++b) on_b(static_cast<Eigen::Index>(b)) = evolved(pb.kept[b]);

  TransferOutcome out;
  out.c_b = on_b.squaredNorm();
  out.leak_norm = 1.0 - out.c_b;
  if (out.c_b >= tol.arrival_floor) out.arrival_state = on_b / std::sqrt(out.c_b);
  return out;
}

FidelityEnvelope average_fidelity(double c_b) {
  constexpr double slack = 1e-10;
  if (!(c_b >= -slack && c_b <= 1.0 + slack))
    throw InvalidArgument("c_b = " + std::to_string(c_b) + " lies outside [0, 1]");
  const double c = std::clamp(c_b, 0.0, 1.0);
  const double root = std::sqrt(c);
  return {0.5 + root / 3.0 + c / 6.0, 2.0 / 3.0 + root / 3.0};
}

double group_velocity(const Trajectory& traj, double t_lo, double t_hi) {
  std::vector<double> ts;
  std::vector<double> centroids;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    if (t < t_lo || t > t_hi) continue;
    const RealVector prob = traj.states.col(static_cast<Eigen::Index>(k)).cwiseAbs2();
    const double total = prob.sum();
    if (!(total > 0.0)) throw InvalidArgument("trajectory sample has zero norm");
    const RealVector sites = RealVector::LinSpaced(prob.size(), 0.0, static_cast<double>(prob.size() - 1));
    ts.push_back(t);
    centroids.push_back(sites.dot(prob) / total);
  }
  if (ts.size() < 3) throw InvalidArgument("velocity window holds fewer than 3 samples");

  const Eigen::Map<const RealVector> x(ts.data(), static_cast<Eigen::Index>(ts.size()));
  const Eigen::Map<const RealVector> y(centroids.data(), static_cast<Eigen::Index>(centroids.size()));
  const RealVector dx = x.array() - x.mean();
  return dx.dot(y.array().matrix() - RealVector::Constant(y.size(), y.mean())) / dx.squaredNorm();
}

}  // namespace spincomm
