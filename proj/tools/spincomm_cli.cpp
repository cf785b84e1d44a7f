// spincomm: command-line front end. Every output file starts with "# key=value"
// lines holding the resolved configuration, so it can be read on its own.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spincomm/controller.hpp"
#include "spincomm/csv.hpp"
#include "spincomm/encoder.hpp"
#include "spincomm/entanglement.hpp"
#include "spincomm/errors.hpp"
#include "spincomm/network_io.hpp"
#include "spincomm/propagator.hpp"

namespace fs = std::filesystem;
using namespace spincomm;

namespace {

constexpr int kConfigError = 1;
constexpr int kNumericalError = 2;
constexpr int kIoError = 3;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16g", x);
  return buf;
}

struct GridSpec {
  double a = 0, b = 0, step = 0;
  std::string text;
};

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  g.text = text;
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument("--t-grid expects a:b:step, got '" + text + "'");
    }
  }
  if (parts.size() != 3) throw InvalidArgument("--t-grid expects a:b:step, got '" + text + "'");
  g.a = parts[0];
  g.b = parts[1];
  g.step = parts[2];
  return g;
}

// Options shared by the subcommands; unset ones are simply not recorded.
struct Options {
  std::string command;
  std::string network;
  std::string t_grid;
  std::optional<double> t;
  std::size_t steps = 2000;
  std::size_t phantom = 20;
  std::size_t k = 4;
  std::size_t sector = 1;
  std::optional<unsigned long long> seed;
  std::string out;
  std::optional<std::size_t> inject;
  bool amplitudes = false;
  std::string velocity_window;
  std::string schedule;
  std::vector<double> c_b;
  std::string sweep_csv;
  double rho11 = 1.0;
  std::optional<double> offdiag_re, offdiag_im;
  bool no_refine = false;
};

struct Loaded {
  SpinNetwork network;
  std::string seed;  // "none" when the description draws nothing at random
};

Loaded load(const Options& o) {
  if (o.network.empty()) throw InvalidArgument("--network is required");
  std::ifstream in(o.network);
  if (!in) throw IoError("cannot open network file " + o.network);
  nlohmann::json desc;
  try {
    in >> desc;
  } catch (const nlohmann::json::parse_error& ex) {
    throw InvalidArgument("cannot parse " + o.network + ": " + ex.what());
  }
  std::string seed = "none";
  if (desc.is_object() && desc.contains("random_couplings")) {
    const auto& r = desc.at("random_couplings");
    seed = std::to_string(o.seed ? *o.seed : r.value("seed", 0ULL));
  } else if (o.seed) {
    seed = std::to_string(*o.seed) + " (unused)";
  }
  return {build_network(desc, o.seed), seed};
}

class Header {
 public:
  void add(const std::string& key, const std::string& value) { text_ += "# " + key + "=" + value + "\n"; }
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

Header base_header(const Options& o, const Tolerances& tol, const std::optional<Loaded>& net) {
  Header h;
  h.add("tool", "spincomm");
  h.add("command", o.command);
  if (net) {
    h.add("network", o.network);
    h.add("seed", net->seed);
    h.add("n_sites", std::to_string(net->network.n_sites()));
    h.add("network_json", network_to_json(net->network).dump());
  } else {
    h.add("seed", o.seed ? std::to_string(*o.seed) + " (unused)" : "none");
  }
  h.add("tolerances", tol.describe());
  return h;
}

fs::path output_path(const Options& o, const std::string& suffix) {
  if (o.out.empty()) throw InvalidArgument("--out is required");
  return fs::path(o.out + suffix);
}

std::vector<std::size_t> sites_of(const ControlSubspaceProjector& p) {
  std::vector<std::size_t> out;
  for (auto idx : p.kept) out.push_back(p.basis.unrank(static_cast<std::size_t>(idx))[0]);
  return out;
}

void print(const std::string& line) { std::cout << line << '\n'; }

// ---- subcommands ---------------------------------------------------------

int run_sweep(const Options& o, const Tolerances& tol) {
  const auto net = load(o);
  const auto grid = parse_grid(o.t_grid.empty() ? "0:250:0.25" : o.t_grid);
  const auto times = uniform_grid(grid.a, grid.b, grid.step);
  const auto p = diagonalize(restrict_hamiltonian(net.network, o.sector), tol);
  const auto pa = make_projector(p.basis(), net.network.alice_sites());
  const auto pb = make_projector(p.basis(), net.network.bob_sites());
  const std::size_t k = std::min({o.k, pa.kept.size(), pb.kept.size()});
  const auto sols = sweep_times(p, pa, pb, times, k);
  for (const auto& s : sols)
    if (k > 0 && s.singular_values(0) > 1.0 + 1e-10)
      throw NumericalError("singular value above 1 at T=" + num(s.time));

  auto h = base_header(o, tol, net);
  h.add("t_grid", grid.text);
  h.add("k", std::to_string(k));
  h.add("sector", std::to_string(o.sector));
  std::string body = "T";
  for (std::size_t j = 1; j <= k; ++j) body += ",s" + std::to_string(j);
  body += "\n";
  for (const auto& s : sols) {
    body += num(s.time);
    for (Eigen::Index j = 0; j < s.singular_values.size(); ++j) body += "," + num(s.singular_values(j));
    body += "\n";
  }
  if (k > 0 && !times.empty()) {
    const auto best = best_time(p, pa, pb, times, 1, !o.no_refine);
    h.add("best_T", num(best.time));
    h.add("best_s1", num(best.singular_values(0)));
    print("best T=" + num(best.time) + " s1=" + num(best.singular_values(0)));
  }
  const auto path = output_path(o, ".csv");
  write_file_atomically(path, h.str() + body);
  print("wrote " + path.string());
  return 0;
}

struct Encoded {
  SpectralPropagator p;
  EncodingSolution sol;
  ControlSubspaceProjector pa, pb;
};

Encoded encode_h1(const Options& o, const Loaded& net, const Tolerances& tol) {
  auto p = diagonalize(restrict_hamiltonian(net.network, 1), tol);
  auto pa = make_projector(p.basis(), net.network.alice_sites());
  auto pb = make_projector(p.basis(), net.network.bob_sites());
  const std::size_t k = std::min({o.k, pa.kept.size(), pb.kept.size()});
  EncodingSolution sol;
  if (o.t) {
    sol = optimal_encoding(p, pa, pb, *o.t, k);
  } else {
    if (o.t_grid.empty()) throw InvalidArgument("give --t or --t-grid");
    const auto g = parse_grid(o.t_grid);
    sol = best_time(p, pa, pb, uniform_grid(g.a, g.b, g.step), k, !o.no_refine);
  }
  return {std::move(p), std::move(sol), std::move(pa), std::move(pb)};
}

int run_encode(const Options& o, const Tolerances& tol) {
  const auto net = load(o);
  const auto enc = encode_h1(o, net, tol);
  auto h = base_header(o, tol, net);
  if (o.t) h.add("t", num(*o.t));
  else h.add("t_grid", o.t_grid);
  h.add("T", num(enc.sol.time));
  h.add("k", std::to_string(enc.sol.singular_values.size()));
  for (Eigen::Index j = 0; j < enc.sol.singular_values.size(); ++j)
    h.add("s" + std::to_string(j + 1), num(enc.sol.singular_values(j)));
  const double s1 = enc.sol.singular_values.size() ? enc.sol.singular_values(0) : 0.0;
  const auto env = average_fidelity(std::min(1.0, s1 * s1));
  h.add("c_b", num(s1 * s1));
  h.add("F_bar_lower", num(env.lower));
  h.add("F_bar_upper", num(env.upper));

  std::string body = "site,re,im\n";
  if (enc.sol.right_vectors.cols() > 0) {
    for (auto site : sites_of(enc.pa)) {
      const Complex w = enc.sol.right_vectors(static_cast<Eigen::Index>(site), 0);
      body += std::to_string(site) + "," + num(w.real()) + "," + num(w.imag()) + "\n";
    }
  }
  const auto path = output_path(o, ".csv");
  write_file_atomically(path, h.str() + body);
  print("T=" + num(enc.sol.time) + " s1=" + num(s1));
  print("wrote " + path.string());
  return 0;
}

int run_evolve(const Options& o, const Tolerances& tol) {
  const auto net = load(o);
  if (o.t_grid.empty()) throw InvalidArgument("evolve needs --t-grid for the sample times");
  const auto g = parse_grid(o.t_grid);
  const auto times = uniform_grid(g.a, g.b, g.step);

  auto h = base_header(o, tol, net);
  h.add("t_grid", g.text);
  ComplexVector x0;
  std::optional<SpectralPropagator> p;
  if (o.inject) {
    if (*o.inject >= net.network.n_sites()) throw InvalidArgument("--inject site out of range");
    p = diagonalize(restrict_hamiltonian(net.network, 1), tol);
    x0 = ComplexVector::Unit(p->dimension(), static_cast<Eigen::Index>(*o.inject));
    h.add("initial", "site " + std::to_string(*o.inject));
  } else {
    if (!o.t) throw InvalidArgument("evolve needs --t (encoding time) or --inject");
    Options one = o;
    one.k = 1;
    auto enc = encode_h1(one, net, tol);
    if (enc.sol.right_vectors.cols() == 0) throw InvalidArgument("empty encoding subspace");
    x0 = enc.sol.right_vectors.col(0);
    h.add("initial", "w1");
    h.add("t", num(*o.t));
    h.add("s1", num(enc.sol.singular_values(0)));
    p.emplace(std::move(enc.p));
  }
  const auto traj = sample_trajectory(*p, x0, times, tol);
  for (Eigen::Index c = 0; c < traj.states.cols(); ++c)
    if (std::abs(traj.states.col(c).norm() - 1.0) > tol.state_norm)
      throw NumericalError("trajectory lost normalisation at t=" + num(traj.times[static_cast<std::size_t>(c)]));
  if (!o.velocity_window.empty()) {
    const auto colon = o.velocity_window.find(':');
    if (colon == std::string::npos) throw InvalidArgument("--velocity-window expects lo:hi");
    const double lo = std::stod(o.velocity_window.substr(0, colon));
    const double hi = std::stod(o.velocity_window.substr(colon + 1));
    const double v = group_velocity(traj, lo, hi);
    h.add("velocity_window", o.velocity_window);
    h.add("group_velocity", num(v));
    print("group velocity " + num(v));
  }
  h.add("amplitudes", o.amplitudes ? "true" : "false");
  std::ostringstream body;
  body.precision(16);
  write_trajectory_csv(body, traj, o.amplitudes);
  const auto path = output_path(o, ".csv");
  write_file_atomically(path, h.str() + body.str());
  print("wrote " + path.string());
  return 0;
}

void check_schedule(const ControlSchedule& s, const Tolerances& tol) {
  for (std::size_t k = 0; k < s.j_a.size(); ++k)
    if (std::abs(s.j_a[k]) > 1.0 + 1e-9 || std::abs(s.j_b[k]) > 1.0 + 1e-9)
      throw NumericalError("control exceeds |J| <= 1 at step " + std::to_string(k));
  if (s.max_imag_residue > tol.control_imag_abort)
    throw NumericalError("control imaginary residue " + num(s.max_imag_residue));
}

int run_derive(const Options& o, const Tolerances& tol) {
  const auto net = load(o);
  const auto chain = chain_spec_from_network(net.network);
  const auto ext = build_phantom_system(chain, o.phantom);
  double t_total = 0.0;
  if (o.t) {
    t_total = *o.t;
  } else {
    if (o.t_grid.empty()) throw InvalidArgument("derive-controls needs --t or --t-grid");
    // T maximising s1 of the extended chain between the modified Alice and Bob
    const auto g = parse_grid(o.t_grid);
    const auto enet = chain_network(ext.extended, o.phantom + 1, o.phantom + 1);
    const auto p = diagonalize(restrict_hamiltonian(enet, 1), tol);
    const auto pa = make_projector(p.basis(), enet.alice_sites());
    const auto pb = make_projector(p.basis(), enet.bob_sites());
    t_total = best_time(p, pa, pb, uniform_grid(g.a, g.b, g.step), 1, !o.no_refine).time;
  }
  const auto s = derive_controls(ext, t_total, o.steps, tol);
  check_schedule(s, tol);
  const double residual = shadow_residual(s);

  auto h = base_header(o, tol, net);
  if (!o.t) h.add("t_grid", o.t_grid);
  h.add("t", num(t_total));
  h.add("steps", std::to_string(o.steps));
  h.add("phantom", std::to_string(o.phantom));
  h.add("dt", num(s.dt));
  h.add("achieved_c_b", num(s.achieved_c_b));
  h.add("achieved_c_b_pair", num(s.achieved_c_b_pair));
  h.add("modified_c_b", num(s.modified_c_b));
  h.add("shadow_residual", num(residual));
  h.add("clamp_count", std::to_string(s.clamp_count));
  h.add("hold_count", std::to_string(s.hold_count));
  h.add("max_imag_residue", num(s.max_imag_residue));
  std::string body = "t,J_A,J_B\n";
  for (std::size_t k = 0; k < s.j_a.size(); ++k)
    body += num(static_cast<double>(k) * s.dt) + "," + num(s.j_a[k]) + "," + num(s.j_b[k]) + "\n";

  nlohmann::json summary = {{"T", t_total},
                            {"n_steps", o.steps},
                            {"n_phantom", o.phantom},
                            {"dt", s.dt},
                            {"seed", net.seed},
                            {"network", o.network},
                            {"achieved_c_b", s.achieved_c_b},
                            {"achieved_c_b_pair", s.achieved_c_b_pair},
                            {"modified_c_b", s.modified_c_b},
                            {"shadow_residual", residual},
                            {"clamp_count", s.clamp_count},
                            {"hold_count", s.hold_count},
                            {"max_imag_residue", s.max_imag_residue},
                            {"tolerances", tol.describe()}};
  const auto csv = output_path(o, ".csv");
  const auto js = output_path(o, ".json");
  write_file_atomically(csv, h.str() + body);
  write_file_atomically(js, summary.dump(2) + "\n");
  print("achieved C_B=" + num(s.achieved_c_b) + " (pair " + num(s.achieved_c_b_pair) +
        ") shadow residual=" + num(residual) + " clamps=" + std::to_string(s.clamp_count));
  print("wrote " + csv.string() + " and " + js.string());
  return 0;
}

int run_simulate(const Options& o, const Tolerances& tol) {
  const auto net = load(o);
  if (o.schedule.empty()) throw InvalidArgument("simulate-controls needs --schedule");
  const auto table = read_csv(o.schedule);
  const auto ct = table.column("t");
  const auto ca = table.column("J_A");
  const auto cb = table.column("J_B");
  if (table.rows.empty()) throw InvalidArgument("schedule has no rows");
  std::vector<double> ja, jb;
  for (const auto& r : table.rows) {
    ja.push_back(r[ca]);
    jb.push_back(r[cb]);
  }
  double dt = 0.0;
  if (auto it = table.meta.find("dt"); it != table.meta.end()) dt = std::stod(it->second);
  else if (table.rows.size() >= 2) dt = table.rows[1][ct] - table.rows[0][ct];
  if (!(dt > 0.0)) throw InvalidArgument("cannot determine the schedule's time step");

  const auto chain = chain_spec_from_network(net.network);
  const auto replay = simulate_controls(chain, ja, jb, dt, tol);

  auto h = base_header(o, tol, net);
  h.add("schedule", o.schedule);
  h.add("dt", num(dt));
  h.add("steps", std::to_string(ja.size()));
  h.add("c_b", num(replay.c_b));
  h.add("c_b_pair", num(replay.c_b_pair));
  std::string body = "t,c_b,c_b_pair\n";
  const auto n = replay.phi.states.rows();
  for (Eigen::Index k = 0; k < replay.phi.states.cols(); ++k) {
    const double last = std::norm(replay.phi.states(n - 1, k));
    body += num(replay.phi.times[static_cast<std::size_t>(k)]) + "," + num(last) + "," +
            num(last + std::norm(replay.phi.states(n - 2, k))) + "\n";
  }
  const auto path = output_path(o, ".csv");
  write_file_atomically(path, h.str() + body);
  print("replayed C_B=" + num(replay.c_b) + " (pair " + num(replay.c_b_pair) + ")");
  print("wrote " + path.string());
  return 0;
}

int run_concurrence(const Options& o, const Tolerances& tol) {
  std::vector<std::pair<double, double>> rows;  // (T, c_b)
  if (!o.sweep_csv.empty()) {
    const auto table = read_csv(o.sweep_csv);
    const auto ct = table.column("T");
    const auto cs = table.column("s1");
    for (const auto& r : table.rows) rows.emplace_back(r[ct], std::min(1.0, r[cs] * r[cs]));
  }
  for (double c : o.c_b) rows.emplace_back(o.t.value_or(std::nan("")), c);
  if (rows.empty()) throw InvalidArgument("concurrence-check needs --c-b or --sweep");

  std::optional<Complex> off;
  if (o.offdiag_re || o.offdiag_im) off = Complex(o.offdiag_re.value_or(0.0), o.offdiag_im.value_or(0.0));

  auto h = base_header(o, tol, std::nullopt);
  if (!o.sweep_csv.empty()) h.add("sweep", o.sweep_csv);
  h.add("rho_tilde_11", num(o.rho11));
  if (off) h.add("rho_tilde_offdiag", num(off->real()) + "+" + num(off->imag()) + "i");
  h.add("basis", "|00>,|01>,|10>,|11> (reference spin first)");
  std::string body = "T,c_b,E,F_bar_lower,F_bar_upper\n";
  for (const auto& [t, c] : rows) {
    const auto check = verify_concurrence_identity(c, {o.rho11}, off, tol);
    const auto f = average_fidelity(c);
    body += num(t) + "," + num(c) + "," + num(check.entanglement) + "," + num(f.lower) + "," + num(f.upper) + "\n";
  }
  const auto path = output_path(o, ".csv");
  write_file_atomically(path, h.str() + body);
  print("checked " + std::to_string(rows.size()) + " value(s); E = sqrt(c_b) holds");
  print("wrote " + path.string());
  return 0;
}

int run_baseline(const Options& o, const Tolerances& tol) {
  const auto net = load(o);
  const auto chain = chain_spec_from_network(net.network);
  const auto g = parse_grid(o.t_grid.empty() ? "0:1000:0.25" : o.t_grid);
  const auto times = uniform_grid(g.a, g.b, g.step);
  const auto res = uncontrolled_baseline(chain, times, !o.no_refine);

  const auto cnet = chain_network(chain, 1, 2);
  const auto p = diagonalize(restrict_hamiltonian(cnet, 1), tol);
  const auto e0 = ComplexVector::Unit(p.dimension(), 0);
  const auto traj = sample_trajectory(p, e0, times, tol);

  auto h = base_header(o, tol, net);
  h.add("t_grid", g.text);
  h.add("refine", o.no_refine ? "false" : "true");
  h.add("max_c_b", num(res.max_c_b));
  h.add("t_at_max", num(res.t_at_max));
  h.add("max_c_b_last_site", num(res.max_last_site));
  std::string body = "t,c_b,c_b_last\n";
  const auto n = traj.states.rows();
  for (Eigen::Index k = 0; k < traj.states.cols(); ++k) {
    const double last = std::norm(traj.states(n - 1, k));
    body += num(traj.times[static_cast<std::size_t>(k)]) + "," + num(last + std::norm(traj.states(n - 2, k))) +
            "," + num(last) + "\n";
  }
  const auto path = output_path(o, ".csv");
  write_file_atomically(path, h.str() + body);
  print("max C_B=" + num(res.max_c_b) + " at t=" + num(res.t_at_max) + " (last site only " +
        num(res.max_last_site) + ")");
  print("wrote " + path.string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SVD-optimal encodings and boundary control for spin-network state transfer"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool network) {
    if (network) sub->add_option("--network", o.network, "network description (JSON)")->required();
    sub->add_option("--seed", o.seed, "seed for random_couplings (overrides the file)");
    sub->add_option("--out", o.out, "output path prefix")->required();
  };

  auto* sweep = app.add_subcommand("sweep", "singular values of P_B U(T) P_A over a time grid");
  common(sweep, true);
  sweep->add_option("--t-grid", o.t_grid, "a:b:step (default 0:250:0.25)");
  sweep->add_option("--k", o.k, "number of singular values")->capture_default_str();
  sweep->add_option("--sector", o.sector, "excitation number n")->capture_default_str();
  sweep->add_flag("--no-refine", o.no_refine, "skip golden-section refinement of the peak");

  auto* encode = app.add_subcommand("encode", "optimal encoding w1 at --t, or at the best time on --t-grid");
  common(encode, true);
  encode->add_option("--t", o.t, "transfer time");
  encode->add_option("--t-grid", o.t_grid, "a:b:step searched when --t is absent");
  encode->add_option("--k", o.k, "singular values reported in the header")->capture_default_str();
  encode->add_flag("--no-refine", o.no_refine);

  auto* evolve = app.add_subcommand("evolve", "|psi_j(t)|^2 over --t-grid for w1(--t) or an injected site");
  common(evolve, true);
  evolve->add_option("--t", o.t, "encoding time for w1");
  evolve->add_option("--t-grid", o.t_grid, "sample times a:b:step")->required();
  evolve->add_option("--inject", o.inject, "start from a single excitation on this site");
  evolve->add_flag("--amplitudes", o.amplitudes, "also write re/im columns");
  evolve->add_option("--velocity-window", o.velocity_window, "lo:hi window for a group-velocity fit");

  auto* derive = app.add_subcommand("derive-controls", "boundary couplings J_A(t), J_B(t) for an XY chain");
  common(derive, true);
  derive->add_option("--t", o.t, "total transfer time");
  derive->add_option("--t-grid", o.t_grid, "a:b:step; pick T maximising s1 of the extended chain");
  derive->add_flag("--no-refine", o.no_refine);
  derive->add_option("--steps", o.steps, "piecewise-constant steps")->capture_default_str();
  derive->add_option("--phantom", o.phantom, "phantom spins per side")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate-controls", "replay a J_A/J_B schedule on a chain");
  common(simulate, true);
  simulate->add_option("--schedule", o.schedule, "CSV written by derive-controls")->required();

  auto* conc = app.add_subcommand("concurrence-check", "E = sqrt(c_b) for the decoded Bell-pair state");
  common(conc, false);
  conc->add_option("--c-b", o.c_b, "transfer quality value(s)");
  conc->add_option("--t", o.t, "time label for --c-b rows");
  conc->add_option("--sweep", o.sweep_csv, "sweep CSV; c_b = s1^2 per row");
  conc->add_option("--rho11", o.rho11, "<0|rho~|0> of the leak state")->capture_default_str();
  conc->add_option("--offdiag-re", o.offdiag_re, "real part of rho~ off-diagonal");
  conc->add_option("--offdiag-im", o.offdiag_im, "imaginary part of rho~ off-diagonal");

  auto* base = app.add_subcommand("baseline", "uncontrolled chain: max C_B for injection at site 0");
  common(base, true);
  base->add_option("--t-grid", o.t_grid, "a:b:step (default 0:1000:0.25)");
  base->add_flag("--no-refine", o.no_refine);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    const Tolerances tol = Tolerances::from_environment();
    o.command = app.get_subcommands().front()->get_name();
    if (o.command == "sweep") return run_sweep(o, tol);
    if (o.command == "encode") return run_encode(o, tol);
    if (o.command == "evolve") return run_evolve(o, tol);
    if (o.command == "derive-controls") return run_derive(o, tol);
    if (o.command == "simulate-controls") return run_simulate(o, tol);
    if (o.command == "concurrence-check") return run_concurrence(o, tol);
    if (o.command == "baseline") return run_baseline(o, tol);
  } catch (const InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical invariant violated: " << e.what() << '\n';
    return kNumericalError;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}
