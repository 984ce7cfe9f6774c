// Acceptance suite: one PASS/FAIL line per criterion with its runtime.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "aniso/besov.hpp"
#include "aniso/blocks.hpp"
#include "aniso/corpus.hpp"
#include "aniso/estimates.hpp"
#include "aniso/fft.hpp"
#include "aniso/gate.hpp"
#include "aniso/ns.hpp"
#include "aniso/profiler.hpp"
#include "aniso/scaling.hpp"
#include "aniso/spectral_ops.hpp"
#include "aniso/stats.hpp"
#include "aniso/wavelet.hpp"
#include "oracles.hpp"

using namespace aniso;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

/// Divergence and energy checks gathered from every solver run below.
struct RunRecord {
  std::string name;
  double divergence = 0.0;
  double energy_excess = 0.0;
  bool energy_applies = true;  ///< false for forced or drifted runs
};
std::vector<RunRecord> runs;

void record(const std::string& name, const Trajectory& t, bool energy_applies = true) {
  runs.push_back({name, max_divergence_ratio(t), energy_applies ? energy_excess(t) : 0.0, energy_applies});
}

double rel(const SpectralField& a, const SpectralField& b) {
  SpectralField d = a;
  d -= b;
  return std::sqrt(d.energy() / b.energy());
}

SolverConfig solver(const Grid& g, double t_max = 0.1, double dt = 1e-3) {
  SolverConfig c{g};
  c.t_max = t_max;
  c.dt = dt;
  return c;
}

std::vector<double> time_grid(const SolverConfig& c) {
  std::vector<double> t;
  for (int i = 0; i <= c.steps(); ++i) t.push_back(i * c.dt);
  return t;
}

Trajectory steady(const std::vector<double>& times, const SpectralField& s) {
  Trajectory t;
  t.times = times;
  t.states.assign(times.size(), s);
  return t;
}

Outcome partition_of_unity() {
  const Grid g = Grid::cube(32);
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SpectralField F = to_spectral(corpus::random_band_limited(g, 1, seed));
    SpectralField sum(g, 1);
    for (int k = g.shells_h().lo; k <= g.shells_h().hi; ++k)
      for (int j = g.shells_v().lo; j <= g.shells_v().hi; ++j) sum += lp_block(F, k, j);
    worst = std::max(worst, rel(sum, F));
  }
  return {worst < 1e-10, fmt("max relative residual %.2e over 10 fields", worst)};
}

Outcome scaling_isometry() {
  struct Case {
    Grid grid;
    double eps, gamma;
  };
  const Case cases[] = {{Grid({64, 64, 256}), 0.5, 0.125}, {Grid::cube(128), 0.25, 0.25}};
  double worst = 0.0;
  for (const auto& c : cases) {
    const Field f = corpus::gabor_packet(c.grid, 0.1, 0.1, 25.0, 25.0);
    const ScaledField s = scale_translate(f, c.eps, c.gamma, {0.25, 0.25, 0.25});
    if (s.snapped) return {false, "dyadic scales snapped"};
    for (double p : {2.0, 3.0}) {
      const BesovSpec spec = BesovSpec::critical(p, 1.0);
      worst = std::max(worst, std::abs(besov_norm(s.field, spec) / besov_norm(f, spec) - 1.0));
    }
  }
  return {worst < 0.05, fmt("max relative norm change %.4f", worst)};
}

Outcome bernstein_heat_constants() {
  const std::pair<double, double> exponents[] = {{1.0, 2.0}, {2.0, p_infinity}};
  double worst_ratio = 0.0, floor = 1e300;
  const double times[] = {0.01, 0.1};
  for (const auto& [p1, p2] : exponents)
    for (int order : {0, 1}) {
      double c16 = 0.0, c32 = 0.0;
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        c16 = std::max(c16, bernstein_constant(to_spectral(corpus::random_band_limited(Grid::cube(16), 1, seed)), p1, p2, order));
        c32 = std::max(c32, bernstein_constant(to_spectral(corpus::random_band_limited(Grid::cube(32), 1, seed)), p1, p2, order));
      }
      worst_ratio = std::max(worst_ratio, std::max(c16 / c32, c32 / c16));
    }
  for (int n : {16, 32})
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
      floor = std::min(floor, heat_decay_floor(to_spectral(corpus::random_band_limited(Grid::cube(n), 1, seed)), times));
  return {worst_ratio < 2.0 && floor >= 0.2,
          fmt("worst 16^3/32^3 Bernstein ratio %.3f, heat-decay floor %.3f", worst_ratio, floor)};
}

Outcome best_m_term_rate() {
  const WaveletCoeffs c = hdwt_forward(corpus::cascade_field(Grid::cube(32), 13));
  const WaveletSpace target = WaveletSpace::bppp(3.0);
  std::vector<double> x, y;
  for (std::size_t M = 16; M <= 1024; M *= 2) {
    x.push_back(std::log2(static_cast<double>(M)));
    y.push_back(std::log2(coeff_norm(best_m_term(c, M, target).rest, target)));
  }
  const double slope = fit_line(x, y).slope, expected = -2.0 / 3.0;
  return {std::abs(slope / expected - 1.0) <= 0.3, fmt("fitted slope %.4f, expected %.4f", slope, expected)};
}

Outcome profile_recovery() {
  std::string detail;
  bool pass = true;
  {
    const corpus::AtomSequence seq = corpus::two_atom_core_sequence();
    const DecompositionReport r = extract_profiles(seq.input, ProfilerOptions{});
    pass = pass && r.atoms.size() == 2;
    double worst_err = 0.0;
    const BesovSpec b11{1, 1, 1, 1};
    for (const auto& atom : seq.atoms) {
      const Field truth = corpus::atom_field(seq.input.fields[0].grid(), 1, atom, seq.n_ref, seq.n_ref);
      double best = 1e300;
      for (const auto& a : r.atoms) {
        best = std::min(best, besov_norm(a.profile - truth, b11) / besov_norm(truth, b11));
        pass = pass && a.j1.affine && a.j2.affine && a.j1.slope == atom.slope1 && a.j2.slope == atom.slope2;
      }
      worst_err = std::max(worst_err, best);
    }
    double data_sup = 0.0;
    for (const auto& f : seq.input.fields) data_sup = std::max(data_sup, besov_norm(f, BesovSpec::critical(3.0, 3.0)));
    double rem = 0.0;
    for (const auto& row : r.remainder) rem = std::max(rem, row.size() > 2 ? row[2] : 1e300);
    pass = pass && worst_err < 0.05 && rem < 0.1 * data_sup;
    detail += fmt("window 6: %zu atoms, profile error %.4f, remainder/data %.4f", r.atoms.size(), worst_err, rem / data_sup);
  }
  {
    const corpus::AtomSequence seq = corpus::two_atom_scale_sequence();
    const DecompositionReport r = extract_profiles(seq.input, ProfilerOptions{});
    bool slopes = r.atoms.size() == 2;
    for (const auto& atom : seq.atoms) {
      bool found = false;
      for (const auto& a : r.atoms) found = found || (a.j1.slope == atom.slope1 && a.j2.slope == atom.slope2);
      slopes = slopes && found;
    }
    pass = pass && slopes;
    detail += fmt("; scale pair (window 3): %zu atoms, slopes %s", r.atoms.size(), slopes ? "exact" : "wrong");
  }
  return {pass, detail};
}

Outcome stability_reproduced() {
  double ratios[2];
  for (double& ratio : ratios) {
    const corpus::AtomSequence seq = corpus::two_atom_core_sequence();
    ratio = stability_sum(extract_profiles(seq.input, ProfilerOptions{}), seq.input).ratio;
  }
  const double spread = std::abs(ratios[1] / ratios[0] - 1.0);
  return {std::isfinite(ratios[0]) && spread < 0.01, fmt("ratio %.6f, run-to-run spread %.2e", ratios[0], spread)};
}

Outcome picard_bound() {
  std::string detail;
  bool pass = true;
  for (int n : {16, 32}) {
    const Grid g = Grid::cube(n);
    const SolverConfig c = solver(g);
    const Field u0 = corpus::normalized(corpus::taylor_green(g, 1.0), c.c0 / 2.0,
                                        [&](const Field& f) { return besov_norm(f, c.data_spec()); });
    const Trajectory t = picard_solve(u0, c);
    record("picard " + std::to_string(n), t);
    const double y = y_norm(t, c.p).total(), data = besov_norm(u0, c.data_spec());
    double worst = 0.0;
    for (std::size_t it = 3; it < t.picard_gaps.size(); ++it)
      worst = std::max(worst, t.picard_gaps[it] / t.picard_gaps[it - 1]);
    pass = pass && t.status == RunStatus::global_on_window && y <= 2.0 * data && worst <= 0.5;
    detail += fmt("%s%d^3: Y/|u0| %.3f, worst ratio %.3f", n == 16 ? "" : "; ", n, y / data, worst);
  }
  return {pass, detail};
}

Outcome solver_cross_validation() {
  const Grid g = Grid::cube(16);
  const SolverConfig c = solver(g, 0.1, 1.25e-4);
  Field u0 = corpus::random_divergence_free(g, 3, 2);
  u0 *= c.c0 / 2.0 / besov_norm(u0, c.data_spec());
  const Trajectory t = picard_solve(u0, c);
  record("cross-validation", t);
  const double err = rel(t.states.back(), oracle::rk4(to_spectral(u0), c.t_max, 1600));
  return {t.status == RunStatus::global_on_window && err < 1e-4, fmt("relative L2 at t = 0.1: %.2e (dt %.3g)", err, c.dt)};
}

Outcome manufactured_nsp() {
  const Grid g = Grid::cube(16);
  const SolverConfig c = solver(g);
  const auto times = time_grid(c);
  const SpectralField phi0 = 0.3 * to_spectral(corpus::random_divergence_free(g, 21, 1));
  const SpectralField phi1 = 0.5 * to_spectral(corpus::random_divergence_free(g, 22, 1));
  const SpectralField U = to_spectral(corpus::taylor_green(g, 0.4));
  const auto w = [&](double t) {
    SpectralField s = phi0;
    s.axpy(t, phi1);
    return s;
  };
  Trajectory force;
  force.times = times;
  for (double t : times) force.states.push_back(oracle::manufactured_force(w(t), phi1, U));
  const Trajectory drift = steady(times, U);
  const Trajectory sol = nsp_solve(w(0.0), &drift, &force, c);
  record("manufactured", sol, false);
  double err = 0.0;
  for (std::size_t i = 0; i < sol.size(); ++i) err = std::max(err, rel(sol.states[i], w(times[i])));

  const SolverConfig sc = solver(g, 0.1, 5e-4);
  const auto fine = time_grid(sc);
  const Field base = corpus::random_divergence_free(g, 31);
  const auto intervals = [&](double amplitude) {
    const SpectralField s = to_spectral(amplitude * base);
    return static_cast<int>(drift_schedule(steady(fine, s), sc.c0 / 2.0, sc.p).size()) - 1;
  };
  std::string counts;
  bool doubling = true;
  for (double a : {0.32, 0.64}) {
    const int n1 = intervals(a), n2 = intervals(2 * a);
    doubling = doubling && n1 >= 2 && std::abs(n2 - 2 * n1) <= 1;
    counts += fmt(" N(%.2f)=%d N(%.2f)=%d", a, n1, 2 * a, n2);
  }
  return {sol.status == RunStatus::global_on_window && err < 1e-6 && doubling,
          fmt("max relative L2 %.2e;", err) + counts};
}

Outcome gate_exponents() {
  std::vector<double> x, lv, lw;
  bool completed = true;
  for (int N0 = 2; N0 <= 6; ++N0) {
    x.push_back(N0);
    for (auto piece : {corpus::GatePiece::horizontal, corpus::GatePiece::vertical}) {
      const Field u0 = corpus::gate_datum(N0, 1.0, piece, 32);
      const GateReport r = aniso_gate_run(u0, N0, solver(u0.grid()));
      record("gate N0=" + std::to_string(N0) + (piece == corpus::GatePiece::horizontal ? " horizontal" : " vertical"),
             r.combined);
      completed = completed && r.completed && r.hypothesis_met;
      if (piece == corpus::GatePiece::horizontal) lv.push_back(std::log2(r.split.v0_norm));
      else lw.push_back(std::log2(r.split.w0_norm));
    }
  }
  const double sv = fit_line(x, lv).slope, sw = fit_line(x, lw).slope;
  return {completed && std::abs(sv + 0.5) <= 0.15 && std::abs(sw + 1.0 / 3.0) <= 0.15,
          fmt("v0 slope %.4f, w0 slope %.4f, all runs completed: %s", sv, sw, completed ? "yes" : "no")};
}

Outcome solver_invariants() {
  double div = 0.0, excess = -1e300;
  std::string worst_div, worst_energy;
  for (const auto& r : runs) {
    if (r.divergence >= div) div = r.divergence, worst_div = r.name;
    if (r.energy_applies && r.energy_excess >= excess) excess = r.energy_excess, worst_energy = r.name;
  }
  return {!runs.empty() && div < 1e-8 && excess < 1e-6,
          fmt("%zu runs; max divergence %.2e (%s), max energy excess %.2e (%s)", runs.size(), div, worst_div.c_str(),
              excess, worst_energy.c_str())};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"partition of unity", partition_of_unity},
      {"scaling isometry", scaling_isometry},
      {"Bernstein and heat-decay constants", bernstein_heat_constants},
      {"best M-term rate", best_m_term_rate},
      {"profile recovery", profile_recovery},
      {"stability sum", stability_reproduced},
      {"Picard small-data bound", picard_bound},
      {"solver cross-validation", solver_cross_validation},
      {"manufactured perturbed solution and interval doubling", manufactured_nsp},
      {"gate exponents", gate_exponents},
      {"divergence and energy invariants", solver_invariants},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %-55s %8.2f s  %s\n", o.pass ? "PASS" : "FAIL", name, seconds, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
