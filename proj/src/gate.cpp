#include "aniso/gate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "aniso/besov.hpp"
#include "aniso/blocks.hpp"
#include "aniso/error.hpp"
#include "aniso/fft.hpp"
#include "aniso/io.hpp"
#include "aniso/spectral_ops.hpp"

namespace aniso {
namespace {

Trajectory zero_trajectory(const SolverConfig& cfg) {
  Trajectory t;
  const int steps = cfg.steps();
  for (int i = 0; i <= steps; ++i) {
    t.times.push_back(i * cfg.dt);
    t.states.emplace_back(cfg.grid, 3);
  }
  return t;
}

bool vanishes(const SpectralField& f) { return l2_norm(f) == 0.0; }

}  // namespace

GateSplit aniso_gate_split(const Field& u0, int N0) {
  const Grid& g = u0.grid();
  const ShellRange& h = g.shells_h();
  const ShellRange& v = g.shells_v();
  const int widest = std::max(v.hi - h.lo, h.hi - v.lo);
  require(N0 >= 0 && N0 < widest, ErrorKind::usage,
          "N0 = " + std::to_string(N0) + " outside the resolvable separation range [0, " + std::to_string(widest - 1) + "]");
  const SpectralField U = to_spectral(u0);
  SpectralField V(g, u0.ncomp()), W(g, u0.ncomp());
  GateSplit out;
  out.N0 = N0;
  const BlockTable energy = block_norms(U, 2.0);
  double total = 0.0, middle = 0.0;
  for (int k = h.lo; k <= h.hi; ++k)
    for (int j = v.lo; j <= v.hi; ++j) total += energy.at(k, j) * energy.at(k, j);
  // Blocks at this level are round-off of the multipliers and belong to no part.
  const double floor = 1e-24 * total;
  for (int k = h.lo; k <= h.hi; ++k)
    for (int j = v.lo; j <= v.hi; ++j) {
      const double e = energy.at(k, j) * energy.at(k, j);
      if (e <= floor) continue;
      if (j - k < -N0) {
        V += lp_block(U, k, j);
      } else if (j - k > N0) {
        W += lp_block(U, k, j);
      } else {
        middle += e;
        out.middle_blocks.emplace_back(k, j);
      }
    }
  out.middle_fraction = total > 0.0 ? middle / total : 0.0;
  if (!out.middle_blocks.empty()) {
    std::ostringstream msg;
    msg << "middle band |j-k| <= " << N0 << " carries " << format_double(out.middle_fraction)
        << " of the energy in blocks";
    for (const auto& [k, j] : out.middle_blocks) msg << " (" << k << "," << j << ")";
    out.warnings.push_back(msg.str());
  }
  out.v0_norm = besov_norm(V, BesovSpec{0.0, 0.5, 2.0, 1.0});
  out.w0_norm = besov_norm_iso(W, 0.0, 3.0, 1.0);
  out.data_norm = besov_norm_iso(U, 0.5, 2.0, 1.0);
  out.v0 = to_physical(V);
  out.w0 = to_physical(W);
  return out;
}

GateReport aniso_gate_run(const Field& u0, int N0, const SolverConfig& cfg) {
  GateReport r;
  r.split = aniso_gate_split(u0, N0);
  for (const auto& w : r.split.warnings) r.notes.push_back("warning: " + w);
  r.hypothesis_met = N0 > 0 && r.split.separated();
  if (!r.hypothesis_met)
    r.notes.push_back(N0 == 0 ? "hypothesis unmet: N0 = 0 gives no frequency separation"
                              : "hypothesis unmet: data not supported away from the middle band");

  const SpectralField V0 = to_spectral(r.split.v0);
  const SpectralField W0 = to_spectral(r.split.w0);
  r.w = vanishes(W0) ? zero_trajectory(cfg) : picard_solve(W0, cfg);
  if (r.w.status != RunStatus::global_on_window) {
    r.notes.push_back(std::string("w run stopped: ") + to_string(r.w.status));
    r.v = zero_trajectory(cfg);
    r.v.status = r.w.status;
  } else if (vanishes(V0)) {
    r.v = zero_trajectory(cfg);
  } else {
    r.v = nsp_solve(V0, &r.w, nullptr, cfg);
  }
  const std::size_t n = std::min(r.w.size(), r.v.size());
  r.combined.times.assign(r.w.times.begin(), r.w.times.begin() + static_cast<std::ptrdiff_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    SpectralField s = r.w.states[i];
    s += r.v.states[i];
    r.combined.states.push_back(std::move(s));
  }
  r.completed = r.w.status == RunStatus::global_on_window && r.v.status == RunStatus::global_on_window;
  r.combined.status = r.completed ? RunStatus::global_on_window
                                  : (r.w.status != RunStatus::global_on_window ? r.w.status : r.v.status);
  r.combined.t_star = r.completed ? cfg.t_max : r.combined.times.back();
  r.monitor = blowup_monitor(r.combined, cfg);
  return r;
}

void write_gate_csv(const std::filesystem::path& path, const std::vector<GateSweepRow>& rows) {
  CsvWriter csv(path, {"N0", "v0_norm", "w0_norm", "completed", "final_monitor"});
  for (const auto& r : rows)
    csv.row({std::to_string(r.N0), format_double(r.v0_norm), format_double(r.w0_norm), r.completed ? "1" : "0",
             format_double(r.final_monitor)});
}

void write_gate_report(const std::filesystem::path& path, const GateReport& r) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorKind::io, "cannot write " + path.string());
  out << "N0 " << r.split.N0 << "\n"
      << "data_norm " << format_double(r.split.data_norm) << "\n"
      << "v0_norm " << format_double(r.split.v0_norm) << "\n"
      << "w0_norm " << format_double(r.split.w0_norm) << "\n"
      << "middle_fraction " << format_double(r.split.middle_fraction) << "\n"
      << "completed " << (r.completed ? 1 : 0) << "\n"
      << "hypothesis_met " << (r.hypothesis_met ? 1 : 0) << "\n"
      << "status " << to_string(r.combined.status) << "\n"
      << "final_monitor " << format_double(r.monitor.critical.empty() ? 0.0 : r.monitor.critical.back()) << "\n";
  for (const auto& n : r.notes) out << "note " << n << "\n";
  require(static_cast<bool>(out), ErrorKind::io, "write failed for " + path.string());
}

}  // namespace aniso
