#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "aniso/besov.hpp"
#include "aniso/field.hpp"

namespace aniso {

/// Smallness constant: the largest power of two for which Taylor–Green data of norm c0/2 on
/// 16³ and 32³ (dt = 1e-3, t_max = 0.1) gives Picard gap ratios ≤ 1/2, 𝓨 ≤ 2‖u0‖ and an
/// energy excess below 1e-6. Contraction alone would allow 64; the energy budget stops at 4.
inline constexpr double default_c0 = 4.0;

struct SolverConfig {
  Grid grid;
  double t_max = 0.1;
  double dt = 1e-3;
  double c0 = default_c0;
  double picard_tol = 1e-10;
  int picard_max_iter = 60;
  double p = 2.0;  ///< data space B^{−1+2/p,1/p}_{p,1}
  bool dealias = true;
  /// Running L̃²(B^{2/p,1/p}_{p,1}) level above which the monitor reports suspected blow-up.
  double monitor_ceiling = 1e6;

  /// Checks t_max/dt is integral, dt positive and p ∈ [1, 4). The solvers additionally require
  /// dt·max|u0|·k_max ≤ 1 unless the grid Péclet number max|u0|/k_max is at most 1.
  void validate() const;
  int steps() const;
  BesovSpec data_spec() const { return BesovSpec::critical(p, 1.0); }
};

enum class RunStatus { global_on_window, blowup_suspected, diverged };
const char* to_string(RunStatus s);

struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralField> states;
  RunStatus status = RunStatus::global_on_window;
  double t_star = 0.0;                  ///< end of the last completed window when not global
  std::vector<double> picard_gaps;      ///< relative gap per Picard iteration (last window)
  std::vector<int> picard_iterations;   ///< iterations used on each window
  std::vector<double> interval_starts;  ///< schedule of the perturbed solver
  bool large_data = false;
  std::vector<std::string> notes;

  Field field(std::size_t i) const;
  std::size_t size() const { return states.size(); }
};

/// −P div(a ⊗ b), i.e. −P((b·∇)a) for divergence-free b, with two-thirds truncation of the
/// product when `dealias` is set.
SpectralField transport_term(const SpectralField& a, const SpectralField& b, bool dealias = true);

/// B(u, v)(t) = −∫₀ᵗ e^{(t−s)Δ} P div(u ⊗ v)(s) ds with the exact heat factor between nodes
/// and the integrand interpolated linearly in s (exponential product-trapezoid weights).
Trajectory duhamel_bilinear(const Trajectory& u, const Trajectory& v, bool dealias = true);

/// Mild-solution Picard iteration on the whole window: u ← e^{tΔ}u0 + B(u, u).
Trajectory picard_solve(const Field& u0, const SolverConfig& cfg);
Trajectory picard_solve(const SpectralField& u0, const SolverConfig& cfg);

/// Perturbed system ∂_t u + P(u·∇u + U·∇u + u·∇U) − Δu = F, solved by Picard on consecutive
/// intervals. The schedule is greedy: each interval is extended while both the L² and the L¹
/// parts of the drift's 𝓨-type norm on it stay at or below c0/2. Drift and force must be
/// sampled on the solver's time grid; an absent drift or force is zero.
Trajectory nsp_solve(const SpectralField& u0, const Trajectory* drift, const Trajectory* force, const SolverConfig& cfg);

/// Greedy interval starts for a drift, plus the final time. Configuration error when a single
/// step already exceeds the threshold.
std::vector<double> drift_schedule(const Trajectory& drift, double threshold, double p);

/// 𝓨_{p,1} = L²(B^{2/p,1/p}_{p,1}) ∩ L¹(B^{2/p,1+1/p}_{p,1} ∩ B^{1+2/p,1/p}_{p,1}) measured as the
/// sum of the three parts with plain time norms over samples [i0, i1].
struct YNorm {
  double l2 = 0.0;
  double l1_vertical = 0.0;
  double l1_horizontal = 0.0;
  double total() const { return l2 + l1_vertical + l1_horizontal; }
};
YNorm y_norm(const Trajectory& traj, double p, std::size_t i0 = 0, std::size_t i1 = static_cast<std::size_t>(-1));

/// Running L̃²([0,T]; B^{2/p,1/p}_{p,1}) norm at every sample time T.
std::vector<double> running_tilde_l2(const Trajectory& traj, double p);

struct MonitorSeries {
  std::vector<double> times;
  std::vector<double> running;       ///< running L̃² norm
  std::vector<double> critical;      ///< instantaneous B^{−1+2/p,1/p}_{p,1} norm
  std::vector<double> energy;        ///< ‖u(t)‖²_{L²}
  std::vector<double> dissipation;   ///< 2∫₀ᵗ‖∇u‖²_{L²}
  std::vector<double> divergence;    ///< ‖div u‖ / ‖u‖ in L²
  bool blowup_suspected = false;
  double flag_time = 0.0;
};

/// Monitors; blow-up is suspected when the running norm passes the ceiling or the solver
/// stopped early, and the flag time is the first such time.
MonitorSeries blowup_monitor(const Trajectory& traj, const SolverConfig& cfg);

/// max over samples of ‖div u‖/‖u‖.
double max_divergence_ratio(const Trajectory& traj);
/// max over samples of (‖u(t)‖² + 2∫₀ᵗ‖∇u‖²)/‖u0‖² − 1. The dissipation integral uses per-mode
/// log-mean interpolation, exact for heat decay.
double energy_excess(const Trajectory& traj);

void write_monitor_csv(const std::filesystem::path& path, const MonitorSeries& m);
/// AFLD1 file per sample plus `manifest.txt` with lines `index time file`.
void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj);
/// Reads a directory written by write_trajectory; status and diagnostics are not stored.
Trajectory read_trajectory(const std::filesystem::path& dir);

}  // namespace aniso
