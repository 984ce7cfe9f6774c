#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "aniso/field.hpp"
#include "aniso/ns.hpp"

namespace aniso {

/// Frequency split of data into a vertically dominated part v0 (blocks with j − k < −N0) and a
/// horizontally dominated part w0 (blocks with j − k > N0).
struct GateSplit {
  int N0 = 0;
  Field v0;
  Field w0;
  double v0_norm = 0.0;    ///< ‖v0‖ in B^{0,1/2}_{2,1}
  double w0_norm = 0.0;    ///< ‖w0‖ in isotropic B^0_{3,1}
  double data_norm = 0.0;  ///< ‖u0‖ in isotropic B^{1/2}_{2,1}
  /// Blocks with |j − k| ≤ N0 carrying energy; they belong to neither part.
  std::vector<std::pair<int, int>> middle_blocks;
  double middle_fraction = 0.0;  ///< L² energy fraction of the middle band
  std::vector<std::string> warnings;

  bool separated() const { return middle_blocks.empty(); }
};

/// Configuration error when N0 < 0 or N0 is at least the largest |j − k| the grid resolves.
GateSplit aniso_gate_split(const Field& u0, int N0);

struct GateReport {
  GateSplit split;
  Trajectory w;         ///< Navier–Stokes from w0
  Trajectory v;         ///< perturbed system from v0 around w
  Trajectory combined;  ///< v + w on the common samples
  MonitorSeries monitor;
  bool completed = false;
  bool hypothesis_met = false;
  std::vector<std::string> notes;
};

/// Runs Navier–Stokes from w0 and the perturbed system for v0 with drift w. A vanishing piece
/// is carried as the zero trajectory. The hypothesis note records a middle band or N0 = 0.
GateReport aniso_gate_run(const Field& u0, int N0, const SolverConfig& cfg);

struct GateSweepRow {
  int N0 = 0;
  double v0_norm = 0.0;
  double w0_norm = 0.0;
  bool completed = false;
  double final_monitor = 0.0;
};

/// CSV `N0,v0_norm,w0_norm,completed,final_monitor`.
void write_gate_csv(const std::filesystem::path& path, const std::vector<GateSweepRow>& rows);
void write_gate_report(const std::filesystem::path& path, const GateReport& r);

}  // namespace aniso
