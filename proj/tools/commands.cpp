#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "aniso/besov.hpp"
#include "aniso/blocks.hpp"
#include "aniso/corpus.hpp"
#include "aniso/error.hpp"
#include "aniso/fft.hpp"
#include "aniso/gate.hpp"
#include "aniso/io.hpp"
#include "aniso/ns.hpp"
#include "aniso/oscillation.hpp"
#include "aniso/profiler.hpp"
#include "aniso/stats.hpp"

namespace aniso::cli {
namespace {

namespace fs = std::filesystem;

/// Sequence manifests list `n path` per line, paths relative to the manifest.
SequenceInput read_sequence(const fs::path& manifest) {
  std::ifstream in(manifest);
  require(static_cast<bool>(in), ErrorKind::io, "cannot open sequence manifest " + manifest.string());
  SequenceInput seq;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int n = 0;
    std::string file;
    require(static_cast<bool>(ls >> n >> file), ErrorKind::io,
            manifest.string() + ":" + std::to_string(lineno) + ": expected `n path`");
    seq.n_window.push_back(n);
    seq.fields.push_back(read_field(manifest.parent_path() / file));
  }
  require(!seq.fields.empty(), ErrorKind::io, "sequence manifest " + manifest.string() + " lists no fields");
  return seq;
}

void write_sequence(const fs::path& dir, std::span<const int> n, std::span<const Field> fields) {
  std::ofstream m(dir / "sequence.txt", std::ios::binary);
  require(static_cast<bool>(m), ErrorKind::io, "cannot write " + (dir / "sequence.txt").string());
  for (std::size_t i = 0; i < fields.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "field_n%03d.afld", n[i]);
    write_field(dir / name, fields[i]);
    m << n[i] << ' ' << name << '\n';
  }
}

void write_profile_csv(const fs::path& path, const OscillationProfile& prof) {
  CsvWriter csv(path, {"k", "j", "weighted_norm"});
  const auto& h = prof.weighted.shells_h();
  const auto& v = prof.weighted.shells_v();
  for (int k = h.lo; k <= h.hi; ++k)
    for (int j = v.lo; j <= v.hi; ++j)
      csv.row({std::to_string(k), std::to_string(j), format_double(prof.weighted.at(k, j))});
}

class NameValue {
 public:
  explicit NameValue(const fs::path& path) : csv_(path, {"name", "value"}) {}
  void put(const std::string& name, double v) { put(name, format_double(v)); }
  void put(const std::string& name, const std::string& v) {
    csv_.row({name, v});
    std::cout << name << " " << v << "\n";
  }

 private:
  CsvWriter csv_;
};

}  // namespace

int cmd_lp_analyze(RunConfig& cfg) {
  const double p = cfg.real("p", 2.0);
  const std::string field = cfg.text("field", "");
  const std::string sequence = cfg.text("sequence", "");
  require(field.empty() != sequence.empty(), ErrorKind::usage, "give exactly one of field or sequence");
  cfg.finish();
  const auto analyze = [&](const Field& f, const std::string& tag) {
    const SpectralField F = to_spectral(f);
    write_block_csv(cfg.out() / ("blocks" + tag + ".csv"), block_norms(F, p), p);
    const OscillationProfile prof = oscillation_profile(F, std::max(p, 2.0));
    write_profile_csv(cfg.out() / ("profile" + tag + ".csv"), prof);
    return prof;
  };
  NameValue summary(cfg.out() / "summary.csv");
  if (!field.empty()) {
    const OscillationProfile prof = analyze(read_field(cfg.input_path(field)), "");
    summary.put("zero", prof.zero ? "1" : "0");
    summary.put("k_star", std::to_string(prof.k_star));
    summary.put("j_star", std::to_string(prof.j_star));
    summary.put("anisotropy", std::to_string(prof.anisotropy()));
    return 0;
  }
  const SequenceInput seq = read_sequence(cfg.input_path(sequence));
  seq.validate();
  CsvWriter family(cfg.out() / "family.csv", {"n", "k_star", "j_star"});
  std::vector<double> n, gap;
  for (std::size_t i = 0; i < seq.fields.size(); ++i) {
    const OscillationProfile prof = analyze(seq.fields[i], "_n" + std::to_string(seq.n_window[i]));
    family.row({std::to_string(seq.n_window[i]), std::to_string(prof.k_star), std::to_string(prof.j_star)});
    n.push_back(seq.n_window[i]);
    gap.push_back(prof.j_star - prof.k_star);
  }
  // The family oscillates anisotropically when j* − k* drifts with n.
  const double slope = n.size() >= 2 ? fit_line(n, gap).slope : 0.0;
  summary.put("anisotropy_slope", slope);
  summary.put("verdict", std::abs(slope) >= 0.25 ? "anisotropically oscillating" : "not anisotropically oscillating");
  return 0;
}

int cmd_besov_norm(RunConfig& cfg) {
  const fs::path field = cfg.input_path(cfg.required_text("field"));
  const BesovSpec spec{cfg.real("s", 0.0), cfg.real("s_v", 0.0), cfg.real("p", 2.0), cfg.real("q", 1.0)};
  const std::string mode = cfg.text("mode", "dyadic");
  const int nodes = cfg.integer("nodes_per_octave", 8);
  require(mode == "dyadic" || mode == "heat", ErrorKind::usage, "mode must be dyadic or heat");
  cfg.finish();
  try {
    spec.validate();
  } catch (const Error& e) {
    fail(ErrorKind::usage, e.what());
  }
  const SpectralField F = to_spectral(read_field(field));
  const double value = mode == "dyadic" ? besov_norm(F, spec) : besov_norm_heat(F, spec, HeatQuadrature::for_grid(F.grid(), nodes));
  NameValue out(cfg.out() / "norm.csv");
  out.put("besov_norm", value);
  return 0;
}

int cmd_profile_extract(RunConfig& cfg) {
  const fs::path manifest = cfg.input_path(cfg.required_text("sequence"));
  ProfilerOptions opts;
  const int M = cfg.integer("M", 64);
  opts.max_profiles = cfg.integer("L_max", opts.max_profiles);
  opts.p = cfg.real("p", opts.p);
  opts.q = cfg.real("q", opts.q);
  opts.tol_d_fraction = cfg.real("tol_d_fraction", opts.tol_d_fraction);
  const double d3_bound = cfg.real("d3_bound", 0.0);
  cfg.finish();
  opts.validate();
  require(M >= 1, ErrorKind::usage, "M must be positive");
  SequenceInput seq = read_sequence(manifest);
  seq.budget = static_cast<std::size_t>(M);
  const DecompositionReport report = extract_profiles(seq, opts);
  write_report(cfg.out() / "report.txt", report);
  write_remainder_csv(cfg.out() / "remainder.csv", report);
  for (std::size_t a = 0; a < report.atoms.size(); ++a) {
    char name[32];
    std::snprintf(name, sizeof name, "profile_%02zu.afld", a);
    write_field(cfg.out() / name, report.atoms[a].profile);
  }
  const StabilitySum st = stability_sum(report, seq);
  NameValue summary(cfg.out() / "summary.csv");
  summary.put("atoms", std::to_string(report.atoms.size()));
  summary.put("undetermined_components", std::to_string(report.undetermined_components));
  summary.put("stability_sum", st.sum);
  summary.put("data_sup", st.data_sup);
  summary.put("stability_ratio", st.ratio);
  if (d3_bound > 0.0 && seq.fields.front().ncomp() == 3) {
    const DivergenceDiagnostics diag = divergence_diagnostics(seq, report, d3_bound, opts.q);
    summary.put("d3_sup", diag.d3_sup);
    for (std::size_t a = 0; a < diag.atoms.size(); ++a) {
      summary.put("atom" + std::to_string(a) + "_vertical_scale", to_string(diag.atoms[a].vertical_scale));
      summary.put("atom" + std::to_string(a) + "_horizontal", to_string(diag.atoms[a].horizontal));
    }
  }
  return 0;
}

namespace {

SolverConfig solver_config(RunConfig& cfg, const Grid& g) {
  SolverConfig sc{g};
  sc.t_max = cfg.real("t_max", sc.t_max);
  sc.dt = cfg.real("dt", sc.dt);
  sc.c0 = cfg.real("c0", sc.c0);
  sc.p = cfg.real("p", sc.p);
  sc.picard_tol = cfg.real("picard_tol", sc.picard_tol);
  sc.picard_max_iter = cfg.integer("picard_max_iter", sc.picard_max_iter);
  sc.dealias = cfg.flag("dealias", sc.dealias);
  sc.monitor_ceiling = cfg.real("monitor_ceiling", sc.monitor_ceiling);
  return sc;
}

/// Writes trajectory, monitors and summary; returns the exit code implied by the
/// postconditions of a resolved run.
int report_run(const fs::path& out, const Trajectory& traj, const SolverConfig& sc, double data_norm) {
  write_trajectory(out / "trajectory", traj);
  const MonitorSeries mon = blowup_monitor(traj, sc);
  write_monitor_csv(out / "monitor.csv", mon);
  NameValue s(out / "summary.csv");
  s.put("status", to_string(traj.status));
  s.put("t_star", traj.t_star);
  s.put("data_norm", data_norm);
  s.put("large_data", traj.large_data ? "1" : "0");
  const YNorm y = traj.size() >= 2 ? y_norm(traj, sc.p) : YNorm{};
  s.put("y_norm", y.total());
  s.put("intervals", std::to_string(std::max<std::size_t>(traj.interval_starts.size(), 2) - 1));
  const double div = max_divergence_ratio(traj);
  const double excess = energy_excess(traj);
  s.put("max_divergence_ratio", div);
  s.put("energy_excess", excess);
  for (const auto& n : traj.notes) s.put("note", n);
  if (traj.status == RunStatus::diverged) {
    std::cerr << "error: Picard iteration diverged\n";
    return 5;
  }
  if (!(div < 1e-8)) {
    std::cerr << "error: divergence-free invariant violated: " << div << "\n";
    return 5;
  }
  if (!traj.large_data && traj.status == RunStatus::global_on_window) {
    if (excess > 1e-6) {
      std::cerr << "error: energy inequality violated by " << excess << "\n";
      return 5;
    }
    if (y.total() > 2.0 * data_norm) {
      std::cerr << "error: small-data bound Y <= 2|u0| violated\n";
      return 5;
    }
  }
  return 0;
}

}  // namespace

int cmd_ns_solve(RunConfig& cfg) {
  const std::string mode = cfg.text("mode", "plain");
  require(mode == "plain" || mode == "perturbed" || mode == "gate", ErrorKind::usage,
          "mode must be plain, perturbed or gate");

  if (mode == "gate" && cfg.text("field", "").empty()) {
    // Sweep over generated frequency-separated data, one run per piece and N0.
    const std::vector<int> sweep = cfg.integers("N0_list", {2, 3, 4, 5, 6});
    const double rho = cfg.real("rho", 1.0);
    const int n = cfg.integer("n", 32);
    SolverConfig sc = solver_config(cfg, Grid::cube(n));
    cfg.finish();
    std::vector<GateSweepRow> rows;
    for (int N0 : sweep) {
      GateSweepRow row{N0};
      row.completed = true;
      for (auto piece : {corpus::GatePiece::horizontal, corpus::GatePiece::vertical}) {
        const Field u0 = corpus::gate_datum(N0, rho, piece, n);
        sc.grid = u0.grid();
        const GateReport r = aniso_gate_run(u0, N0, sc);
        if (piece == corpus::GatePiece::horizontal) row.v0_norm = r.split.v0_norm;
        else row.w0_norm = r.split.w0_norm;
        row.completed = row.completed && r.completed;
        row.final_monitor += r.monitor.critical.back();
      }
      rows.push_back(row);
      std::cout << "N0 " << N0 << " v0_norm " << format_double(row.v0_norm) << " w0_norm "
                << format_double(row.w0_norm) << " completed " << row.completed << "\n";
    }
    write_gate_csv(cfg.out() / "gate.csv", rows);
    std::vector<double> x, lv, lw;
    for (const auto& r : rows) {
      x.push_back(r.N0);
      lv.push_back(std::log2(r.v0_norm));
      lw.push_back(std::log2(r.w0_norm));
    }
    if (rows.size() >= 2) {
      NameValue s(cfg.out() / "slopes.csv");
      s.put("v0_slope", fit_line(x, lv).slope);
      s.put("w0_slope", fit_line(x, lw).slope);
    }
    return 0;
  }

  const Field u0 = read_field(cfg.input_path(cfg.required_text("field")));
  const SolverConfig sc = solver_config(cfg, u0.grid());
  if (mode == "gate") {
    const int N0 = cfg.integer("N0", 4);
    cfg.finish();
    const GateReport r = aniso_gate_run(u0, N0, sc);
    write_gate_report(cfg.out() / "gate_report.txt", r);
    write_gate_csv(cfg.out() / "gate.csv", {{N0, r.split.v0_norm, r.split.w0_norm, r.completed, r.monitor.critical.back()}});
    for (const auto& note : r.notes) std::cout << note << "\n";
    return report_run(cfg.out(), r.combined, sc, besov_norm(u0, sc.data_spec()));
  }
  std::optional<Trajectory> drift, force;
  if (mode == "perturbed") {
    if (const auto d = cfg.text("drift", ""); !d.empty()) drift = read_trajectory(cfg.input_path(d));
    if (const auto f = cfg.text("force", ""); !f.empty()) force = read_trajectory(cfg.input_path(f));
  }
  cfg.finish();
  const SpectralField U0 = to_spectral(u0);
  const Trajectory traj = nsp_solve(U0, drift ? &*drift : nullptr, force ? &*force : nullptr, sc);
  return report_run(cfg.out(), traj, sc, besov_norm(U0, sc.data_spec()));
}

int cmd_make_corpus(RunConfig& cfg) {
  const std::string kind = cfg.required_text("kind");
  const int n = cfg.integer("n", 32);
  const Grid g({cfg.integer("n1", n), cfg.integer("n2", n), cfg.integer("n3", n)},
               {cfg.real("L1", 1.0), cfg.real("L2", 1.0), cfg.real("L3", 1.0)});
  const auto single = [&](const Field& f) {
    cfg.finish();
    write_field(cfg.out() / "field.afld", f);
    return 0;
  };
  if (kind == "gaussian") {
    const double wh = cfg.real("width_h", 0.1), wv = cfg.real("width_v", 0.1);
    return single(corpus::anisotropic_gaussian(g, wh, wv));
  }
  if (kind == "gabor") {
    const double sh = cfg.real("sigma_h", 0.13), sv = cfg.real("sigma_v", 0.13);
    const double oh = cfg.real("omega_h", 26.0), ov = cfg.real("omega_v", 26.0);
    return single(corpus::gabor_packet(g, sh, sv, oh, ov));
  }
  if (kind == "taylor-green") return single(corpus::taylor_green(g, cfg.real("amplitude", 1.0)));
  if (kind == "random") {
    const int ncomp = cfg.integer("ncomp", 1), max_mode = cfg.integer("max_mode", -1);
    return single(corpus::random_band_limited(g, ncomp, cfg.seed(), max_mode));
  }
  if (kind == "random-div") return single(corpus::random_divergence_free(g, cfg.seed(), cfg.integer("max_mode", -1)));
  if (kind == "gate") {
    const int N0 = cfg.integer("N0", 4);
    const double rho = cfg.real("rho", 1.0);
    const std::string piece = cfg.text("piece", "horizontal");
    require(piece == "horizontal" || piece == "vertical", ErrorKind::usage, "piece must be horizontal or vertical");
    return single(corpus::gate_datum(N0, rho, piece == "horizontal" ? corpus::GatePiece::horizontal : corpus::GatePiece::vertical, n));
  }
  if (kind == "lambda-family") {
    const double wh = cfg.real("width_h", 0.1), wv = cfg.real("width_v", 0.1);
    const int alpha = cfg.integer("alpha", 1), beta = cfg.integer("beta", 1);
    const std::vector<int> ns = cfg.integers("n_list", {0, 1, 2});
    const std::array<double, 3> core{cfg.real("core1", 0.0), cfg.real("core2", 0.0), cfg.real("core3", 0.0)};
    cfg.finish();
    const auto fields = corpus::lambda_family(corpus::anisotropic_gaussian(g, wh, wv), alpha, beta, ns, core);
    write_sequence(cfg.out(), ns, fields);
    return 0;
  }
  if (kind == "two-atom-core" || kind == "two-atom-scale") {
    cfg.finish();
    const auto seq = kind == "two-atom-core" ? corpus::two_atom_core_sequence() : corpus::two_atom_scale_sequence();
    write_sequence(cfg.out(), seq.input.n_window, seq.input.fields);
    return 0;
  }
  fail(ErrorKind::usage, "unknown corpus kind " + kind);
}

}  // namespace aniso::cli
