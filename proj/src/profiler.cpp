#include "aniso/profiler.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "aniso/error.hpp"
#include "aniso/fft.hpp"
#include "aniso/io.hpp"
#include "aniso/spectral_ops.hpp"

namespace aniso {
namespace {

std::size_t tail_start(std::size_t w) { return w - (w + 1) / 2; }

long long floor_mod(long long a, long long n) { return ((a % n) + n) % n; }

/// Position of `fine` relative to the dilated position of `coarse`, on the finer level.
long long relative_position(int k_m, int j_m, int k_r, int j_r) {
  const int a = j_m - j_r;
  if (a >= 0) return floor_mod(k_m - (static_cast<long long>(k_r) << a), 1LL << j_m);
  return floor_mod(k_r - (static_cast<long long>(k_m) << -a), 1LL << j_r);
}

/// Everything that must stay constant for two components to belong to one profile.
std::array<long long, 11> offsets(const WaveletIndex& m, const WaveletIndex& r) {
  return {m.comp, r.comp, m.e1, r.e1, m.e2, r.e2, m.j1 - r.j1, m.j2 - r.j2,
          relative_position(m.k1a, m.j1, r.k1a, r.j1), relative_position(m.k1b, m.j1, r.k1b, r.j1),
          relative_position(m.k2, m.j2, r.k2, r.j2)};
}

bool constant_on_tail(const std::vector<WaveletIndex>& m, const std::vector<WaveletIndex>& r) {
  const std::size_t t0 = tail_start(m.size());
  const auto ref = offsets(m[t0], r[t0]);
  for (std::size_t i = t0 + 1; i < m.size(); ++i)
    if (offsets(m[i], r[i]) != ref) return false;
  return true;
}

IndexMap fit_map(const std::vector<int>& n, const std::vector<double>& v) {
  IndexMap map;
  const std::size_t w = n.size();
  map.slope = w > 1 ? (v.back() - v.front()) / static_cast<double>(n.back() - n.front()) : 0.0;
  map.intercept = v.front();
  for (std::size_t i = 0; i < w; ++i)
    if (std::abs(v[i] - (map.intercept + map.slope * (n[i] - n.front()))) > 1e-9) map.affine = false;
  return map;
}

double x_factor(const WaveletIndex& idx) { return WaveletSpace::b1q(1.0).level_factor(idx.j1, idx.j2); }

BesovSpec b1q_spec(double q) { return {1.0, 1.0, 1.0, q}; }

}  // namespace

void SequenceInput::validate() const {
  require(!fields.empty(), ErrorKind::precondition, "sequence is empty");
  require(fields.size() == n_window.size(), ErrorKind::structural, "window and field counts differ");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    require_same_grid(fields[i].grid(), fields[0].grid(), "sequence input");
    require(fields[i].ncomp() == fields[0].ncomp(), ErrorKind::structural, "sequence mixes component counts");
    if (i) require(n_window[i] > n_window[i - 1], ErrorKind::precondition, "window indices must increase");
  }
  require(budget >= 1, ErrorKind::precondition, "budget M must be positive");
}

void ProfilerOptions::validate() const {
  require(q > 0.0, ErrorKind::usage, "q must be positive");
  require(p > std::max(q, 1.0), ErrorKind::usage, "remainder exponent p must exceed max(q, 1)");
  require(max_profiles >= 0, ErrorKind::usage, "L_max must be nonnegative");
  require(tol_d_fraction > 0.0, ErrorKind::usage, "coefficient tolerance must be positive");
}

DecompositionReport extract_profiles(const SequenceInput& input, const ProfilerOptions& opts) {
  input.validate();
  opts.validate();
  require(input.budget >= static_cast<std::size_t>(opts.max_profiles), ErrorKind::precondition,
          "budget M must be at least L_max");
  const std::size_t w = input.fields.size();
  const Grid& g = input.fields[0].grid();
  const WaveletSpace select = WaveletSpace::b1q(opts.q);

  std::vector<WaveletCoeffs> coeffs(w);
  std::vector<std::vector<std::size_t>> ranked(w);
  for (std::size_t i = 0; i < w; ++i) {
    for (double v : input.fields[i].values())
      require(std::isfinite(v), ErrorKind::numerical, "sequence contains non-finite samples");
    coeffs[i] = hdwt_forward(input.fields[i]);
    auto order = rank_coefficients(coeffs[i], select);
    order.resize(std::min(input.budget, order.size()));
    ranked[i] = std::move(order);
  }
  const std::size_t M = ranked[0].size();

  DecompositionReport report;
  report.grid = g;
  report.levels_h = coeffs[0].levels_h();
  report.levels_v = coeffs[0].levels_v();
  report.n_window = input.n_window;
  report.p = opts.p;
  report.q = opts.q;

  // Step 1: components matched by rank, d_{m,n} in the 𝓑¹ normalization.
  std::vector<std::vector<double>> d(M, std::vector<double>(w));
  std::vector<std::vector<WaveletIndex>> lambda(M, std::vector<WaveletIndex>(w));
  double dmax = 0.0;
  for (std::size_t m = 0; m < M; ++m)
    for (std::size_t i = 0; i < w; ++i) {
      const std::size_t flat = ranked[i][m];
      lambda[m][i] = coeffs[i].index_of(flat);
      d[m][i] = coeffs[i].values()[flat] * x_factor(lambda[m][i]);
      dmax = std::max(dmax, std::abs(d[m][i]));
    }
  const double tol_d = opts.tol_d_fraction * dmax;
  const std::size_t t0 = tail_start(w);
  const bool window_ok = w - t0 >= 2;

  // Step 2: greedy grouping in rank order.
  for (std::size_t m = 0; m < M; ++m) {
    double lo = d[m][t0], hi = d[m][t0], mean = 0.0;
    for (std::size_t i = t0; i < w; ++i) {
      lo = std::min(lo, d[m][i]);
      hi = std::max(hi, d[m][i]);
      mean += d[m][i];
    }
    mean /= static_cast<double>(w - t0);
    if (std::abs(mean) <= 1e-12 * dmax || dmax == 0.0) {
      ++report.discarded_components;
      continue;
    }
    if (hi - lo >= tol_d) {
      ++report.undetermined_components;
      continue;
    }
    ProfileAtom* home = nullptr;
    for (auto& atom : report.atoms)
      if (window_ok && constant_on_tail(lambda[m], atom.tracks.front())) {
        home = &atom;
        break;
      }
    if (home == nullptr) {
      report.atoms.emplace_back();
      home = &report.atoms.back();
    }
    home->members.push_back(m);
    home->coeffs.push_back(mean);
    home->tracks.push_back(lambda[m]);
  }

  // Step 3: index maps and profiles at the first window entry.
  std::vector<double> vals(w);
  for (auto& atom : report.atoms) {
    const auto& tr = atom.tracks.front();
    const auto map_of = [&](auto get) {
      for (std::size_t i = 0; i < w; ++i) vals[i] = get(tr[i]);
      return fit_map(input.n_window, vals);
    };
    atom.j1 = map_of([](const WaveletIndex& x) { return x.j1; });
    atom.j2 = map_of([](const WaveletIndex& x) { return x.j2; });
    atom.k1a = map_of([](const WaveletIndex& x) { return x.k1a; });
    atom.k1b = map_of([](const WaveletIndex& x) { return x.k1b; });
    atom.k2 = map_of([](const WaveletIndex& x) { return x.k2; });
    if (!window_ok) {
      atom.undetermined = true;
      atom.note = "window too short to test offset stability";
    } else if (!atom.j1.affine || !atom.j2.affine) {
      atom.undetermined = true;
      atom.note = "scale indices are not affine on the window";
    }
    atom.profile = atom_at(atom, report, 0);
    atom.norm = besov_norm(atom.profile, b1q_spec(opts.q));
  }

  // Remainders ψ_n^L = u_n − Σ_{ℓ<L} atom_ℓ(n).
  const int Lmax = opts.max_profiles;
  const BesovSpec rem_spec = BesovSpec::critical(opts.p, opts.p);
  report.remainder.assign(w, std::vector<double>(Lmax + 1, 0.0));
  for (std::size_t i = 0; i < w; ++i) {
    WaveletCoeffs c = coeffs[i];
    for (int L = 0; L <= Lmax; ++L) {
      if (L > 0 && static_cast<std::size_t>(L) <= report.atoms.size()) {
        const auto& atom = report.atoms[L - 1];
        for (std::size_t k = 0; k < atom.members.size(); ++k) {
          const WaveletIndex& idx = atom.tracks[k][i];
          c.values()[c.flat_of(idx)] -= atom.coeffs[k] / x_factor(idx);
        }
      }
      report.remainder[i][L] = besov_norm(hdwt_inverse(c), rem_spec);
    }
  }

  const std::size_t na = report.atoms.size();
  report.pairwise.assign(na, std::vector<Orthogonality>(na, Orthogonality::none));
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < na; ++b)
      if (a != b) report.pairwise[a][b] = classify_pair(report.atoms[a], report.atoms[b]);
  return report;
}

Field atom_at(const ProfileAtom& a, const DecompositionReport& report, std::size_t entry) {
  WaveletCoeffs c(report.grid, 1, report.levels_h, report.levels_v);
  int ncomp = 1;
  for (const auto& tr : a.tracks) ncomp = std::max(ncomp, tr[entry].comp + 1);
  if (ncomp > 1) c = WaveletCoeffs(report.grid, 3, report.levels_h, report.levels_v);
  for (std::size_t k = 0; k < a.members.size(); ++k) {
    const WaveletIndex& idx = a.tracks[k][entry];
    c.values()[c.flat_of(idx)] += a.coeffs[k] / x_factor(idx);
  }
  return hdwt_inverse(c);
}

Orthogonality classify_pair(const ProfileAtom& a, const ProfileAtom& b) {
  const auto& ta = a.tracks.front();
  const auto& tb = b.tracks.front();
  require(ta.size() == tb.size(), ErrorKind::structural, "atoms come from different windows");
  const std::size_t t0 = tail_start(ta.size());
  for (std::size_t i = t0 + 1; i < ta.size(); ++i)
    if (ta[i].j1 - tb[i].j1 != ta[t0].j1 - tb[t0].j1 || ta[i].j2 - tb[i].j2 != ta[t0].j2 - tb[t0].j2)
      return Orthogonality::scale;
  const auto rel = [](const WaveletIndex& x, const WaveletIndex& y) {
    return std::array<long long, 3>{relative_position(x.k1a, x.j1, y.k1a, y.j1),
                                    relative_position(x.k1b, x.j1, y.k1b, y.j1),
                                    relative_position(x.k2, x.j2, y.k2, y.j2)};
  };
  for (std::size_t i = t0 + 1; i < ta.size(); ++i)
    if (rel(ta[i], tb[i]) != rel(ta[t0], tb[t0])) return Orthogonality::core;
  return Orthogonality::none;
}

ScaleCoreTriplet induced_triplet(const ProfileAtom& a, const DecompositionReport& report) {
  const auto& tr = a.tracks.front();
  const auto& n = report.n_window;
  const Grid& g = report.grid;
  ScaleCoreTriplet t;
  t.eps_exp = static_cast<int>(std::lround(a.j1.slope));
  t.gamma_exp = static_cast<int>(std::lround(a.j2.slope));
  t.n_lo = n.front();
  t.n_hi = n.back();
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<double> x(tr.size());
    for (std::size_t i = 0; i < tr.size(); ++i) {
      const int k = axis == 0 ? tr[i].k1a : axis == 1 ? tr[i].k1b : tr[i].k2;
      const int j = axis < 2 ? tr[i].j1 : tr[i].j2;
      x[i] = std::ldexp(static_cast<double>(k), -j) * g.length(axis);
    }
    const IndexMap m = fit_map(n, x);
    t.core_rate[axis] = m.slope;
    t.core0[axis] = m.intercept - m.slope * n.front();
  }
  return t;
}

StabilitySum stability_sum(const DecompositionReport& report, const SequenceInput& input) {
  StabilitySum s;
  for (const auto& a : report.atoms) s.sum += a.norm;
  for (const auto& f : input.fields) s.data_sup = std::max(s.data_sup, besov_norm(f, b1q_spec(report.q)));
  s.ratio = s.data_sup > 0.0 ? s.sum / s.data_sup : 0.0;
  return s;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::hypothesis_unmet: return "hypothesis unmet";
    case Verdict::not_applicable: return "not applicable";
  }
  return "?";
}

DivergenceDiagnostics divergence_diagnostics(const SequenceInput& input, const DecompositionReport& report,
                                             double d3_bound, double q) {
  input.validate();
  require(input.fields[0].ncomp() == 3, ErrorKind::precondition, "divergence diagnostics need vector fields");
  DivergenceDiagnostics out;
  const BesovSpec d3_spec{0.0, 1.0, 1.0, q};
  for (const auto& f : input.fields) {
    const SpectralField F = to_spectral(f);
    require(divergence_defect(F) <= 1e-8, ErrorKind::precondition, "sequence is not divergence-free");
    out.d3_sup = std::max(out.d3_sup, besov_norm(derivative(F, 2), d3_spec));
  }
  out.d3_bounded = out.d3_sup <= d3_bound;
  for (const auto& a : report.atoms) {
    AtomDivergenceFlags flags;
    flags.scale_ratio_slope = a.j2.slope - a.j1.slope;
    if (!out.d3_bounded || flags.scale_ratio_slope == 0.0 || !a.j1.affine || !a.j2.affine)
      flags.vertical_scale = Verdict::hypothesis_unmet;
    else
      flags.vertical_scale = flags.scale_ratio_slope < 0.0 ? Verdict::pass : Verdict::fail;
    if (a.profile.ncomp() == 3) {
      const SpectralField P = to_spectral(a.profile);
      const SpectralField d1 = derivative(P, 0);
      const SpectralField d2 = derivative(P, 1);
      SpectralField div_h(P.grid(), 1);
      for (std::size_t i = 0; i < div_h.size(); ++i) div_h.values()[i] = d1.component(0)[i] + d2.component(1)[i];
      const double norm = l2_norm(P);
      flags.horizontal_divergence = norm > 0.0 ? l2_norm(div_h) / norm : 0.0;
      flags.horizontal = flags.horizontal_divergence < 1e-6 ? Verdict::pass : Verdict::fail;
    }
    out.atoms.push_back(flags);
  }
  return out;
}

void write_report(const std::filesystem::path& path, const DecompositionReport& report) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::io, "cannot write " + path.string());
  const auto map_text = [](const IndexMap& m) {
    return format_double(m.intercept) + " + " + format_double(m.slope) + "*(n-n0)" + (m.affine ? "" : " (not affine)");
  };
  out << "grid " << report.grid.describe() << "\n";
  out << "window";
  for (int n : report.n_window) out << ' ' << n;
  out << "\natoms " << report.atoms.size() << "\nundetermined_components " << report.undetermined_components
      << "\ndiscarded_components " << report.discarded_components << "\n";
  for (std::size_t a = 0; a < report.atoms.size(); ++a) {
    const auto& atom = report.atoms[a];
    out << "\n[atom " << a << "]\n";
    out << "members " << atom.members.size() << "\n";
    out << "j1 " << map_text(atom.j1) << "\nj2 " << map_text(atom.j2) << "\n";
    out << "k1a " << map_text(atom.k1a) << "\nk1b " << map_text(atom.k1b) << "\nk2 " << map_text(atom.k2) << "\n";
    out << "norm_B1q " << format_double(atom.norm) << "\n";
    out << "status " << (atom.undetermined ? "undetermined: " + atom.note : std::string("determined")) << "\n";
    for (std::size_t b = 0; b < report.atoms.size(); ++b)
      if (b != a) out << "verdict " << b << ' ' << to_string(report.pairwise[a][b]) << "\n";
  }
}

void write_remainder_csv(const std::filesystem::path& path, const DecompositionReport& report) {
  CsvWriter csv(path, {"n", "L", "norm"});
  for (std::size_t i = 0; i < report.remainder.size(); ++i)
    for (std::size_t L = 0; L < report.remainder[i].size(); ++L)
      csv.row({std::to_string(report.n_window[i]), std::to_string(L), format_double(report.remainder[i][L])});
}

}  // namespace aniso
