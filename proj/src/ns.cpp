#include "aniso/ns.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "aniso/blocks.hpp"
#include "aniso/error.hpp"
#include "aniso/fft.hpp"
#include "aniso/io.hpp"
#include "aniso/spectral_ops.hpp"
#include "modes.hpp"

namespace aniso {
namespace {

/// |ξ|² per storage index.
std::vector<double> squared_wavenumbers(const Grid& g) {
  std::vector<double> out(g.size());
  const auto& w1 = g.wavenumbers(0);
  const auto& w2 = g.wavenumbers(1);
  const auto& w3 = g.wavenumbers(2);
  for (int i1 = 0; i1 < g.n(0); ++i1)
    for (int i2 = 0; i2 < g.n(1); ++i2)
      for (int i3 = 0; i3 < g.n(2); ++i3)
        out[g.index(i1, i2, i3)] = w1[i1] * w1[i1] + w2[i2] * w2[i2] + w3[i3] * w3[i3];
  return out;
}

/// (1 − e^{−z})/z and (1 − e^{−z}(1 + z))/z², by series near zero.
double phi1(double z) {
  if (z < 0.5) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 20; ++k) {
      term *= -z / (k + 1);
      sum += term;
    }
    return sum;
  }
  return -std::expm1(-z) / z;
}

double phi2(double z) {
  if (z < 0.5) {
    // Σ (−1)^k (k+1) z^k / (k+2)!
    double sum = 0.0, zk = 1.0, fact = 2.0;
    for (int k = 0; k < 20; ++k) {
      sum += (k % 2 ? -1.0 : 1.0) * (k + 1) * zk / fact;
      zk *= z;
      fact *= (k + 3);
    }
    return sum;
  }
  return (1.0 - std::exp(-z) * (1.0 + z)) / (z * z);
}

/// Step weights for v_{i+1} = E v_i + W0 G_i + W1 G_{i+1}.
struct StepWeights {
  std::vector<double> E, W0, W1;
};

class WeightCache {
 public:
  explicit WeightCache(const Grid& g) : lambda_(squared_wavenumbers(g)) {}
  const StepWeights& get(double h) {
    auto it = cache_.find(h);
    if (it != cache_.end()) return it->second;
    StepWeights w;
    const std::size_t n = lambda_.size();
    w.E.resize(n);
    w.W0.resize(n);
    w.W1.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double z = lambda_[i] * h;
      w.E[i] = std::exp(-z);
      w.W0[i] = h * phi2(z);
      w.W1[i] = h * (phi1(z) - phi2(z));
    }
    return cache_.emplace(h, std::move(w)).first->second;
  }

 private:
  std::vector<double> lambda_;
  std::map<double, StepWeights> cache_;
};

void etd_step(const StepWeights& w, const SpectralField& v, const SpectralField& g0, const SpectralField& g1,
              SpectralField& out) {
  const std::size_t n = v.grid().size();
  out = SpectralField(v.grid(), v.ncomp());
  for (int c = 0; c < v.ncomp(); ++c) {
    auto o = out.component(c);
    auto a = v.component(c);
    auto b0 = g0.component(c);
    auto b1 = g1.component(c);
    for (std::size_t i = 0; i < n; ++i) o[i] = w.E[i] * a[i] + w.W0[i] * b0[i] + w.W1[i] * b1[i];
  }
}

BesovSpec tilde_spec(double p) { return {2.0 / p, 1.0 / p, p, 1.0}; }

/// ℓ¹ over blocks of the L²-in-time block norms on samples [i0, i1].
double tilde_l2(const std::vector<BlockTable>& blocks, const std::vector<double>& times, std::size_t i0,
                std::size_t i1, double p) {
  const BlockTable& ref = blocks[i0];
  BlockTable agg(ref.shells_h(), ref.shells_v());
  std::vector<double> series(i1 - i0 + 1);
  const std::span<const double> t(times.data() + i0, i1 - i0 + 1);
  for (int k = ref.shells_h().lo; k <= ref.shells_h().hi; ++k)
    for (int j = ref.shells_v().lo; j <= ref.shells_v().hi; ++j) {
      for (std::size_t i = i0; i <= i1; ++i) series[i - i0] = blocks[i].at(k, j);
      agg.at(k, j) = time_lr_norm(series, t, 2.0);
    }
  const BesovSpec s = tilde_spec(p);
  return besov_aggregate(agg, s.s, s.s_v, s.q);
}

std::vector<BlockTable> sample_blocks(const std::vector<SpectralField>& states, double p) {
  std::vector<BlockTable> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(block_norms(s, p));
  return out;
}

void check_aligned(const Trajectory& a, const std::vector<double>& times, const char* what) {
  require(a.times.size() == times.size(), ErrorKind::structural, std::string(what) + " is not sampled on the solver time grid");
  for (std::size_t i = 0; i < times.size(); ++i)
    require(std::abs(a.times[i] - times[i]) <= 1e-12 * std::max(1.0, times.back()), ErrorKind::structural,
            std::string(what) + " is not sampled on the solver time grid");
}

double sup_amplitude(const SpectralField& u) {
  return to_physical(u).max_abs();
}

}  // namespace

void SolverConfig::validate() const {
  require(dt > 0.0 && t_max > 0.0, ErrorKind::usage, "t_max and dt must be positive");
  const double ratio = t_max / dt;
  require(std::abs(ratio - std::round(ratio)) <= 1e-9 * ratio, ErrorKind::usage, "t_max/dt must be an integer");
  require(p >= 1.0 && p < 4.0, ErrorKind::usage, "solver exponent p must lie in [1, 4)");
  require(c0 > 0.0, ErrorKind::usage, "c0 must be positive");
  require(picard_tol > 0.0 && picard_max_iter >= 1, ErrorKind::usage, "Picard tolerance and iteration cap must be positive");
}

int SolverConfig::steps() const { return static_cast<int>(std::lround(t_max / dt)); }

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::global_on_window: return "global-on-window";
    case RunStatus::blowup_suspected: return "blowup-suspected";
    case RunStatus::diverged: return "diverged";
  }
  return "?";
}

Field Trajectory::field(std::size_t i) const { return to_physical(states.at(i)); }

SpectralField transport_term(const SpectralField& a, const SpectralField& b, bool dealias) {
  require(a.ncomp() == 3 && b.ncomp() == 3, ErrorKind::structural, "transport term needs vector fields");
  require_same_grid(a.grid(), b.grid(), "transport_term");
  const Grid& g = a.grid();
  SpectralField at = a, bt = b;
  if (dealias) {
    dealias_in_place(at);
    dealias_in_place(bt);
  }
  const Field pa = to_physical(at);
  const Field pb = to_physical(bt);
  const std::array<std::vector<double>, 3> kappa{detail::odd_wavenumbers(g, 0), detail::odd_wavenumbers(g, 1),
                                                 detail::odd_wavenumbers(g, 2)};
  const std::size_t n = g.size();
  SpectralField out(g, 3);
  const cplx I(0.0, 1.0);
#pragma omp parallel
  {
    aligned_vector<double> prod(n);
    aligned_vector<cplx> spec(n);
#pragma omp for collapse(2) schedule(static) ordered
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        auto ai = pa.component(i);
        auto bj = pb.component(j);
        for (std::size_t x = 0; x < n; ++x) prod[x] = ai[x] * bj[x];
        fft::forward(g, prod, spec);
#pragma omp ordered
        {
          auto o = out.component(i);
          for (int i1 = 0; i1 < g.n(0); ++i1)
            for (int i2 = 0; i2 < g.n(1); ++i2)
              for (int i3 = 0; i3 < g.n(2); ++i3) {
                const double kj = j == 0 ? kappa[0][i1] : j == 1 ? kappa[1][i2] : kappa[2][i3];
                const std::size_t x = g.index(i1, i2, i3);
                o[x] -= I * kj * spec[x];
              }
        }
      }
  }
  if (dealias) dealias_in_place(out);
  return leray_project(out);
}

Trajectory duhamel_bilinear(const Trajectory& u, const Trajectory& v, bool dealias) {
  require(!u.states.empty(), ErrorKind::structural, "empty trajectory");
  check_aligned(v, u.times, "second argument");
  for (std::size_t i = 0; i < u.size(); ++i) {
    require_same_grid(u.states[i].grid(), v.states[i].grid(), "duhamel_bilinear");
  }
  const Grid& g = u.states[0].grid();
  WeightCache cache(g);
  Trajectory out;
  out.times = u.times;
  out.states.resize(u.size());
  std::vector<SpectralField> G(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) G[i] = transport_term(u.states[i], v.states[i], dealias);
  out.states[0] = SpectralField(g, 3);
  for (std::size_t i = 0; i + 1 < u.size(); ++i)
    etd_step(cache.get(u.times[i + 1] - u.times[i]), out.states[i], G[i], G[i + 1], out.states[i + 1]);
  return out;
}

std::vector<double> drift_schedule(const Trajectory& drift, double threshold, double p) {
  const auto& t = drift.times;
  const std::size_t n = t.size();
  require(n >= 2, ErrorKind::structural, "drift needs at least two samples");
  std::vector<double> l2v(n), l1v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const BlockTable b = block_norms(drift.states[i], p);
    l2v[i] = besov_aggregate(b, 2.0 / p, 1.0 / p, 1.0);
    l1v[i] = besov_aggregate(b, 2.0 / p, 1.0 + 1.0 / p, 1.0) + besov_aggregate(b, 1.0 + 2.0 / p, 1.0 / p, 1.0);
  }
  std::vector<double> starts{t.front()};
  std::size_t s = 0;
  while (s + 1 < n) {
    double sq = 0.0, lin = 0.0;
    std::size_t e = s;
    while (e + 1 < n) {
      const double h = t[e + 1] - t[e];
      const double sq_next = sq + 0.5 * h * (l2v[e] * l2v[e] + l2v[e + 1] * l2v[e + 1]);
      const double lin_next = lin + 0.5 * h * (l1v[e] + l1v[e + 1]);
      if (std::sqrt(sq_next) > threshold || lin_next > threshold) break;
      sq = sq_next;
      lin = lin_next;
      ++e;
    }
    require(e > s, ErrorKind::usage,
            "one time step of the drift already exceeds the interval threshold; use a finer dt");
    s = e;
    starts.push_back(t[s]);
  }
  return starts;
}

Trajectory nsp_solve(const SpectralField& u0, const Trajectory* drift, const Trajectory* force, const SolverConfig& cfg) {
  cfg.validate();
  require(u0.ncomp() == 3, ErrorKind::structural, "initial data must be a vector field");
  require(u0.grid() == cfg.grid, ErrorKind::structural, "initial data grid differs from the solver grid");
  require(divergence_defect(u0) <= 1e-8, ErrorKind::precondition, "initial data must be divergence-free");
  const Grid& g = cfg.grid;
  const int steps = cfg.steps();
  const double amp = sup_amplitude(u0);
  const auto lambda = squared_wavenumbers(g);
  const double kmax = std::sqrt(*std::max_element(lambda.begin(), lambda.end()));
  require(cfg.dt * amp * kmax <= 1.0 || amp <= kmax, ErrorKind::usage,
          "dt violates the advective bound dt*max|u0|*k_max <= 1 and the grid Peclet number "
          "max|u0|/k_max exceeds 1; reduce dt");

  Trajectory out;
  out.times.resize(steps + 1);
  for (int i = 0; i <= steps; ++i) out.times[i] = i * cfg.dt;
  if (drift) {
    check_aligned(*drift, out.times, "drift");
    for (const auto& s : drift->states)
      require(divergence_defect(s) <= 1e-8, ErrorKind::precondition, "drift must be divergence-free");
  }
  if (force) {
    check_aligned(*force, out.times, "force");
    for (const auto& s : force->states)
      require(divergence_defect(s) <= 1e-8, ErrorKind::precondition, "force must be divergence-free");
  }

  const BesovSpec data_spec = cfg.data_spec();
  const double data_norm = besov_norm(u0, data_spec);
  double smallness = cfg.c0;
  double force_norm = 0.0;
  if (drift) smallness = cfg.c0 * std::exp(-y_norm(*drift, cfg.p).total() / cfg.c0);
  if (force) {
    TimeSpec ts{1.0, out.times.front(), out.times.back(), out.times};
    force_norm = chemin_lerner_norm(std::span<const SpectralField>(force->states), data_spec, ts);
  }
  if (data_norm + force_norm > smallness) {
    out.large_data = true;
    out.notes.push_back("large data: smallness condition fails, result valid on the computed window only");
  }

  std::vector<double> bounds{0.0, cfg.t_max};
  if (drift) bounds = drift_schedule(*drift, cfg.c0 / 2.0, cfg.p);
  out.interval_starts = bounds;

  WeightCache cache(g);
  out.states.assign(steps + 1, SpectralField(g, 3));
  out.states[0] = u0;
  const auto index_of = [&](double t) { return static_cast<std::size_t>(std::lround(t / cfg.dt)); };

  const auto rhs = [&](const SpectralField& u, std::size_t i) {
    SpectralField gterm = transport_term(u, u, cfg.dealias);
    if (drift) {
      gterm += transport_term(u, drift->states[i], cfg.dealias);
      gterm += transport_term(drift->states[i], u, cfg.dealias);
    }
    if (force) gterm += force->states[i];
    return gterm;
  };

  for (std::size_t w = 0; w + 1 < bounds.size(); ++w) {
    const std::size_t i0 = index_of(bounds[w]), i1 = index_of(bounds[w + 1]);
    // Initial iterate: heat flow of the interval's initial state.
    std::vector<SpectralField> cur(out.states.begin() + i0, out.states.begin() + i1 + 1);
    for (std::size_t i = 1; i < cur.size(); ++i) cur[i] = heat_flow(cur[0], out.times[i0 + i] - out.times[i0]);
    std::vector<SpectralField> G(cur.size()), next(cur.size());
    std::vector<double> gaps;
    bool converged = false;
    for (int it = 0; it < cfg.picard_max_iter; ++it) {
      for (std::size_t i = 0; i < cur.size(); ++i) G[i] = rhs(cur[i], i0 + i);
      next[0] = cur[0];
      for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
        etd_step(cache.get(out.times[i0 + i + 1] - out.times[i0 + i]), next[i], G[i], G[i + 1], next[i + 1]);
        // Keeps the longitudinal round-off at the scale of the current state as it decays.
        next[i + 1] = leray_project(next[i + 1]);
      }
      std::vector<SpectralField> diff(cur.size());
      for (std::size_t i = 0; i < cur.size(); ++i) diff[i] = next[i] - cur[i];
      const auto bd = sample_blocks(diff, cfg.p);
      const auto bn = sample_blocks(next, cfg.p);
      const double dn = tilde_l2(bd, out.times, 0, cur.size() - 1, cfg.p);
      const double nn = tilde_l2(bn, out.times, 0, cur.size() - 1, cfg.p);
      const double gap = nn > 0.0 ? dn / nn : dn;
      gaps.push_back(gap);
      cur.swap(next);
      if (!std::isfinite(gap) || gap > 1e8) break;
      if (gap < cfg.picard_tol) {
        converged = true;
        break;
      }
    }
    out.picard_gaps = gaps;
    out.picard_iterations.push_back(static_cast<int>(gaps.size()));
    if (!converged) {
      out.status = RunStatus::diverged;
      out.t_star = out.times[i0];
      out.times.resize(i0 + 1);
      out.states.resize(i0 + 1);
      out.notes.push_back("Picard iteration did not converge on [" + format_double(bounds[w]) + ", " +
                          format_double(bounds[w + 1]) + "]");
      return out;
    }
    for (std::size_t i = 1; i < cur.size(); ++i) out.states[i0 + i] = std::move(cur[i]);
  }
  out.t_star = cfg.t_max;
  return out;
}

Trajectory picard_solve(const SpectralField& u0, const SolverConfig& cfg) { return nsp_solve(u0, nullptr, nullptr, cfg); }

Trajectory picard_solve(const Field& u0, const SolverConfig& cfg) {
  require(u0.mean_free(), ErrorKind::precondition, "initial data must be mean-free");
  return picard_solve(to_spectral(u0), cfg);
}

YNorm y_norm(const Trajectory& traj, double p, std::size_t i0, std::size_t i1) {
  require(!traj.states.empty(), ErrorKind::structural, "empty trajectory");
  i1 = std::min(i1, traj.size() - 1);
  require(i1 > i0, ErrorKind::structural, "y_norm needs at least two samples");
  const std::size_t n = i1 - i0 + 1;
  std::vector<double> a(n), b(n), c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const BlockTable t = block_norms(traj.states[i0 + i], p);
    a[i] = besov_aggregate(t, 2.0 / p, 1.0 / p, 1.0);
    b[i] = besov_aggregate(t, 2.0 / p, 1.0 + 1.0 / p, 1.0);
    c[i] = besov_aggregate(t, 1.0 + 2.0 / p, 1.0 / p, 1.0);
  }
  const std::span<const double> t(traj.times.data() + i0, n);
  return {time_lr_norm(a, t, 2.0), time_lr_norm(b, t, 1.0), time_lr_norm(c, t, 1.0)};
}

std::vector<double> running_tilde_l2(const Trajectory& traj, double p) {
  const auto blocks = sample_blocks(traj.states, p);
  std::vector<double> out(traj.size(), 0.0);
  if (traj.size() == 0) return out;
  const BesovSpec s = tilde_spec(p);
  BlockTable acc(blocks[0].shells_h(), blocks[0].shells_v());
  BlockTable root = acc;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const double h = traj.times[i] - traj.times[i - 1];
    for (int k = acc.shells_h().lo; k <= acc.shells_h().hi; ++k)
      for (int j = acc.shells_v().lo; j <= acc.shells_v().hi; ++j) {
        const double x = blocks[i - 1].at(k, j), y = blocks[i].at(k, j);
        acc.at(k, j) += 0.5 * h * (x * x + y * y);
        root.at(k, j) = std::sqrt(acc.at(k, j));
      }
    out[i] = besov_aggregate(root, s.s, s.s_v, s.q);
  }
  return out;
}

namespace {

/// 2∫‖∇u‖² accumulated per sample with log-mean interpolation of each mode's energy.
std::vector<double> dissipation_series(const Trajectory& traj) {
  std::vector<double> out(traj.size(), 0.0);
  if (traj.size() == 0) return out;
  const Grid& g = traj.states[0].grid();
  const auto lambda = squared_wavenumbers(g);
  const std::size_t n = g.size();
  for (std::size_t s = 1; s < traj.size(); ++s) {
    const double h = traj.times[s] - traj.times[s - 1];
    double acc = 0.0;  // Σ 2λ∫|v|² over the step
    for (int c = 0; c < traj.states[s].ncomp(); ++c) {
      const auto a = traj.states[s - 1].component(c);
      const auto b = traj.states[s].component(c);
      for (std::size_t i = 0; i < n; ++i) {
        const double lam = lambda[i];
        if (lam <= 0.0) continue;
        const double ea = std::norm(a[i]), eb = std::norm(b[i]);
        if (lam * h >= 1.0) {
          // Stiff mode: v(τ) = c + e^{−λτ}(v_a − c), the relaxation to a steady forced state
          // through both samples. Exact for forcing constant over the step.
          const double one_minus = -std::expm1(-lam * h);
          const cplx rest = (b[i] - std::exp(-lam * h) * a[i]) / one_minus;
          const cplx d = a[i] - rest;
          const double i1 = one_minus / lam, i2 = -std::expm1(-2.0 * lam * h) / (2.0 * lam);
          const double integral = std::norm(rest) * h + 2.0 * std::real(std::conj(rest) * d) * i1 + std::norm(d) * i2;
          acc += 2.0 * lam * std::max(integral, 0.0);
          continue;
        }
        double mean;
        if (ea <= 0.0 || eb <= 0.0 || std::abs(ea - eb) <= 1e-12 * ea) mean = 0.5 * (ea + eb);
        else mean = (ea - eb) / std::log(ea / eb);
        acc += 2.0 * lam * h * mean;
      }
    }
    out[s] = out[s - 1] + acc * g.volume();
  }
  return out;
}

/// Computed on the state rescaled to unit peak so squares cannot underflow. States whose peak
/// lies near the subnormal range carry no relative precision and count as zero.
double divergence_ratio(const SpectralField& u) {
  double peak = 0.0;
  for (const cplx& v : u.values()) peak = std::max(peak, std::abs(v));
  if (peak < 1e16 * std::numeric_limits<double>::min()) return 0.0;
  SpectralField unit = u;
  unit *= 1.0 / peak;
  return l2_norm(divergence(unit)) / l2_norm(unit);
}

}  // namespace

MonitorSeries blowup_monitor(const Trajectory& traj, const SolverConfig& cfg) {
  MonitorSeries m;
  m.times = traj.times;
  m.running = running_tilde_l2(traj, cfg.p);
  m.dissipation = dissipation_series(traj);
  const BesovSpec crit = cfg.data_spec();
  for (const auto& s : traj.states) {
    m.critical.push_back(besov_aggregate(block_norms(s, cfg.p), crit.s, crit.s_v, crit.q));
    m.energy.push_back(l2_norm(s) * l2_norm(s));
    m.divergence.push_back(divergence_ratio(s));
  }
  for (std::size_t i = 0; i < m.running.size(); ++i)
    if (m.running[i] > cfg.monitor_ceiling || !std::isfinite(m.running[i])) {
      m.blowup_suspected = true;
      m.flag_time = m.times[i];
      return m;
    }
  if (traj.status != RunStatus::global_on_window) {
    m.blowup_suspected = true;
    m.flag_time = traj.t_star;
  }
  return m;
}

double max_divergence_ratio(const Trajectory& traj) {
  double m = 0.0;
  for (const auto& s : traj.states) m = std::max(m, divergence_ratio(s));
  return m;
}

double energy_excess(const Trajectory& traj) {
  require(!traj.states.empty(), ErrorKind::structural, "empty trajectory");
  const auto diss = dissipation_series(traj);
  const double e0 = std::pow(l2_norm(traj.states[0]), 2);
  if (e0 == 0.0) return 0.0;
  double worst = -1.0;
  for (std::size_t i = 0; i < traj.size(); ++i)
    worst = std::max(worst, (std::pow(l2_norm(traj.states[i]), 2) + diss[i]) / e0 - 1.0);
  return worst;
}

void write_monitor_csv(const std::filesystem::path& path, const MonitorSeries& m) {
  CsvWriter csv(path, {"t", "name", "value"});
  for (std::size_t i = 0; i < m.times.size(); ++i) {
    const std::string t = format_double(m.times[i]);
    csv.row({t, "running_tilde_l2", format_double(m.running[i])});
    csv.row({t, "critical_norm", format_double(m.critical[i])});
    csv.row({t, "energy", format_double(m.energy[i])});
    csv.row({t, "dissipation", format_double(m.dissipation[i])});
    csv.row({t, "divergence", format_double(m.divergence[i])});
  }
}

void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj) {
  std::filesystem::create_directories(dir);
  std::ofstream manifest(dir / "manifest.txt", std::ios::binary);
  require(static_cast<bool>(manifest), ErrorKind::io, "cannot write " + (dir / "manifest.txt").string());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "state_%05zu.afld", i);
    write_field(dir / name, traj.field(i));
    manifest << i << ' ' << format_double(traj.times[i]) << ' ' << name << '\n';
  }
}

Trajectory read_trajectory(const std::filesystem::path& dir) {
  std::ifstream manifest(dir / "manifest.txt");
  require(static_cast<bool>(manifest), ErrorKind::io, "cannot open " + (dir / "manifest.txt").string());
  Trajectory traj;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(manifest, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream in(line);
    std::size_t index = 0;
    double t = 0.0;
    std::string file;
    require(static_cast<bool>(in >> index >> t >> file) && index == traj.size(), ErrorKind::io,
            (dir / "manifest.txt").string() + ":" + std::to_string(lineno) + ": expected `index time file`");
    const Field f = read_field(dir / file);
    require(traj.states.empty() || f.grid() == traj.states.front().grid(), ErrorKind::structural,
            "trajectory states on different grids");
    traj.times.push_back(t);
    traj.states.push_back(to_spectral(f));
  }
  require(!traj.states.empty(), ErrorKind::io, "empty trajectory manifest in " + dir.string());
  return traj;
}

}  // namespace aniso
