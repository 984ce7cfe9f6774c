#include "aniso/besov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "aniso/error.hpp"
#include "aniso/fft.hpp"

namespace aniso {
namespace {

double accumulate_q(double acc, double term, double q) {
  if (std::isinf(q)) return std::max(acc, term);
  return acc + std::pow(term, q);
}

double finish_q(double acc, double q) { return std::isinf(q) ? acc : std::pow(acc, 1.0 / q); }

void require_finite(const Field& f) {
  for (double v : f.values())
    require(std::isfinite(v), ErrorKind::numerical, "field contains non-finite samples");
}

std::vector<double> log_nodes(double lo, double hi, int per_octave) {
  const double a = std::log2(lo), b = std::log2(hi);
  const int n = std::max(1, static_cast<int>(std::ceil((b - a) * per_octave - 1e-9)));
  std::vector<double> t(n + 1);
  for (int i = 0; i <= n; ++i) t[i] = std::exp2(a + (b - a) * i / n);
  return t;
}

/// Trapezoid weights in ln t for log-uniform nodes.
std::vector<double> log_weights(const std::vector<double>& t) {
  const std::size_t n = t.size();
  std::vector<double> w(n, 0.0);
  if (n < 2) return std::vector<double>(n, 1.0);
  const double h = std::log(t[1] / t[0]);
  for (std::size_t i = 0; i < n; ++i) w[i] = (i == 0 || i + 1 == n) ? 0.5 * h : h;
  return w;
}

}  // namespace

void BesovSpec::validate() const {
  require(p >= 1.0, ErrorKind::precondition, "Besov exponent p must be >= 1");
  require(q > 0.0, ErrorKind::precondition, "Besov summability q must be > 0");
  require(std::isfinite(s) && std::isfinite(s_v), ErrorKind::precondition, "Besov regularities must be finite");
}

void TimeSpec::validate() const {
  require(r >= 1.0, ErrorKind::precondition, "time exponent r must be >= 1");
  require(t0 >= 0.0 && t1 > t0, ErrorKind::precondition, "time interval must satisfy 0 <= t0 < t1");
  require(times.size() >= 4, ErrorKind::precondition, "time grid needs at least 4 samples");
  for (std::size_t i = 0; i < times.size(); ++i) {
    require(times[i] >= t0 - 1e-14 && times[i] <= t1 + 1e-14, ErrorKind::precondition,
            "time samples must lie inside the interval");
    if (i) require(times[i] > times[i - 1], ErrorKind::precondition, "time samples must increase strictly");
  }
}

double besov_aggregate(const BlockTable& norms, double s, double s_v, double q) {
  double acc = 0.0;
  for (int k = norms.shells_h().lo; k <= norms.shells_h().hi; ++k)
    for (int j = norms.shells_v().lo; j <= norms.shells_v().hi; ++j) {
      const double v = norms.at(k, j);
      if (v == 0.0) continue;
      acc = accumulate_q(acc, std::exp2(s * k + s_v * j) * v, q);
    }
  return finish_q(acc, q);
}

double besov_norm(const SpectralField& F, const BesovSpec& spec) {
  spec.validate();
  return besov_aggregate(block_norms(F, spec.p), spec.s, spec.s_v, spec.q);
}

double besov_norm(const Field& f, const BesovSpec& spec) {
  require_finite(f);
  return besov_norm(to_spectral(f), spec);
}

double besov_norm_iso(const SpectralField& F, double s, double p, double q) {
  const auto norms = iso_block_norms(F, p);
  const int lo = F.grid().shells_iso().lo;
  double acc = 0.0;
  for (std::size_t i = 0; i < norms.size(); ++i)
    if (norms[i] != 0.0) acc = accumulate_q(acc, std::exp2(s * (lo + static_cast<int>(i))) * norms[i], q);
  return finish_q(acc, q);
}

HeatQuadrature HeatQuadrature::for_grid(const Grid& g, int nodes_per_octave) {
  HeatQuadrature h;
  h.nodes_per_octave = nodes_per_octave;
  h.th_lo = std::exp2(-2.0 * (g.shells_h().hi + 6));
  h.th_hi = std::exp2(-2.0 * (g.shells_h().lo - 3));
  h.tv_lo = std::exp2(-2.0 * (g.shells_v().hi + 6));
  h.tv_hi = std::exp2(-2.0 * (g.shells_v().lo - 3));
  return h;
}

void HeatQuadrature::validate(const Grid& g) const {
  require(nodes_per_octave >= 1, ErrorKind::usage, "heat quadrature needs at least one node per octave");
  const auto covers = [](double lo, double hi, const ShellRange& r) {
    return lo <= std::exp2(-2.0 * r.hi) * (1 + 1e-12) && hi >= std::exp2(-2.0 * r.lo) * (1 - 1e-12);
  };
  require(covers(th_lo, th_hi, g.shells_h()) && covers(tv_lo, tv_hi, g.shells_v()), ErrorKind::usage,
          "heat quadrature does not cover the resolvable scales of grid " + g.describe());
}

double besov_norm_heat(const SpectralField& F, const BesovSpec& spec, const HeatQuadrature& quad) {
  spec.validate();
  const Grid& g = F.grid();
  quad.validate(g);
  const auto th = log_nodes(quad.th_lo, quad.th_hi, quad.nodes_per_octave);
  const auto tv = log_nodes(quad.tv_lo, quad.tv_hi, quad.nodes_per_octave);
  const auto wh = log_weights(th);
  const auto wv = log_weights(tv);

  const int n12 = g.n(0) * g.n(1), n3 = g.n(2);
  const std::size_t n = g.size();
  std::vector<double> xh2(n12), xv2(n3);
  {
    const auto& w1 = g.wavenumbers(0);
    const auto& w2 = g.wavenumbers(1);
    const auto& w3 = g.wavenumbers(2);
    for (int i1 = 0; i1 < g.n(0); ++i1)
      for (int i2 = 0; i2 < g.n(1); ++i2) xh2[i1 * g.n(1) + i2] = w1[i1] * w1[i1] + w2[i2] * w2[i2];
    for (int i3 = 0; i3 < n3; ++i3) xv2[i3] = w3[i3] * w3[i3];
  }
  const auto kernel = [](double t, double x2) { return t * x2 * std::exp(-t * x2); };

  // values[a][b] = t^{-s/2} t'^{-s_v/2} ‖K_h K_v f‖_{L^p}
  std::vector<std::vector<double>> values(th.size(), std::vector<double>(tv.size(), 0.0));
  if (spec.p == 2.0) {
    std::vector<double> power(n, 0.0);
    for (int c = 0; c < F.ncomp(); ++c)
      for (std::size_t i = 0; i < n; ++i) power[i] += std::norm(F.component(c)[i]);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t a = 0; a < th.size(); ++a) {
      std::vector<double> col(n3, 0.0);
      for (int p = 0; p < n12; ++p) {
        const double m = kernel(th[a], xh2[p]);
        if (m == 0.0) continue;
        for (int i3 = 0; i3 < n3; ++i3) col[i3] += m * m * power[static_cast<std::size_t>(p) * n3 + i3];
      }
      for (std::size_t b = 0; b < tv.size(); ++b) {
        double e = 0.0;
        for (int i3 = 0; i3 < n3; ++i3) {
          const double m = kernel(tv[b], xv2[i3]);
          e += m * m * col[i3];
        }
        values[a][b] = std::pow(th[a], -spec.s / 2) * std::pow(tv[b], -spec.s_v / 2) * std::sqrt(e * g.volume());
      }
    }
  } else {
    const std::size_t pairs = th.size() * tv.size();
#pragma omp parallel
    {
      aligned_vector<cplx> spec_buf(n);
      aligned_vector<double> phys(n * F.ncomp());
      std::vector<double> mh(n12), mv(n3);
#pragma omp for schedule(dynamic, 4)
      for (std::size_t idx = 0; idx < pairs; ++idx) {
        const std::size_t a = idx / tv.size(), b = idx % tv.size();
        for (int p = 0; p < n12; ++p) mh[p] = kernel(th[a], xh2[p]);
        for (int i3 = 0; i3 < n3; ++i3) mv[i3] = kernel(tv[b], xv2[i3]);
        for (int c = 0; c < F.ncomp(); ++c) {
          auto comp = F.component(c);
          for (int p = 0; p < n12; ++p)
            for (int i3 = 0; i3 < n3; ++i3) {
              const std::size_t i = static_cast<std::size_t>(p) * n3 + i3;
              spec_buf[i] = mh[p] * mv[i3] * comp[i];
            }
          fft::inverse(g, spec_buf, std::span<double>(phys.data() + c * n, n));
        }
        values[a][b] = std::pow(th[a], -spec.s / 2) * std::pow(tv[b], -spec.s_v / 2) *
                       lp_norm(g, F.ncomp(), phys, spec.p);
      }
    }
  }

  double acc = 0.0;
  for (std::size_t a = 0; a < th.size(); ++a)
    for (std::size_t b = 0; b < tv.size(); ++b) {
      if (std::isinf(spec.q)) acc = std::max(acc, values[a][b]);
      else acc += wh[a] * wv[b] * std::pow(values[a][b], spec.q);
    }
  return finish_q(acc, spec.q);
}

double time_lr_norm(std::span<const double> values, std::span<const double> times, double r) {
  require(values.size() == times.size() && values.size() >= 2, ErrorKind::structural,
          "time norm needs matching samples");
  if (std::isinf(r)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    acc += 0.5 * (times[i + 1] - times[i]) * (std::pow(std::abs(values[i]), r) + std::pow(std::abs(values[i + 1]), r));
  return std::pow(acc, 1.0 / r);
}

double chemin_lerner_from_blocks(std::span<const BlockTable> blocks, const BesovSpec& spec, const TimeSpec& tspec) {
  spec.validate();
  tspec.validate();
  require(blocks.size() == tspec.times.size(), ErrorKind::structural,
          "trajectory length does not match the time grid");
  const ShellRange hr = blocks[0].shells_h(), vr = blocks[0].shells_v();
  for (const auto& b : blocks)
    require(b.shells_h() == hr && b.shells_v() == vr, ErrorKind::structural, "trajectory samples on different grids");
  BlockTable in_time(hr, vr);
  std::vector<double> series(blocks.size());
  for (int k = hr.lo; k <= hr.hi; ++k)
    for (int j = vr.lo; j <= vr.hi; ++j) {
      for (std::size_t i = 0; i < blocks.size(); ++i) series[i] = blocks[i].at(k, j);
      in_time.at(k, j) = time_lr_norm(series, tspec.times, tspec.r);
    }
  return besov_aggregate(in_time, spec.s, spec.s_v, spec.q);
}

double chemin_lerner_norm(std::span<const SpectralField> traj, const BesovSpec& spec, const TimeSpec& tspec) {
  require(!traj.empty(), ErrorKind::structural, "empty trajectory");
  std::vector<BlockTable> blocks;
  blocks.reserve(traj.size());
  for (const auto& F : traj) {
    require_same_grid(F.grid(), traj[0].grid(), "chemin_lerner_norm");
    blocks.push_back(block_norms(F, spec.p));
  }
  return chemin_lerner_from_blocks(blocks, spec, tspec);
}

double chemin_lerner_norm(std::span<const Field> traj, const BesovSpec& spec, const TimeSpec& tspec) {
  std::vector<SpectralField> spectral;
  spectral.reserve(traj.size());
  for (const auto& f : traj) {
    require_same_grid(f.grid(), traj[0].grid(), "chemin_lerner_norm");
    spectral.push_back(to_spectral(f));
  }
  return chemin_lerner_norm(std::span<const SpectralField>(spectral), spec, tspec);
}

}  // namespace aniso
