#include "aniso/blocks.hpp"

#include <algorithm>
#include <cmath>

#include "aniso/error.hpp"
#include "aniso/fft.hpp"
#include "modes.hpp"

namespace aniso {
namespace {

inline double power(double m, double p) {
  if (p == 1.0) return m;
  if (p == 2.0) return m * m;
  if (p == 3.0) return m * m * m;
  return std::pow(m, p);
}

void require_exponent(double p) {
  require(p >= 1.0, ErrorKind::precondition, "Lebesgue exponent must satisfy p >= 1");
}

/// Σ_modes Ψ̂_k(ξ_h)² Σ_c |c|² as a function of i3, for every horizontal shell.
std::vector<std::vector<double>> horizontal_spectra(const SpectralField& F,
                                                    const std::vector<std::vector<double>>& wh) {
  const Grid& g = F.grid();
  const int n12 = g.n(0) * g.n(1), n3 = g.n(2);
  const std::size_t n = g.size();
  std::vector<double> power_modes(n, 0.0);
  for (int c = 0; c < F.ncomp(); ++c) {
    auto comp = F.component(c);
    for (std::size_t i = 0; i < n; ++i) power_modes[i] += std::norm(comp[i]);
  }
  std::vector<std::vector<double>> out(wh.size(), std::vector<double>(n3, 0.0));
#pragma omp parallel for schedule(static)
  for (std::size_t s = 0; s < wh.size(); ++s) {
    auto& acc = out[s];
    for (int p = 0; p < n12; ++p) {
      const double w = wh[s][p] * wh[s][p];
      if (w == 0.0) continue;
      const double* row = power_modes.data() + static_cast<std::size_t>(p) * n3;
      for (int i3 = 0; i3 < n3; ++i3) acc[i3] += w * row[i3];
    }
  }
  return out;
}

struct BlockWork {
  aligned_vector<cplx> spec;
  aligned_vector<double> phys;
};

}  // namespace

double lp_norm(const Grid& grid, int ncomp, std::span<const double> samples, double p) {
  require_exponent(p);
  const std::size_t n = grid.size();
  require(samples.size() == n * ncomp, ErrorKind::structural, "sample count does not match grid");
  const int n1 = grid.n(0);
  const std::size_t plane = n / n1;
  std::vector<double> partial(n1, 0.0);
  const bool inf = std::isinf(p);
#pragma omp parallel for schedule(static)
  for (int i1 = 0; i1 < n1; ++i1) {
    double acc = 0.0;
    for (std::size_t q = 0; q < plane; ++q) {
      const std::size_t idx = i1 * plane + q;
      double m2 = 0.0;
      for (int c = 0; c < ncomp; ++c) m2 += samples[c * n + idx] * samples[c * n + idx];
      if (inf) acc = std::max(acc, std::sqrt(m2));
      else acc += p == 2.0 ? m2 : power(std::sqrt(m2), p);
    }
    partial[i1] = acc;
  }
  if (inf) return *std::max_element(partial.begin(), partial.end());
  double total = 0.0;
  for (double v : partial) total += v;
  return std::pow(total * grid.cell_volume(), 1.0 / p);
}

double lp_norm(const Field& f, double p) { return lp_norm(f.grid(), f.ncomp(), f.values(), p); }

std::vector<BlockTable> block_norms(const SpectralField& F, std::span<const double> ps) {
  for (double p : ps) require_exponent(p);
  const Grid& g = F.grid();
  const ShellRange hr = g.shells_h(), vr = g.shells_v();
  std::vector<std::vector<double>> wh, wv;
  for (int k = hr.lo; k <= hr.hi; ++k) wh.push_back(detail::shell_weights_h(g, k));
  for (int j = vr.lo; j <= vr.hi; ++j) wv.push_back(detail::shell_weights_v(g, j));

  // Parseval energies, used directly for p = 2 and to skip empty blocks otherwise.
  const auto spectra = horizontal_spectra(F, wh);
  BlockTable energy(hr, vr);
  for (int k = hr.lo; k <= hr.hi; ++k)
    for (int j = vr.lo; j <= vr.hi; ++j) {
      const auto& s = spectra[k - hr.lo];
      const auto& w = wv[j - vr.lo];
      double e = 0.0;
      for (int i3 = 0; i3 < g.n(2); ++i3) e += w[i3] * w[i3] * s[i3];
      energy.at(k, j) = e;
    }

  std::vector<BlockTable> out(ps.size(), BlockTable(hr, vr));
  bool need_synthesis = false;
  for (std::size_t a = 0; a < ps.size(); ++a) {
    if (ps[a] == 2.0) {
      for (int k = hr.lo; k <= hr.hi; ++k)
        for (int j = vr.lo; j <= vr.hi; ++j) out[a].at(k, j) = std::sqrt(energy.at(k, j) * g.volume());
    } else {
      need_synthesis = true;
    }
  }
  if (!need_synthesis) return out;

  std::vector<std::pair<int, int>> blocks;
  for (int k = hr.lo; k <= hr.hi; ++k)
    for (int j = vr.lo; j <= vr.hi; ++j)
      if (energy.at(k, j) > 0.0) blocks.emplace_back(k, j);

  const std::size_t n = g.size();
  const int n12 = g.n(0) * g.n(1), n3 = g.n(2);
#pragma omp parallel
  {
    BlockWork work{aligned_vector<cplx>(n), aligned_vector<double>(n * F.ncomp())};
#pragma omp for schedule(dynamic, 1)
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto [k, j] = blocks[b];
      const auto& h = wh[k - hr.lo];
      const auto& v = wv[j - vr.lo];
      for (int c = 0; c < F.ncomp(); ++c) {
        auto comp = F.component(c);
        for (int p = 0; p < n12; ++p) {
          const std::size_t base = static_cast<std::size_t>(p) * n3;
          for (int i3 = 0; i3 < n3; ++i3) work.spec[base + i3] = h[p] * v[i3] * comp[base + i3];
        }
        fft::inverse(g, work.spec, std::span<double>(work.phys.data() + c * n, n));
      }
      for (std::size_t a = 0; a < ps.size(); ++a)
        if (ps[a] != 2.0) out[a].at(k, j) = lp_norm(g, F.ncomp(), work.phys, ps[a]);
    }
  }
  return out;
}

BlockTable block_norms(const SpectralField& F, double p) {
  const double ps[1] = {p};
  return std::move(block_norms(F, std::span<const double>(ps, 1))[0]);
}

std::vector<double> horizontal_block_norms(const SpectralField& F, double p) {
  require_exponent(p);
  const Grid& g = F.grid();
  const ShellRange hr = g.shells_h();
  std::vector<double> out(hr.count(), 0.0);
  const std::size_t n = g.size();
  const int n12 = g.n(0) * g.n(1), n3 = g.n(2);
#pragma omp parallel
  {
    BlockWork work{aligned_vector<cplx>(n), aligned_vector<double>(n * F.ncomp())};
#pragma omp for schedule(dynamic, 1)
    for (int k = hr.lo; k <= hr.hi; ++k) {
      const auto h = detail::shell_weights_h(g, k);
      for (int c = 0; c < F.ncomp(); ++c) {
        auto comp = F.component(c);
        for (int q = 0; q < n12; ++q)
          for (int i3 = 0; i3 < n3; ++i3) {
            const std::size_t idx = static_cast<std::size_t>(q) * n3 + i3;
            work.spec[idx] = h[q] * comp[idx];
          }
        fft::inverse(g, work.spec, std::span<double>(work.phys.data() + c * n, n));
      }
      out[k - hr.lo] = lp_norm(g, F.ncomp(), work.phys, p);
    }
  }
  return out;
}

std::vector<double> iso_block_norms(const SpectralField& F, double p) {
  require_exponent(p);
  const Grid& g = F.grid();
  const ShellRange r = g.shells_iso();
  std::vector<double> out(r.count(), 0.0);
  const std::size_t n = g.size();
  const auto& w1 = g.wavenumbers(0);
  const auto& w2 = g.wavenumbers(1);
  const auto& w3 = g.wavenumbers(2);
#pragma omp parallel
  {
    BlockWork work{aligned_vector<cplx>(n), aligned_vector<double>(n * F.ncomp())};
#pragma omp for schedule(dynamic, 1)
    for (int q = r.lo; q <= r.hi; ++q) {
      const double s = std::ldexp(1.0, -q);
      double e = 0.0;
      for (int c = 0; c < F.ncomp(); ++c) {
        auto comp = F.component(c);
        for (int i1 = 0; i1 < g.n(0); ++i1)
          for (int i2 = 0; i2 < g.n(1); ++i2)
            for (int i3 = 0; i3 < g.n(2); ++i3) {
              const std::size_t idx = g.index(i1, i2, i3);
              const double w = psi_hat(s * std::sqrt(w1[i1] * w1[i1] + w2[i2] * w2[i2] + w3[i3] * w3[i3]));
              work.spec[idx] = w * comp[idx];
              e += std::norm(work.spec[idx]);
            }
        if (p != 2.0) fft::inverse(g, work.spec, std::span<double>(work.phys.data() + c * n, n));
      }
      out[q - r.lo] = p == 2.0 ? std::sqrt(e * g.volume()) : lp_norm(g, F.ncomp(), work.phys, p);
    }
  }
  return out;
}

}  // namespace aniso
