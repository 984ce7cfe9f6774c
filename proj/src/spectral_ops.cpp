#include "aniso/spectral_ops.hpp"

#include <algorithm>
#include <cmath>

#include "aniso/error.hpp"
#include "modes.hpp"

namespace aniso {
namespace {

constexpr cplx I(0.0, 1.0);

void require_vector(const SpectralField& F, const char* op) {
  require(F.ncomp() == 3, ErrorKind::structural, std::string(op) + " needs a 3-component field");
}

void require_scalar(const SpectralField& F, const char* op) {
  require(F.ncomp() == 1, ErrorKind::structural, std::string(op) + " needs a scalar field");
}

/// Multiplies every component by a real per-mode weight w(i1, i2, i3).
template <class Weight>
SpectralField scale_modes(const SpectralField& F, Weight&& w) {
  const Grid& g = F.grid();
  SpectralField out(g, F.ncomp());
  const int n1 = g.n(0), n2 = g.n(1), n3 = g.n(2);
  const std::size_t n = g.size();
#pragma omp parallel for schedule(static)
  for (int i1 = 0; i1 < n1; ++i1)
    for (int i2 = 0; i2 < n2; ++i2)
      for (int i3 = 0; i3 < n3; ++i3) {
        const std::size_t idx = g.index(i1, i2, i3);
        const double m = w(i1, i2, i3);
        for (int c = 0; c < F.ncomp(); ++c) out.values()[c * n + idx] = m * F.values()[c * n + idx];
      }
  return out;
}

}  // namespace

SpectralField lp_block(const SpectralField& F, std::optional<int> k, std::optional<int> j) {
  const Grid& g = F.grid();
  if (k) require(g.shells_h().contains(*k), ErrorKind::range,
                 "horizontal shell " + std::to_string(*k) + " outside resolvable " + g.shells_h().describe());
  if (j) require(g.shells_v().contains(*j), ErrorKind::range,
                 "vertical shell " + std::to_string(*j) + " outside resolvable " + g.shells_v().describe());
  const std::vector<double> wh = k ? detail::shell_weights_h(g, *k) : std::vector<double>(g.n(0) * g.n(1), 1.0);
  const std::vector<double> wv = j ? detail::shell_weights_v(g, *j) : std::vector<double>(g.n(2), 1.0);
  const int n2 = g.n(1);
  return scale_modes(F, [&](int i1, int i2, int i3) { return wh[i1 * n2 + i2] * wv[i3]; });
}

SpectralField iso_block(const SpectralField& F, int q) {
  const Grid& g = F.grid();
  require(g.shells_iso().contains(q), ErrorKind::range,
          "isotropic shell " + std::to_string(q) + " outside resolvable " + g.shells_iso().describe());
  const auto& w1 = g.wavenumbers(0);
  const auto& w2 = g.wavenumbers(1);
  const auto& w3 = g.wavenumbers(2);
  const double s = std::ldexp(1.0, -q);
  return scale_modes(F, [&](int i1, int i2, int i3) {
    return psi_hat(s * std::sqrt(w1[i1] * w1[i1] + w2[i2] * w2[i2] + w3[i3] * w3[i3]));
  });
}

SpectralField heat_flow(const SpectralField& F, double t) {
  require(t >= 0.0, ErrorKind::precondition, "heat flow needs t >= 0");
  const Grid& g = F.grid();
  const auto& w1 = g.wavenumbers(0);
  const auto& w2 = g.wavenumbers(1);
  const auto& w3 = g.wavenumbers(2);
  return scale_modes(F, [&](int i1, int i2, int i3) {
    return std::exp(-t * (w1[i1] * w1[i1] + w2[i2] * w2[i2] + w3[i3] * w3[i3]));
  });
}

SpectralField leray_project(const SpectralField& F) {
  require_vector(F, "leray_project");
  const Grid& g = F.grid();
  const auto k1 = detail::odd_wavenumbers(g, 0);
  const auto k2 = detail::odd_wavenumbers(g, 1);
  const auto k3 = detail::odd_wavenumbers(g, 2);
  SpectralField out = F;
  const std::size_t n = g.size();
  auto in = F.values();
  auto o = out.values();
#pragma omp parallel for schedule(static)
  for (int i1 = 0; i1 < g.n(0); ++i1)
    for (int i2 = 0; i2 < g.n(1); ++i2)
      for (int i3 = 0; i3 < g.n(2); ++i3) {
        const double kk[3] = {k1[i1], k2[i2], k3[i3]};
        const double k2sum = kk[0] * kk[0] + kk[1] * kk[1] + kk[2] * kk[2];
        if (k2sum == 0.0) continue;
        const std::size_t idx = g.index(i1, i2, i3);
        // Unit normal: exact removal for axis-aligned modes.
        const double inv = 1.0 / std::sqrt(k2sum);
        const double nn[3] = {kk[0] * inv, kk[1] * inv, kk[2] * inv};
        const cplx dot = nn[0] * in[idx] + nn[1] * in[n + idx] + nn[2] * in[2 * n + idx];
        for (int c = 0; c < 3; ++c) o[c * n + idx] = in[c * n + idx] - nn[c] * dot;
      }
  return out;
}

HorizontalSplit horizontal_helmholtz_split(const SpectralField& F) {
  require_vector(F, "horizontal_helmholtz_split");
  require(divergence_defect(F) <= 1e-8, ErrorKind::precondition,
          "horizontal_helmholtz_split needs a divergence-free field");
  const Grid& g = F.grid();
  const auto k1 = detail::odd_wavenumbers(g, 0);
  const auto k2 = detail::odd_wavenumbers(g, 1);
  const auto k3 = detail::odd_wavenumbers(g, 2);
  HorizontalSplit s{SpectralField(g, 1), SpectralField(g, 3), SpectralField(g, 3)};
  const std::size_t n = g.size();
  auto in = F.values();
#pragma omp parallel for schedule(static)
  for (int i1 = 0; i1 < g.n(0); ++i1)
    for (int i2 = 0; i2 < g.n(1); ++i2)
      for (int i3 = 0; i3 < g.n(2); ++i3) {
        const std::size_t idx = g.index(i1, i2, i3);
        const cplx u1 = in[idx], u2 = in[n + idx], u3 = in[2 * n + idx];
        const double kh2 = k1[i1] * k1[i1] + k2[i2] * k2[i2];
        if (kh2 == 0.0) {
          s.stream.values()[idx] = u1;
          s.stream.values()[n + idx] = u2;
          continue;
        }
        // curl_h u^h = Δ_h C  and  div_h u^h = −∂3 u³ = Δ_h φ
        const cplx c_hat = -(I * k1[i1] * u2 - I * k2[i2] * u1) / kh2;
        const cplx phi_hat = (I * k3[i3] * u3) / kh2;
        s.potential.values()[idx] = c_hat;
        s.stream.values()[idx] = -I * k2[i2] * c_hat;
        s.stream.values()[n + idx] = I * k1[i1] * c_hat;
        s.compressible.values()[idx] = I * k1[i1] * phi_hat;
        s.compressible.values()[n + idx] = I * k2[i2] * phi_hat;
      }
  return s;
}

SpectralField divergence(const SpectralField& F) {
  require_vector(F, "divergence");
  const Grid& g = F.grid();
  const auto k1 = detail::odd_wavenumbers(g, 0);
  const auto k2 = detail::odd_wavenumbers(g, 1);
  const auto k3 = detail::odd_wavenumbers(g, 2);
  SpectralField out(g, 1);
  const std::size_t n = g.size();
  auto in = F.values();
#pragma omp parallel for schedule(static)
  for (int i1 = 0; i1 < g.n(0); ++i1)
    for (int i2 = 0; i2 < g.n(1); ++i2)
      for (int i3 = 0; i3 < g.n(2); ++i3) {
        const std::size_t idx = g.index(i1, i2, i3);
        out.values()[idx] = I * (k1[i1] * in[idx] + k2[i2] * in[n + idx] + k3[i3] * in[2 * n + idx]);
      }
  return out;
}

SpectralField gradient(const SpectralField& scalar) {
  require_scalar(scalar, "gradient");
  const Grid& g = scalar.grid();
  SpectralField out(g, 3);
  for (int a = 0; a < 3; ++a) {
    SpectralField d = derivative(scalar, a);
    std::copy(d.values().begin(), d.values().end(), out.component(a).begin());
  }
  return out;
}

SpectralField curl(const SpectralField& F) {
  require_vector(F, "curl");
  const Grid& g = F.grid();
  const auto k1 = detail::odd_wavenumbers(g, 0);
  const auto k2 = detail::odd_wavenumbers(g, 1);
  const auto k3 = detail::odd_wavenumbers(g, 2);
  SpectralField out(g, 3);
  const std::size_t n = g.size();
  auto in = F.values();
  auto o = out.values();
#pragma omp parallel for schedule(static)
  for (int i1 = 0; i1 < g.n(0); ++i1)
    for (int i2 = 0; i2 < g.n(1); ++i2)
      for (int i3 = 0; i3 < g.n(2); ++i3) {
        const std::size_t idx = g.index(i1, i2, i3);
        const cplx u1 = in[idx], u2 = in[n + idx], u3 = in[2 * n + idx];
        o[idx] = I * (k2[i2] * u3 - k3[i3] * u2);
        o[n + idx] = I * (k3[i3] * u1 - k1[i1] * u3);
        o[2 * n + idx] = I * (k1[i1] * u2 - k2[i2] * u1);
      }
  return out;
}

SpectralField derivative(const SpectralField& F, int axis) {
  require(axis >= 0 && axis < 3, ErrorKind::precondition, "derivative axis must be 0, 1 or 2");
  const Grid& g = F.grid();
  const auto k = detail::odd_wavenumbers(g, axis);
  SpectralField out(g, F.ncomp());
  const std::size_t n = g.size();
#pragma omp parallel for schedule(static)
  for (int i1 = 0; i1 < g.n(0); ++i1)
    for (int i2 = 0; i2 < g.n(1); ++i2)
      for (int i3 = 0; i3 < g.n(2); ++i3) {
        const int ia[3] = {i1, i2, i3};
        const std::size_t idx = g.index(i1, i2, i3);
        for (int c = 0; c < F.ncomp(); ++c) out.values()[c * n + idx] = I * k[ia[axis]] * F.values()[c * n + idx];
      }
  return out;
}

SpectralField laplacian(const SpectralField& F) {
  const Grid& g = F.grid();
  const auto& w1 = g.wavenumbers(0);
  const auto& w2 = g.wavenumbers(1);
  const auto& w3 = g.wavenumbers(2);
  return scale_modes(F, [&](int i1, int i2, int i3) {
    return -(w1[i1] * w1[i1] + w2[i2] * w2[i2] + w3[i3] * w3[i3]);
  });
}

double divergence_defect(const SpectralField& F) {
  require_vector(F, "divergence_defect");
  const double norm = std::sqrt(F.energy());
  if (norm == 0.0) return 0.0;
  const SpectralField d = divergence(F);
  double worst = 0.0;
  for (const cplx& v : d.values()) worst = std::max(worst, std::abs(v));
  return worst / norm;
}

int dealias_cutoff(int n) { return (n - 1) / 3; }

void dealias_in_place(SpectralField& F) {
  const Grid& g = F.grid();
  const int c1 = dealias_cutoff(g.n(0)), c2 = dealias_cutoff(g.n(1)), c3 = dealias_cutoff(g.n(2));
  const std::size_t n = g.size();
#pragma omp parallel for schedule(static)
  for (int i1 = 0; i1 < g.n(0); ++i1)
    for (int i2 = 0; i2 < g.n(1); ++i2)
      for (int i3 = 0; i3 < g.n(2); ++i3) {
        if (std::abs(g.mode(0, i1)) <= c1 && std::abs(g.mode(1, i2)) <= c2 && std::abs(g.mode(2, i3)) <= c3)
          continue;
        const std::size_t idx = g.index(i1, i2, i3);
        for (int c = 0; c < F.ncomp(); ++c) F.values()[c * n + idx] = 0.0;
      }
}

bool is_dealiased(const SpectralField& F) {
  SpectralField copy = F;
  dealias_in_place(copy);
  return relative_l2(copy, F) == 0.0;
}

void remove_mean_mode(SpectralField& F) {
  for (int c = 0; c < F.ncomp(); ++c) F.component(c)[0] = 0.0;
}

}  // namespace aniso

namespace aniso {

SpectralField refine(const SpectralField& F, std::array<int, 3> factors) {
  const Grid& g = F.grid();
  std::array<int, 3> dims{};
  for (int a = 0; a < 3; ++a) {
    require(factors[a] >= 1 && (factors[a] & (factors[a] - 1)) == 0, ErrorKind::precondition,
            "refinement factors must be powers of two");
    dims[a] = g.n(a) * factors[a];
  }
  const Grid fine(dims, g.lengths());
  SpectralField out(fine, F.ncomp());
  // Per axis: up to two fine targets with weights for each coarse storage index.
  struct Target {
    int idx[2];
    double w[2];
    int count;
  };
  std::array<std::vector<Target>, 3> map;
  for (int a = 0; a < 3; ++a) {
    map[a].resize(g.n(a));
    for (int i = 0; i < g.n(a); ++i) {
      const int m = g.mode(a, i);
      const auto wrap = [&](int mm) { return ((mm % dims[a]) + dims[a]) % dims[a]; };
      if (g.is_nyquist(a, i) && factors[a] > 1)
        map[a][i] = {{wrap(m), wrap(-m)}, {0.5, 0.5}, 2};
      else
        map[a][i] = {{wrap(m), 0}, {1.0, 0.0}, 1};
    }
  }
  for (int c = 0; c < F.ncomp(); ++c)
    for (int i1 = 0; i1 < g.n(0); ++i1)
      for (int i2 = 0; i2 < g.n(1); ++i2)
        for (int i3 = 0; i3 < g.n(2); ++i3) {
          const cplx v = F.at(c, i1, i2, i3);
          if (v == cplx{}) continue;
          const Target& t1 = map[0][i1];
          const Target& t2 = map[1][i2];
          const Target& t3 = map[2][i3];
          for (int a = 0; a < t1.count; ++a)
            for (int b = 0; b < t2.count; ++b)
              for (int d = 0; d < t3.count; ++d)
                out.at(c, t1.idx[a], t2.idx[b], t3.idx[d]) += t1.w[a] * t2.w[b] * t3.w[d] * v;
        }
  return out;
}

}  // namespace aniso
