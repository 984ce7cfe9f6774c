#include "aniso/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "aniso/besov.hpp"
#include "aniso/error.hpp"
#include "aniso/fft.hpp"
#include "aniso/scaling.hpp"
#include "aniso/spectral_ops.hpp"

namespace aniso::corpus {
namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

/// Signed offset of sample i from the origin, in the centered range.
double centered(const Grid& g, int axis, int i) {
  const int n = g.n(axis);
  return (i < n / 2 ? i : i - n) * g.spacing(axis);
}

Field unit_l2(Field f) {
  const double n = l2_norm(f);
  require(n > 0.0, ErrorKind::precondition, "generated field vanished");
  f *= 1.0 / n;
  return f;
}

}  // namespace

Field random_band_limited(const Grid& g, int ncomp, std::uint64_t seed, int max_mode) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const auto& w1 = g.wavenumbers(0);
  const auto& w2 = g.wavenumbers(1);
  const auto& w3 = g.wavenumbers(2);
  const ShellRange& h = g.shells_h();
  const ShellRange& v = g.shells_v();
  SpectralField F(g, ncomp);
  for (int c = 0; c < ncomp; ++c)
    for (int i1 = 0; i1 < g.n(0); ++i1)
      for (int i2 = 0; i2 < g.n(1); ++i2)
        for (int i3 = 0; i3 < g.n(2); ++i3) {
          const double re = normal(rng), im = normal(rng);
          if (max_mode >= 0 && (std::abs(g.mode(0, i1)) > max_mode || std::abs(g.mode(1, i2)) > max_mode ||
                                std::abs(g.mode(2, i3)) > max_mode))
            continue;
          const double xh = std::hypot(w1[i1], w2[i2]), x3 = std::abs(w3[i3]);
          if (xh < h.covered_low() || xh > h.covered_high() || x3 < v.covered_low() || x3 > v.covered_high())
            continue;
          F.at(c, i1, i2, i3) = {re, im};
        }
  return unit_l2(to_physical(F));
}

Field random_divergence_free(const Grid& g, std::uint64_t seed, int max_mode) {
  const Field f = random_band_limited(g, 3, seed, max_mode);
  return unit_l2(to_physical(leray_project(to_spectral(f))));
}

Field anisotropic_gaussian(const Grid& g, double width_h, double width_v) {
  return gabor_packet(g, width_h, width_v, 0.0, 0.0);
}

Field gabor_packet(const Grid& g, double sigma_h, double sigma_v, double omega_h, double omega_v) {
  require(sigma_h > 0.0 && sigma_v > 0.0, ErrorKind::precondition, "packet widths must be positive");
  Field f(g, 1);
  for (int i1 = 0; i1 < g.n(0); ++i1)
    for (int i2 = 0; i2 < g.n(1); ++i2)
      for (int i3 = 0; i3 < g.n(2); ++i3) {
        const double x1 = centered(g, 0, i1), x2 = centered(g, 1, i2), x3 = centered(g, 2, i3);
        f.at(0, i1, i2, i3) = std::exp(-(x1 * x1 + x2 * x2) / (2 * sigma_h * sigma_h) - x3 * x3 / (2 * sigma_v * sigma_v)) *
                              std::cos(omega_h * x1) * std::cos(omega_v * x3);
      }
  f.remove_mean();
  return f;
}

Field taylor_green(const Grid& g, double amplitude) {
  Field f(g, 3);
  for (int i1 = 0; i1 < g.n(0); ++i1)
    for (int i2 = 0; i2 < g.n(1); ++i2)
      for (int i3 = 0; i3 < g.n(2); ++i3) {
        const double x = two_pi * i1 / g.n(0), y = two_pi * i2 / g.n(1), z = two_pi * i3 / g.n(2);
        f.at(0, i1, i2, i3) = amplitude * std::sin(x) * std::cos(y) * std::cos(z);
        f.at(1, i1, i2, i3) = -amplitude * std::cos(x) * std::sin(y) * std::cos(z);
      }
  return f;
}

std::vector<Field> lambda_family(const Field& profile, int alpha, int beta, std::span<const int> n,
                                 std::array<double, 3> core) {
  std::vector<Field> out;
  out.reserve(n.size());
  for (int k : n) out.push_back(scale_translate(profile, std::exp2(-alpha * k), std::exp2(-beta * k), core).field);
  return out;
}

WaveletAtom geometric_atom(int comp, std::array<int, 2> scales, std::array<int, 3> anchor, int count,
                           double amplitude, double ratio) {
  WaveletAtom a;
  a.comp = comp;
  a.j1 = scales[0];
  a.j2 = scales[1];
  a.k1a = anchor[0];
  a.k1b = anchor[1];
  a.k2 = anchor[2];
  double mag = amplitude;
  for (int i = 0; i < count; ++i) {
    const int r = i / 3;
    a.terms.push_back({1 + i % 3, 1, 0, 0, r % 3, (r / 3) % 3, r / 9, (i % 2 ? -mag : mag)});
    mag *= ratio;
  }
  return a;
}

void add_atom(WaveletCoeffs& c, const WaveletAtom& atom, int n, int n_ref) {
  const int dn = n - n_ref;
  const int j1 = atom.j1 + atom.slope1 * dn;
  const int j2 = atom.j2 + atom.slope2 * dn;
  require(atom.slope1 >= 0 && atom.slope2 >= 0 && dn >= 0, ErrorKind::precondition,
          "atoms are transported towards finer scales only");
  const long long a1 = (static_cast<long long>(atom.k1a) << (atom.slope1 * dn)) + atom.drift[0] * dn;
  const long long a2 = (static_cast<long long>(atom.k1b) << (atom.slope1 * dn)) + atom.drift[1] * dn;
  const long long a3 = (static_cast<long long>(atom.k2) << (atom.slope2 * dn)) + atom.drift[2] * dn;
  for (const auto& t : atom.terms) {
    const int tj1 = j1 + t.dj1, tj2 = j2 + t.dj2;
    const long long s1 = 1LL << tj1, s2 = 1LL << tj2;
    const auto wrap = [](long long x, long long m) { return static_cast<int>(((x % m) + m) % m); };
    WaveletIndex idx{atom.comp, tj1, t.e1, wrap((a1 << t.dj1) + t.dk1a, s1), wrap((a2 << t.dj1) + t.dk1b, s1),
                     tj2, t.e2, wrap((a3 << t.dj2) + t.dk2, s2)};
    c.values()[c.flat_of(idx)] += t.value / WaveletSpace::b1q(1.0).level_factor(tj1, tj2);
  }
}

Field atom_field(const Grid& g, int ncomp, const WaveletAtom& atom, int n, int n_ref) {
  WaveletCoeffs c(g, ncomp, max_wavelet_depth(g.n(0)), max_wavelet_depth(g.n(2)));
  add_atom(c, atom, n, n_ref);
  return hdwt_inverse(c);
}

AtomSequence atom_sequence(const Grid& g, int ncomp, std::vector<WaveletAtom> atoms, std::vector<int> window,
                           std::size_t budget) {
  AtomSequence seq;
  seq.atoms = std::move(atoms);
  seq.n_ref = window.front();
  seq.input.n_window = window;
  seq.input.budget = budget;
  for (int n : window) {
    WaveletCoeffs c(g, ncomp, max_wavelet_depth(g.n(0)), max_wavelet_depth(g.n(2)));
    for (const auto& a : seq.atoms) add_atom(c, a, n, seq.n_ref);
    seq.input.fields.push_back(hdwt_inverse(c));
  }
  return seq;
}

AtomSequence two_atom_core_sequence() {
  const Grid g = Grid::cube(32);
  WaveletAtom a = geometric_atom(0, {4, 4}, {0, 0, 2}, 40, 1.0, 0.85);
  WaveletAtom b = geometric_atom(0, {4, 4}, {0, 8, 10}, 40, 0.93, 0.85);
  b.drift = {1, 0, 0};
  return atom_sequence(g, 1, {a, b}, {0, 1, 2, 3, 4, 5}, 64);
}

AtomSequence two_atom_scale_sequence() {
  const Grid g = Grid::cube(32);
  WaveletAtom a = geometric_atom(0, {2, 3}, {0, 0, 0}, 40, 1.0, 0.85);
  a.slope1 = 1;
  WaveletAtom b = geometric_atom(0, {3, 2}, {4, 4, 2}, 40, 0.93, 0.85);
  b.slope2 = 1;
  return atom_sequence(g, 1, {a, b}, {0, 1, 2}, 64);
}

Field cascade_field(const Grid& g, int generations) {
  require(generations >= 1 && generations < 31, ErrorKind::usage, "cascade needs 1 to 30 generations");
  WaveletCoeffs c(g, 1, max_wavelet_depth(g.n(0)), max_wavelet_depth(g.n(2)));
  std::vector<std::size_t> slots;
  for (std::size_t flat = 0; flat < c.size(); ++flat) {
    const WaveletIndex idx = c.index_of(flat);
    if (idx.e1 != 0 && idx.e2 != 0) slots.push_back(flat);
  }
  const auto level_sum = [&](std::size_t flat) {
    const WaveletIndex idx = c.index_of(flat);
    return idx.j1 + idx.j2;
  };
  std::stable_sort(slots.begin(), slots.end(), [&](std::size_t a, std::size_t b) { return level_sum(a) < level_sum(b); });
  const std::size_t needed = (std::size_t{1} << generations) - 1;
  require(needed <= slots.size(), ErrorKind::range, "grid " + g.describe() + " has too few detail coefficients for the cascade");
  const WaveletSpace space = WaveletSpace::b1q(1.0);
  std::size_t next = 0;
  for (int l = 0; l < generations; ++l)
    for (std::size_t i = 0; i < (std::size_t{1} << l); ++i, ++next) {
      const WaveletIndex idx = c.index_of(slots[next]);
      const double sign = next % 2 ? -1.0 : 1.0;
      c.values()[slots[next]] = sign * std::exp2(-l) / space.level_factor(idx.j1, idx.j2);
    }
  return hdwt_inverse(c);
}

Field gate_datum(int N0, double rho, GatePiece piece, int n) {
  require(N0 >= 0, ErrorKind::usage, "N0 must be nonnegative");
  const double scaled = std::exp2(-(N0 + 4));
  const Grid g = piece == GatePiece::horizontal ? Grid({n, n, n}, {scaled, scaled, 1.0}) : Grid({n, n, n}, {1.0, 1.0, scaled});
  // Potential F = a(θ1)a(θ2)a(θ3) with a(θ) = cos θ + cos 2θ / 2; u = (−∂2F, ∂1F, 0).
  SpectralField F(g, 1);
  const auto put = [&](int m1, int m2, int m3, double amp) {
    const auto idx = [&](int axis, int m) { return m >= 0 ? m : g.n(axis) + m; };
    F.at(0, idx(0, m1), idx(1, m2), idx(2, m3)) += amp;
  };
  const int ms[4] = {-2, -1, 1, 2};
  for (int m1 : ms)
    for (int m2 : ms)
      for (int m3 : ms) {
        const auto a = [](int m) { return std::abs(m) == 1 ? 0.5 : 0.25; };
        put(m1, m2, m3, a(m1) * a(m2) * a(m3));
      }
  const SpectralField d2 = derivative(F, 1);
  const SpectralField d1 = derivative(F, 0);
  SpectralField U(g, 3);
  for (std::size_t i = 0; i < g.size(); ++i) {
    U.component(0)[i] = -d2.values()[i];
    U.component(1)[i] = d1.values()[i];
  }
  const double norm = besov_norm_iso(U, 0.5, 2.0, 1.0);
  U *= rho / norm;
  return to_physical(U);
}

}  // namespace aniso::corpus
