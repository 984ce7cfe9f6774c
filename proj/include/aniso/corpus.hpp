#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "aniso/field.hpp"
#include "aniso/profiler.hpp"
#include "aniso/wavelet.hpp"

/// Deterministic synthetic data. Every randomized generator takes an explicit seed.
namespace aniso::corpus {

/// Random coefficients on every lattice mode seen by the Littlewood–Paley blocks of the grid
/// (ξ_h ≠ 0, ξ3 ≠ 0, inside the covered intervals), optionally capped at |m| ≤ max_mode per
/// axis. Real, mean-free, unit L² norm.
Field random_band_limited(const Grid& g, int ncomp, std::uint64_t seed, int max_mode = -1);

/// Leray projection of a random band-limited vector field, unit L² norm.
Field random_divergence_free(const Grid& g, std::uint64_t seed, int max_mode = -1);

/// exp(−|x_h|²/(2w_h²) − x3²/(2w_v²)) centered at the origin of the periodic box, mean removed.
Field anisotropic_gaussian(const Grid& g, double width_h, double width_v);

/// Gaussian envelope (widths σ_h, σ_v) times cos(ω_h x1)·cos(ω_v x3), centered at the origin,
/// mean removed.
Field gabor_packet(const Grid& g, double sigma_h, double sigma_v, double omega_h, double omega_v);

/// (A sin x cos y cos z, −A cos x sin y cos z, 0) with x = 2πx1/L1 and so on.
Field taylor_green(const Grid& g, double amplitude);

/// Copy of f scaled so that norm(copy) = target (f must have a nonzero norm).
template <class Norm>
Field normalized(Field f, double target, Norm&& norm) {
  const double n = norm(f);
  f *= target / n;
  return f;
}

/// f_n = Λ(2^{-αn}, 2^{-βn}, core) f for every n.
std::vector<Field> lambda_family(const Field& profile, int alpha, int beta, std::span<const int> n,
                                 std::array<double, 3> core = {0.0, 0.0, 0.0});

/// One synthetic atom in wavelet-coefficient space: a set of coefficients at offsets from an
/// anchor index, transported along n by integer scale slopes and a position drift.
struct WaveletAtom {
  struct Term {
    int e1, e2;      ///< orientations
    int dj1, dj2;    ///< scale offsets from the anchor
    int dk1a, dk1b, dk2;
    double value;    ///< 𝓑¹-normalized coefficient
  };
  int comp = 0;
  int j1 = 0, j2 = 0;          ///< anchor scales at n = n_ref
  int k1a = 0, k1b = 0, k2 = 0;
  int slope1 = 0, slope2 = 0;  ///< j(n) = j + slope·(n − n_ref)
  std::array<int, 3> drift{0, 0, 0};  ///< anchor position change per unit n, at fixed scale
  std::vector<Term> terms;
};

/// `count` terms at the anchor's scales with magnitudes amplitude·ratio^i and alternating
/// signs; term i has orientation 1 + i mod 3 and offsets (r mod 3, (r/3) mod 3, r/9), r = i/3.
WaveletAtom geometric_atom(int comp, std::array<int, 2> scales, std::array<int, 3> anchor, int count,
                           double amplitude, double ratio);

/// Coefficients of the atom at n (positions wrap modulo the level size).
void add_atom(WaveletCoeffs& c, const WaveletAtom& atom, int n, int n_ref);
Field atom_field(const Grid& g, int ncomp, const WaveletAtom& atom, int n, int n_ref);

struct AtomSequence {
  SequenceInput input;
  std::vector<WaveletAtom> atoms;
  int n_ref = 0;
};

/// Σ atoms at each n of the window.
AtomSequence atom_sequence(const Grid& g, int ncomp, std::vector<WaveletAtom> atoms, std::vector<int> window,
                           std::size_t budget);

/// Shipped two-atom sequences on 32³: same scales, cores drifting apart (window 6), and
/// different vertical scale slopes (window 3).
AtomSequence two_atom_core_sequence();
AtomSequence two_atom_scale_sequence();

/// Scalar field whose generation l = 0..generations−1 consists of 2^l detail coefficients of
/// 𝓑¹-normalized size 2^{−l} with alternating signs, filling detail positions from the
/// coarsest level pair (smallest j1 + j2) upward. Sorted sizes decay like 1/rank.
Field cascade_field(const Grid& g, int generations);

enum class GatePiece { horizontal, vertical };

/// Frequency-separated datum for separation N0: `horizontal` lives at horizontal frequencies
/// far above the vertical ones (every block has j − k < −N0), `vertical` the reverse. The
/// box is scaled along the dominant direction by 2^{−(N0+4)} on an n³ grid; the field is the
/// horizontal curl of a product of one-dimensional packets, normalized to ρ in B^{1/2}_{2,1}.
Field gate_datum(int N0, double rho, GatePiece piece, int n = 32);

}  // namespace aniso::corpus
