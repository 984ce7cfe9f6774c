#pragma once

#include <array>
#include <optional>

#include "aniso/field.hpp"

namespace aniso {

// Fourier multipliers. Odd operators (derivatives, Leray, divergence) use the wavenumber
// with the Nyquist entry set to zero so that real fields stay real; even multipliers use the
// true lattice frequency.

/// Δ_k^h Δ_j^v: multiplier Ψ̂(2^{-k}|ξ_h|)·Ψ̂(2^{-j}|ξ3|); an omitted index skips that factor.
SpectralField lp_block(const SpectralField& F, std::optional<int> k, std::optional<int> j);
/// Isotropic block Δ_q: multiplier Ψ̂(2^{-q}|ξ|).
SpectralField iso_block(const SpectralField& F, int q);

/// e^{tΔ}: multiplier exp(−t|ξ|²).
SpectralField heat_flow(const SpectralField& F, double t);

/// P = Id − ∇Δ^{-1}div; the zero mode passes through.
SpectralField leray_project(const SpectralField& F);

struct HorizontalSplit {
  SpectralField potential;     ///< scalar C with ∇_h^⊥C = (−∂2C, ∂1C)
  SpectralField stream;        ///< (−∂2C, ∂1C, 0)
  SpectralField compressible;  ///< (−∇_h Δ_h^{-1} ∂3 u³, 0)
};
/// u^h = ∇_h^⊥C − ∇_hΔ_h^{-1}∂3u³ for divergence-free u. Modes with ξ_h = 0 go to the stream part.
HorizontalSplit horizontal_helmholtz_split(const SpectralField& F);

SpectralField divergence(const SpectralField& F);
SpectralField gradient(const SpectralField& scalar);
SpectralField curl(const SpectralField& F);
SpectralField derivative(const SpectralField& F, int axis);
SpectralField laplacian(const SpectralField& F);

/// max over modes of |κ·û| divided by the coefficient 2-norm (0 for a zero field).
double divergence_defect(const SpectralField& F);

/// Largest retained |m| per axis under the two-thirds rule (3K < N).
int dealias_cutoff(int n);
void dealias_in_place(SpectralField& F);
bool is_dealiased(const SpectralField& F);

/// Zeroes the mean (m = 0) mode of every component.
void remove_mean_mode(SpectralField& F);

/// Trigonometric interpolation onto a grid with dims multiplied by power-of-two factors
/// (same box). Nyquist coefficients are split evenly between ±N/2 so real fields stay real.
SpectralField refine(const SpectralField& F, std::array<int, 3> factors);

}  // namespace aniso
