#pragma once

namespace aniso {

/// Radial cutoff χ̂ used by every Littlewood–Paley operator.
///
///   χ̂(t) = 1                              for |t| ≤ 1
///   χ̂(t) = g(2−|t|) / (g(2−|t|) + g(|t|−1)) for 1 < |t| < 2,   g(x) = exp(−1/x)
///   χ̂(t) = 0                              for |t| ≥ 2
///
/// The transition is C^∞, monotone, and satisfies χ̂(t) + χ̂(3−t) = 1 on [1,2].
double chi_hat(double t);

/// Annulus function Ψ̂(t) = χ̂(t/2) − χ̂(t), supported in 1 < |t| < 4.
double psi_hat(double t);

}  // namespace aniso
