#pragma once

#include <span>
#include <vector>

#include "aniso/blocks.hpp"
#include "aniso/field.hpp"

namespace aniso {

/// Exponents of the anisotropic Besov space B^{s,s_v}_{p,q}: horizontal regularity s,
/// vertical regularity s_v, Lebesgue exponent p ∈ [1,∞], summability q ∈ (0,∞].
struct BesovSpec {
  double s = 0.0;
  double s_v = 0.0;
  double p = 2.0;
  double q = 1.0;

  void validate() const;
  /// B^{−1+2/p, 1/p}_{p,q}, the scale-invariant family.
  static BesovSpec critical(double p, double q) { return {-1.0 + 2.0 / p, 1.0 / p, p, q}; }
};

/// Time exponent and sampling for Chemin–Lerner norms.
struct TimeSpec {
  double r = 2.0;
  double t0 = 0.0;
  double t1 = 1.0;
  std::vector<double> times;

  void validate() const;
};

/// ℓ^q aggregate of 2^{s k + s_v j}·norms(k, j) (supremum for q = ∞).
double besov_aggregate(const BlockTable& norms, double s, double s_v, double q);

/// Grid-visible anisotropic Besov (quasi-)norm: blocks restricted to the resolvable ranges.
double besov_norm(const SpectralField& F, const BesovSpec& spec);
double besov_norm(const Field& f, const BesovSpec& spec);

/// Isotropic B^s_{p,q} over the isotropic shell range.
double besov_norm_iso(const SpectralField& F, double s, double p, double q);

/// Log-uniform quadrature in t (horizontal) and t' (vertical).
struct HeatQuadrature {
  int nodes_per_octave = 8;
  double th_lo = 0.0, th_hi = 0.0;
  double tv_lo = 0.0, tv_hi = 0.0;

  /// Covers [2^{-2(k_max+6)}, 2^{-2(k_min−3)}] in each direction.
  static HeatQuadrature for_grid(const Grid& g, int nodes_per_octave = 8);
  /// Configuration error unless [2^{-2k_max}, 2^{-2k_min}] is covered in both directions.
  void validate(const Grid& g) const;
};

/// Heat-kernel characterization: the L^q(dt/t dt'/t') norm of
/// t^{-s/2} t'^{-s_v/2} ‖K_h(t) K_v(t') f‖_{L^p}, K_h(t) = t∂_t e^{tΔ_h}, K_v(t') = t'∂_{t'} e^{t'∂3²}.
double besov_norm_heat(const SpectralField& F, const BesovSpec& spec, const HeatQuadrature& quad);

/// Chemin–Lerner norm from per-sample block norms: L^r in time (trapezoid) inside each
/// block, then the weighted ℓ^q aggregate.
double chemin_lerner_from_blocks(std::span<const BlockTable> blocks, const BesovSpec& spec, const TimeSpec& tspec);
double chemin_lerner_norm(std::span<const SpectralField> traj, const BesovSpec& spec, const TimeSpec& tspec);
double chemin_lerner_norm(std::span<const Field> traj, const BesovSpec& spec, const TimeSpec& tspec);

/// Trapezoid ∫|g|^r dt on the sample times, returned as an L^r norm (max for r = ∞).
double time_lr_norm(std::span<const double> values, std::span<const double> times, double r);

}  // namespace aniso
