#pragma once

#include "aniso/besov.hpp"
#include "aniso/field.hpp"

namespace aniso {

/// max over resolvable k of ‖∂1^order Δ_k^h F‖_{L^{p2}} / (2^{k(order + 2(1/p1 − 1/p2))}‖Δ_k^h F‖_{L^{p1}}),
/// skipping empty blocks. Requires p1 ≤ p2 and order ∈ {0, 1}.
double bernstein_constant(const SpectralField& F, double p1, double p2, int order);

/// min over nonempty blocks and the given times of −log(‖e^{tΔ}Δ_k^hΔ_j^v F‖₂/‖Δ_k^hΔ_j^v F‖₂)/(t(2^{2k}+2^{2j})).
/// Blocks decayed below 1e-250 of their size are skipped.
double heat_decay_floor(const SpectralField& F, std::span<const double> times);

/// ‖e^{tΔ}f‖ in L̃^r([0,T]; B^{−1+2/p+σ, 2/r−σ+1/p}_{p,1}) over `samples` equispaced times,
/// divided by ‖f‖ in B^{−1+2/p,1/p}_{p,1}. r = ∞ is the sup over samples.
double heat_flow_ratio(const SpectralField& F, double p, double r, double sigma, double T, int samples);

/// ‖f‖_{B^{s,t}_{p,q}} / ‖f‖_{B^{s+t}_{p,q}} (isotropic denominator).
double embedding_ratio(const SpectralField& F, double s, double t, double p, double q);

}  // namespace aniso
