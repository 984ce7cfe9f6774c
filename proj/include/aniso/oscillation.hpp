#pragma once

#include "aniso/blocks.hpp"
#include "aniso/field.hpp"

namespace aniso {

/// Weighted block norms 2^{k(−1+2/p)+j/p}‖Δ_k^hΔ_j^v f‖_{L^p} and their argmax.
struct OscillationProfile {
  BlockTable weighted;
  double p = 2.0;
  int k_star = 0;
  int j_star = 0;
  bool zero = true;  ///< every weighted norm vanished; the argmax is meaningless

  int anisotropy() const { return j_star > k_star ? j_star - k_star : k_star - j_star; }
};

/// Requires p ≥ 2. Ties in the argmax go to the lexicographically first (k, j).
OscillationProfile oscillation_profile(const SpectralField& F, double p);
OscillationProfile oscillation_profile(const Field& f, double p);

enum class ProductLaw {
  algebra,  ///< ‖fg‖ / (‖f‖‖g‖), all in B^{2/p,1/p}_{p,1}
  quasi,    ///< ‖fg‖_{B^{-1+2/p,1/p}_{p,1}} / (‖f‖_{B^{-1+2/p,1/p}_{p,1}}‖g‖_{B^{2/p,1/p}_{p,1}})
};

/// Measured constant of a product law. The product is formed on a grid refined twice per
/// axis so that it is free of aliasing, and all three norms are taken there. Scalar fields only.
/// Returns 0 when the numerator vanishes.
double product_law_ratio(const Field& f, const Field& g, ProductLaw law, double p);

/// Block norms of the alias-free product fg on the refined grid.
BlockTable product_block_norms(const Field& f, const Field& g, double p);

}  // namespace aniso
