#pragma once

#include <limits>
#include <span>
#include <vector>

#include "aniso/field.hpp"

namespace aniso {

inline constexpr double p_infinity = std::numeric_limits<double>::infinity();

/// Dense table indexed by (horizontal shell k, vertical shell j).
class BlockTable {
 public:
  BlockTable() = default;
  BlockTable(ShellRange h, ShellRange v) : h_(h), v_(v), values_(static_cast<std::size_t>(h.count()) * v.count(), 0.0) {}

  const ShellRange& shells_h() const { return h_; }
  const ShellRange& shells_v() const { return v_; }
  double& at(int k, int j) { return values_[offset(k, j)]; }
  double at(int k, int j) const { return values_[offset(k, j)]; }
  std::span<const double> values() const { return values_; }

 private:
  std::size_t offset(int k, int j) const {
    return static_cast<std::size_t>(k - h_.lo) * v_.count() + static_cast<std::size_t>(j - v_.lo);
  }
  ShellRange h_, v_;
  std::vector<double> values_;
};

/// L^p norm of the pointwise Euclidean magnitude by midpoint quadrature (p = ∞: max).
double lp_norm(const Field& f, double p);
double lp_norm(const Grid& grid, int ncomp, std::span<const double> samples, double p);

/// ‖Δ_k^hΔ_j^v F‖_{L^p} for every resolvable (k, j). p = 2 uses Parseval, otherwise each
/// block is synthesized on the grid; blocks are processed in parallel.
BlockTable block_norms(const SpectralField& F, double p);
/// Several exponents from one synthesis pass per block.
std::vector<BlockTable> block_norms(const SpectralField& F, std::span<const double> ps);

/// ‖Δ_k^h F‖_{L^p} for every resolvable k (no vertical localization).
std::vector<double> horizontal_block_norms(const SpectralField& F, double p);
/// ‖Δ_q F‖_{L^p} over the isotropic shell range.
std::vector<double> iso_block_norms(const SpectralField& F, double p);

}  // namespace aniso
