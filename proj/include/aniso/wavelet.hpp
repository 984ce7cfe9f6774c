#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "aniso/field.hpp"

namespace aniso {

/// Daubechies orthogonal low-pass filter with four vanishing moments (8 taps, sum √2).
/// The high-pass filter is g[m] = (−1)^m h[7−m].
inline constexpr std::array<double, 8> db4_lowpass{
    0.2303778133088965008632911830440708500016152482483092977910968,
    0.7148465705529156470899219552739926037076084010993081758450110,
    0.6308807679298589078817163383006152202032229226771951174057473,
    -0.02798376941685985421141374718007538541198732022449175284003358,
    -0.1870348117190930840795706727890814195845441743745800912057770,
    0.03084138183556076362721936253495905017031482172003403341821219,
    0.03288301166688519973540751354924438866454194113754971259727278,
    -0.01059740178506903210488320852402722918109996490637641983484974,
};

/// λ = ((j1, k1), (j2, k2)) plus the field component and the orientations: e1 ∈ {1,2,3}
/// for the three horizontal detail wavelets and 0 for the coarsest horizontal scaling
/// function; e2 ∈ {0,1} likewise vertically. Positions run over 0 ≤ k < 2^j.
struct WaveletIndex {
  int comp = 0;
  int j1 = 0;
  int e1 = 0;
  int k1a = 0;
  int k1b = 0;
  int j2 = 0;
  int e2 = 0;
  int k2 = 0;

  friend bool operator==(const WaveletIndex&, const WaveletIndex&) = default;
};

/// Critically sampled hyperbolic coefficients stored in Mallat (in-place) order with the
/// field layout: a 2D pyramid on every x3-plane tensored with a 1D pyramid along x3.
/// Stored values are L²-normalized: Σ d² equals the squared L² norm of the field.
class WaveletCoeffs {
 public:
  WaveletCoeffs() = default;
  WaveletCoeffs(const Grid& grid, int ncomp, int levels_h, int levels_v);

  const Grid& grid() const { return grid_; }
  int ncomp() const { return ncomp_; }
  int levels_h() const { return levels_h_; }
  int levels_v() const { return levels_v_; }
  std::size_t size() const { return data_.size(); }
  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  WaveletIndex index_of(std::size_t flat) const;
  std::size_t flat_of(const WaveletIndex& idx) const;
  /// Storage coordinates (i1, i2, i3) of a flat position.
  std::array<int, 3> array_coords(std::size_t flat) const;

 private:
  Grid grid_;
  int ncomp_ = 0;
  int levels_h_ = 0;
  int levels_v_ = 0;
  std::vector<double> data_;
};

/// Deepest admissible pyramid for n samples: log2(n) − 2.
int max_wavelet_depth(int n);

/// Forward transform; a negative depth selects the maximum. Needs N1 = N2.
WaveletCoeffs hdwt_forward(const Field& f, int levels_h = -1, int levels_v = -1);
Field hdwt_inverse(const WaveletCoeffs& c);

/// Sequence space used to renormalize and aggregate coefficients.
struct WaveletSpace {
  enum class Kind { b1q, bppp };
  Kind kind = Kind::b1q;
  double exponent = 1.0;  ///< q for 𝓑¹_q = B^{1,1}_{1,q}, p for B^{−1+2/p,1/p}_{p,p}

  static WaveletSpace b1q(double q) { return {Kind::b1q, q}; }
  static WaveletSpace bppp(double p) { return {Kind::bppp, p}; }
  /// d^X = factor·d^{L²}. Both spaces are invariant under the scaling that fixes
  /// 2^{j1}ψ(2^{j1}x_h − k1, 2^{j2}x3 − k2), so the factor is 2^{j2/2} in each.
  double level_factor(int j1, int j2) const;
  void validate() const;
};

/// 𝓑¹_q: (Σ_{j1} (Σ_{λ1} (Σ_{j2} (Σ_{λ2} |d|)^q)^{1/q})^q)^{1/q}; B_ppp: ℓ^p of d^X.
double coeff_norm(const WaveletCoeffs& c, WaveletSpace space);

/// Flat positions sorted by |d^X| descending; ties ordered lexicographically by
/// (j1, k1, j2, k2) in storage coordinates, then component. Stable and deterministic.
std::vector<std::size_t> rank_coefficients(const WaveletCoeffs& c, WaveletSpace space);

struct BestMTerm {
  std::vector<std::size_t> selected;  ///< flat positions of E_M in rank order
  WaveletCoeffs kept;                 ///< coefficients on E_M, zero elsewhere
  WaveletCoeffs rest;                 ///< complement
  Field qmf;
  Field remainder;
};

BestMTerm best_m_term(const WaveletCoeffs& c, std::size_t M, WaveletSpace space);

/// CSV `j1,k1a,k1b,j2,k2,value` for one component; k are storage coordinates (they encode
/// the orientation) and value is the 𝓑¹-normalized coefficient.
void write_coeff_csv(const std::filesystem::path& path, const WaveletCoeffs& c, int comp = 0);
/// Same columns plus `rank` for a selection.
void write_selection_csv(const std::filesystem::path& path, const WaveletCoeffs& c,
                         std::span<const std::size_t> selected);

}  // namespace aniso
