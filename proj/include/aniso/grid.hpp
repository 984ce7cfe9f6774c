#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace aniso {

/// Closed interval [lo, hi] of dyadic shell indices.
struct ShellRange {
  int lo = 0;
  int hi = -1;

  bool contains(int k) const { return k >= lo && k <= hi; }
  int count() const { return hi >= lo ? hi - lo + 1 : 0; }
  /// Lowest and highest |ξ| on which the shells of this range sum to one.
  double covered_low() const;
  double covered_high() const;
  std::string describe() const;
  friend bool operator==(const ShellRange&, const ShellRange&) = default;
};

/// Periodic box [0,L1)x[0,L2)x[0,L3) sampled on N1xN2xN3 points (x3 fastest).
///
/// Shell ranges: the lowest shell index is floor(log2(2π/L)) − 1 so every nonzero lattice
/// frequency is covered; the highest is the largest k with 2^{k+2} strictly below the
/// Nyquist frequency π·N/L (the minimum over the axes involved).
class Grid {
 public:
  Grid() = default;
  explicit Grid(std::array<int, 3> dims, std::array<double, 3> lengths = {1.0, 1.0, 1.0});
  static Grid cube(int n, double length = 1.0) { return Grid({n, n, n}, {length, length, length}); }

  const std::array<int, 3>& dims() const { return dims_; }
  const std::array<double, 3>& lengths() const { return lengths_; }
  int n(int axis) const { return dims_[axis]; }
  double length(int axis) const { return lengths_[axis]; }
  std::size_t size() const { return size_; }
  double volume() const { return lengths_[0] * lengths_[1] * lengths_[2]; }
  double cell_volume() const { return volume() / static_cast<double>(size_); }
  double spacing(int axis) const { return lengths_[axis] / dims_[axis]; }

  std::size_t index(int i1, int i2, int i3) const {
    return (static_cast<std::size_t>(i1) * dims_[1] + i2) * dims_[2] + i3;
  }

  /// Signed lattice index m of storage index i along an axis (Nyquist stored as +N/2).
  int mode(int axis, int i) const { return i <= dims_[axis] / 2 ? i : i - dims_[axis]; }
  bool is_nyquist(int axis, int i) const { return 2 * i == dims_[axis]; }
  /// Angular wavenumbers 2π m / L along one axis, indexed by storage position.
  const std::vector<double>& wavenumbers(int axis) const { return wavenumbers_[axis]; }

  double nyquist_h() const;
  double nyquist_v() const;
  /// Larger of the two: on anisotropic boxes the top isotropic shells are cut by the coarser axis.
  double nyquist_iso() const;

  const ShellRange& shells_h() const { return shells_h_; }
  const ShellRange& shells_v() const { return shells_v_; }
  const ShellRange& shells_iso() const { return shells_iso_; }

  std::string describe() const;
  friend bool operator==(const Grid& a, const Grid& b) {
    return a.dims_ == b.dims_ && a.lengths_ == b.lengths_;
  }

 private:
  std::array<int, 3> dims_{0, 0, 0};
  std::array<double, 3> lengths_{1.0, 1.0, 1.0};
  std::size_t size_ = 0;
  std::array<std::vector<double>, 3> wavenumbers_;
  ShellRange shells_h_, shells_v_, shells_iso_;
};

/// Throws a structural error when two grids differ.
void require_same_grid(const Grid& a, const Grid& b, const char* context);

}  // namespace aniso
