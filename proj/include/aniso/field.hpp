#pragma once

#include <complex>
#include <cstddef>
#include <cstdlib>
#include <new>
#include <span>
#include <vector>

#include "aniso/grid.hpp"

namespace aniso {

using cplx = std::complex<double>;

/// 64-byte aligned allocator so FFTW plans made on one buffer can run on any other.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::size_t alignment = 64;

  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    const std::size_t bytes = ((n * sizeof(T) + alignment - 1) / alignment) * alignment;
    void* p = std::aligned_alloc(alignment, bytes == 0 ? alignment : bytes);
    if (p == nullptr) throw std::bad_alloc();
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) noexcept { std::free(p); }

  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

template <class T>
using aligned_vector = std::vector<T, AlignedAllocator<T>>;

/// Real samples of a scalar (ncomp = 1) or vector (ncomp = 3) field, component-major.
class Field {
 public:
  Field() = default;
  Field(const Grid& grid, int ncomp);

  const Grid& grid() const { return grid_; }
  int ncomp() const { return ncomp_; }
  std::size_t size() const { return data_.size(); }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  std::span<double> component(int c);
  std::span<const double> component(int c) const;

  double& at(int c, int i1, int i2, int i3) { return data_[c * grid_.size() + grid_.index(i1, i2, i3)]; }
  double at(int c, int i1, int i2, int i3) const { return data_[c * grid_.size() + grid_.index(i1, i2, i3)]; }

  double max_abs() const;
  /// Each component's mean vanishes to 1e-12 of the largest amplitude.
  bool mean_free(double rel_tol = 1e-12) const;
  void remove_mean();

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(double a);
  /// this += a * o
  Field& axpy(double a, const Field& o);

 private:
  Grid grid_;
  int ncomp_ = 0;
  aligned_vector<double> data_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);

/// Fourier-series coefficients c_m with f(x) = Σ c_m exp(iξ_m·x), same layout as Field.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(const Grid& grid, int ncomp);

  const Grid& grid() const { return grid_; }
  int ncomp() const { return ncomp_; }
  std::size_t size() const { return data_.size(); }

  std::span<cplx> values() { return data_; }
  std::span<const cplx> values() const { return data_; }
  std::span<cplx> component(int c);
  std::span<const cplx> component(int c) const;

  cplx& at(int c, int i1, int i2, int i3) { return data_[c * grid_.size() + grid_.index(i1, i2, i3)]; }
  cplx at(int c, int i1, int i2, int i3) const { return data_[c * grid_.size() + grid_.index(i1, i2, i3)]; }

  /// Σ|c|² over all components and modes.
  double energy() const;
  /// Largest |c_{-m} − conj(c_m)| relative to the largest coefficient.
  double hermitian_defect() const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double a);
  SpectralField& axpy(double a, const SpectralField& o);

 private:
  Grid grid_;
  int ncomp_ = 0;
  aligned_vector<cplx> data_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// Euclidean L2 norm of a field on its box (quadrature is exact for trigonometric data).
double l2_norm(const Field& f);
double l2_norm(const SpectralField& f);

/// Relative L2 distance ‖a − b‖ / ‖b‖ (absolute when b vanishes).
double relative_l2(const Field& a, const Field& b);
double relative_l2(const SpectralField& a, const SpectralField& b);

}  // namespace aniso
