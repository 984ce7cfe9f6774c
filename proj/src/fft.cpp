#include "aniso/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "aniso/error.hpp"

namespace aniso::fft {
namespace {

struct Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const Plans& plans_for(const Grid& grid) {
  static std::map<std::array<int, 3>, Plans> cache;
  std::lock_guard lock(planner_mutex());
  auto it = cache.find(grid.dims());
  if (it != cache.end()) return it->second;
  const auto& d = grid.dims();
  aligned_vector<cplx> a(grid.size()), b(grid.size());
  auto* pa = reinterpret_cast<fftw_complex*>(a.data());
  auto* pb = reinterpret_cast<fftw_complex*>(b.data());
  Plans p;
  p.forward = fftw_plan_dft_3d(d[0], d[1], d[2], pa, pb, FFTW_FORWARD, FFTW_ESTIMATE);
  p.backward = fftw_plan_dft_3d(d[0], d[1], d[2], pa, pb, FFTW_BACKWARD, FFTW_ESTIMATE);
  require(p.forward != nullptr && p.backward != nullptr, ErrorKind::numerical, "FFTW planning failed");
  return cache.emplace(d, p).first->second;
}

aligned_vector<cplx>& scratch(std::size_t n, int slot) {
  thread_local aligned_vector<cplx> buffers[2];
  auto& b = buffers[slot];
  if (b.size() < n) b.resize(n);
  return b;
}

void check(const Grid& grid, std::size_t in, std::size_t out) {
  require(in == grid.size() && out == grid.size(), ErrorKind::structural,
          "transform buffer size does not match grid " + grid.describe());
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

void forward(const Grid& grid, std::span<const double> in, std::span<cplx> out) {
  check(grid, in.size(), out.size());
  auto& a = scratch(grid.size(), 0);
  auto& b = scratch(grid.size(), 1);
  for (std::size_t i = 0; i < in.size(); ++i) a[i] = cplx(in[i], 0.0);
  fftw_execute_dft(plans_for(grid).forward, as_fftw(a.data()), as_fftw(b.data()));
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = b[i] * scale;
}

void inverse_complex(const Grid& grid, std::span<const cplx> in, std::span<cplx> out) {
  check(grid, in.size(), out.size());
  auto& a = scratch(grid.size(), 0);
  auto& b = scratch(grid.size(), 1);
  std::copy(in.begin(), in.end(), a.begin());
  fftw_execute_dft(plans_for(grid).backward, as_fftw(a.data()), as_fftw(b.data()));
  std::copy(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(out.size()), out.begin());
}

void inverse(const Grid& grid, std::span<const cplx> in, std::span<double> out) {
  check(grid, in.size(), out.size());
  auto& a = scratch(grid.size(), 0);
  auto& b = scratch(grid.size(), 1);
  std::copy(in.begin(), in.end(), a.begin());
  fftw_execute_dft(plans_for(grid).backward, as_fftw(a.data()), as_fftw(b.data()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = b[i].real();
}

}  // namespace aniso::fft

namespace aniso {

SpectralField to_spectral(const Field& f) {
  SpectralField F(f.grid(), f.ncomp());
  for (int c = 0; c < f.ncomp(); ++c) fft::forward(f.grid(), f.component(c), F.component(c));
  return F;
}

Field to_physical(const SpectralField& F) {
  Field f(F.grid(), F.ncomp());
  for (int c = 0; c < F.ncomp(); ++c) fft::inverse(F.grid(), F.component(c), f.component(c));
  return f;
}

}  // namespace aniso
