// Serial reference kernels against the parallel library kernels on random data.
#include <chrono>
#include <cstdio>
#include <omp.h>

#include "aniso/blocks.hpp"
#include "aniso/corpus.hpp"
#include "aniso/fft.hpp"
#include "aniso/ns.hpp"
#include "aniso/reference.hpp"

namespace {

template <class F>
double seconds(F&& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

}  // namespace

int main() {
  using namespace aniso;
  std::printf("threads %d\n%-24s %6s %12s %12s\n", omp_get_max_threads(), "kernel", "n", "reference_s", "parallel_s");
  for (int n : {16, 32}) {
    const Grid g = Grid::cube(n);
    const SpectralField s = to_spectral(corpus::random_band_limited(g, 1, 7));
    const SpectralField u = to_spectral(corpus::random_divergence_free(g, 11));
    std::printf("%-24s %6d %12.4g %12.4g\n", "block_norms p=3", n,
                seconds([&] { reference::block_norms(s, 3.0); }, 1), seconds([&] { block_norms(s, 3.0); }, 3));
    std::printf("%-24s %6d %12.4g %12.4g\n", "advection", n, seconds([&] { reference::advection(u); }, 3),
                seconds([&] { transport_term(u, u); }, 3));
  }
}
