#include "aniso/reference.hpp"

#include <algorithm>
#include <cmath>

#include "aniso/cutoff.hpp"
#include "aniso/fft.hpp"
#include "aniso/spectral_ops.hpp"

namespace aniso::reference {

double lp_norm(const Field& f, double p) {
  const std::size_t n = f.grid().size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double m2 = 0.0;
    for (int c = 0; c < f.ncomp(); ++c) m2 += f.component(c)[i] * f.component(c)[i];
    const double m = std::sqrt(m2);
    if (std::isinf(p)) acc = std::max(acc, m);
    else acc += std::pow(m, p);
  }
  if (std::isinf(p)) return acc;
  return std::pow(acc * f.grid().cell_volume(), 1.0 / p);
}

BlockTable block_norms(const SpectralField& F, double p) {
  const Grid& g = F.grid();
  BlockTable out(g.shells_h(), g.shells_v());
  const auto& w1 = g.wavenumbers(0);
  const auto& w2 = g.wavenumbers(1);
  const auto& w3 = g.wavenumbers(2);
  for (int k = g.shells_h().lo; k <= g.shells_h().hi; ++k)
    for (int j = g.shells_v().lo; j <= g.shells_v().hi; ++j) {
      SpectralField block(g, F.ncomp());
      for (int c = 0; c < F.ncomp(); ++c)
        for (int i1 = 0; i1 < g.n(0); ++i1)
          for (int i2 = 0; i2 < g.n(1); ++i2)
            for (int i3 = 0; i3 < g.n(2); ++i3) {
              const double m = psi_hat(std::ldexp(std::hypot(w1[i1], w2[i2]), -k)) *
                               psi_hat(std::ldexp(std::abs(w3[i3]), -j));
              block.at(c, i1, i2, i3) = m * F.at(c, i1, i2, i3);
            }
      out.at(k, j) = reference::lp_norm(to_physical(block), p);
    }
  return out;
}

SpectralField advection(const SpectralField& u) {
  const Grid& g = u.grid();
  SpectralField ut = u;
  dealias_in_place(ut);
  const Field v = to_physical(ut);
  const std::size_t n = g.size();
  SpectralField flux(g, 3);
  Field product(g, 1);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      for (std::size_t i = 0; i < n; ++i) product.values()[i] = v.component(a)[i] * v.component(b)[i];
      SpectralField pb = to_spectral(product);
      SpectralField d = derivative(pb, b);
      for (std::size_t i = 0; i < n; ++i) flux.component(a)[i] -= d.values()[i];
    }
  dealias_in_place(flux);
  return leray_project(flux);
}

}  // namespace aniso::reference
