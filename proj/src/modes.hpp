#pragma once

#include <cmath>
#include <vector>

#include "aniso/cutoff.hpp"
#include "aniso/grid.hpp"

namespace aniso::detail {

/// Wavenumbers used by odd operators: the Nyquist entry is zero.
inline std::vector<double> odd_wavenumbers(const Grid& g, int axis) {
  std::vector<double> w = g.wavenumbers(axis);
  for (int i = 0; i < g.n(axis); ++i)
    if (g.is_nyquist(axis, i)) w[i] = 0.0;
  return w;
}

/// |ξ_h| tabulated on the (i1, i2) plane.
inline std::vector<double> horizontal_modulus(const Grid& g) {
  const auto& w1 = g.wavenumbers(0);
  const auto& w2 = g.wavenumbers(1);
  std::vector<double> out(static_cast<std::size_t>(g.n(0)) * g.n(1));
  for (int i1 = 0; i1 < g.n(0); ++i1)
    for (int i2 = 0; i2 < g.n(1); ++i2) out[i1 * g.n(1) + i2] = std::hypot(w1[i1], w2[i2]);
  return out;
}

/// Ψ̂(2^{-k}|ξ_h|) on the (i1, i2) plane.
inline std::vector<double> shell_weights_h(const Grid& g, int k) {
  std::vector<double> out = horizontal_modulus(g);
  const double s = std::ldexp(1.0, -k);
  for (double& v : out) v = psi_hat(s * v);
  return out;
}

/// Ψ̂(2^{-j}|ξ3|) along i3.
inline std::vector<double> shell_weights_v(const Grid& g, int j) {
  const auto& w3 = g.wavenumbers(2);
  std::vector<double> out(g.n(2));
  const double s = std::ldexp(1.0, -j);
  for (int i = 0; i < g.n(2); ++i) out[i] = psi_hat(s * std::abs(w3[i]));
  return out;
}

}  // namespace aniso::detail
