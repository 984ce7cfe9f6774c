#include "aniso/cutoff.hpp"

#include <cmath>

namespace aniso {

double chi_hat(double t) {
  t = std::abs(t);
  if (t <= 1.0) return 1.0;
  if (t >= 2.0) return 0.0;
  const double a = std::exp(-1.0 / (2.0 - t));
  const double b = std::exp(-1.0 / (t - 1.0));
  return a / (a + b);
}

double psi_hat(double t) { return chi_hat(0.5 * t) - chi_hat(t); }

}  // namespace aniso
