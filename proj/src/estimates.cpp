#include "aniso/estimates.hpp"

#include <cmath>
#include <limits>

#include "aniso/blocks.hpp"
#include "aniso/error.hpp"
#include "aniso/fft.hpp"
#include "aniso/spectral_ops.hpp"

namespace aniso {

double bernstein_constant(const SpectralField& F, double p1, double p2, int order) {
  require(p1 >= 1.0 && p1 <= p2, ErrorKind::usage, "Bernstein needs 1 <= p1 <= p2");
  require(order == 0 || order == 1, ErrorKind::usage, "derivative order must be 0 or 1");
  const ShellRange& h = F.grid().shells_h();
  const double gain = 1.0 / p1 - (std::isinf(p2) ? 0.0 : 1.0 / p2);
  double worst = 0.0;
  for (int k = h.lo; k <= h.hi; ++k) {
    const SpectralField b = lp_block(F, k, std::nullopt);
    const double base = lp_norm(to_physical(b), p1);
    if (base <= 1e-14 * l2_norm(F)) continue;
    const double top = lp_norm(to_physical(order ? derivative(b, 0) : b), p2);
    worst = std::max(worst, top / (std::exp2(k * (order + 2 * gain)) * base));
  }
  return worst;
}

double heat_decay_floor(const SpectralField& F, std::span<const double> times) {
  const Grid& g = F.grid();
  double floor = std::numeric_limits<double>::infinity();
  for (int k = g.shells_h().lo; k <= g.shells_h().hi; ++k)
    for (int j = g.shells_v().lo; j <= g.shells_v().hi; ++j) {
      const SpectralField b = lp_block(F, k, j);
      const double n0 = l2_norm(b);
      if (n0 <= 1e-14 * l2_norm(F)) continue;
      for (double t : times) {
        const double ratio = l2_norm(heat_flow(b, t)) / n0;
        if (ratio < 1e-250) continue;
        floor = std::min(floor, -std::log(ratio) / (t * (std::exp2(2 * k) + std::exp2(2 * j))));
      }
    }
  return floor;
}

double heat_flow_ratio(const SpectralField& F, double p, double r, double sigma, double T, int samples) {
  require(samples >= 4 && T > 0.0, ErrorKind::usage, "heat-flow ratio needs T > 0 and >= 4 samples");
  const BesovSpec target{-1.0 + 2.0 / p + sigma, (std::isinf(r) ? 0.0 : 2.0 / r) - sigma + 1.0 / p, p, 1.0};
  TimeSpec ts{r, 0.0, T, {}};
  std::vector<SpectralField> traj;
  for (int i = 0; i < samples; ++i) {
    const double t = T * i / (samples - 1);
    ts.times.push_back(t);
    traj.push_back(heat_flow(F, t));
  }
  return chemin_lerner_norm(traj, target, ts) / besov_norm(F, BesovSpec::critical(p, 1.0));
}

double embedding_ratio(const SpectralField& F, double s, double t, double p, double q) {
  return besov_norm(F, BesovSpec{s, t, p, q}) / besov_norm_iso(F, s + t, p, q);
}

}  // namespace aniso
