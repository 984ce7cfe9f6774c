#include "aniso/oscillation.hpp"

#include <cmath>

#include "aniso/besov.hpp"
#include "aniso/error.hpp"
#include "aniso/fft.hpp"
#include "aniso/spectral_ops.hpp"

namespace aniso {
namespace {

SpectralField alias_free_product(const Field& f, const Field& g) {
  require(f.ncomp() == 1 && g.ncomp() == 1, ErrorKind::structural, "product laws take scalar fields");
  require_same_grid(f.grid(), g.grid(), "product_law_ratio");
  const Field ff = to_physical(refine(to_spectral(f), {2, 2, 2}));
  const Field gf = to_physical(refine(to_spectral(g), {2, 2, 2}));
  Field prod(ff.grid(), 1);
  for (std::size_t i = 0; i < prod.size(); ++i) prod.values()[i] = ff.values()[i] * gf.values()[i];
  return to_spectral(prod);
}

}  // namespace

OscillationProfile oscillation_profile(const SpectralField& F, double p) {
  require(p >= 2.0, ErrorKind::precondition, "oscillation_profile needs p >= 2");
  OscillationProfile out;
  out.p = p;
  out.weighted = block_norms(F, p);
  const auto& h = out.weighted.shells_h();
  const auto& v = out.weighted.shells_v();
  out.k_star = h.lo;
  out.j_star = v.lo;
  double best = 0.0;
  for (int k = h.lo; k <= h.hi; ++k)
    for (int j = v.lo; j <= v.hi; ++j) {
      double& w = out.weighted.at(k, j);
      w *= std::exp2(k * (-1.0 + 2.0 / p) + j / p);
      if (w > best) {
        best = w;
        out.k_star = k;
        out.j_star = j;
        out.zero = false;
      }
    }
  return out;
}

OscillationProfile oscillation_profile(const Field& f, double p) { return oscillation_profile(to_spectral(f), p); }

BlockTable product_block_norms(const Field& f, const Field& g, double p) {
  return block_norms(alias_free_product(f, g), p);
}

double product_law_ratio(const Field& f, const Field& g, ProductLaw law, double p) {
  require(p >= 1.0, ErrorKind::precondition, "product law needs p >= 1");
  if (law == ProductLaw::quasi)
    require(p < 4.0, ErrorKind::precondition, "the quasi-algebra law needs p < 4");
  const BesovSpec high{2.0 / p, 1.0 / p, p, 1.0};
  const BesovSpec low = BesovSpec::critical(p, 1.0);
  const SpectralField prod = alias_free_product(f, g);
  // Norms of the factors on the refined grid so all three share one set of shells.
  const SpectralField F = refine(to_spectral(f), {2, 2, 2});
  const SpectralField G = refine(to_spectral(g), {2, 2, 2});
  const double num = besov_norm(prod, law == ProductLaw::algebra ? high : low);
  if (num == 0.0) return 0.0;
  const double den = law == ProductLaw::algebra ? besov_norm(F, high) * besov_norm(G, high)
                                                : besov_norm(F, low) * besov_norm(G, high);
  require(den > 0.0, ErrorKind::numerical, "product law denominator vanished with a nonzero product");
  return num / den;
}

}  // namespace aniso
