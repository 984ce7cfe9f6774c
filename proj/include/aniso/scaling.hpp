#pragma once

#include <array>
#include <string>
#include <vector>

#include "aniso/field.hpp"

namespace aniso {

/// Result of the anisotropic rescale-and-translate operator, with a record of any snapping.
struct ScaledField {
  Field field;
  double eps = 1.0;    ///< horizontal scale actually applied (power of two)
  double gamma = 1.0;  ///< vertical scale actually applied (power of two)
  std::array<double, 3> core{0.0, 0.0, 0.0};  ///< translation actually applied (lattice point)
  bool snapped = false;
  std::vector<std::string> notes;
};

/// (Λf)(x) = eps^{-1} f((x_h − x_h⁰)/eps, (x3 − x3⁰)/gamma).
///
/// The input is read as one copy of f on the cell centered at the origin, [−L/2, L/2)³, and
/// vanishing outside it; the output is that copy rescaled, centered at x⁰ and wrapped
/// periodically. Contractions (scale ≤ 1) subsample exactly; dilations are evaluated by
/// trigonometric interpolation. Non-dyadic scales snap to the nearest power of two and
/// translations snap to the nearest lattice point, both recorded in `notes`.
ScaledField scale_translate(const Field& f, double eps, double gamma, std::array<double, 3> core);

enum class Orthogonality { scale, core, none };
const char* to_string(Orthogonality o);

/// Dyadic scales ε_n = 2^{-eps_exp·n}, γ_n = 2^{-gamma_exp·n} and core x_n = core0 + n·core_rate,
/// declared on the window [n_lo, n_hi].
struct ScaleCoreTriplet {
  int eps_exp = 0;
  int gamma_exp = 0;
  std::array<double, 3> core0{0.0, 0.0, 0.0};
  std::array<double, 3> core_rate{0.0, 0.0, 0.0};
  int n_lo = 0;
  int n_hi = 0;
};

/// Scale-orthogonal iff the slope pairs differ; core-orthogonal iff the slopes agree and the
/// core difference rescaled by (ε_n, ε_n, γ_n) grows without bound; otherwise not orthogonal.
Orthogonality triplets_orthogonal(const ScaleCoreTriplet& a, const ScaleCoreTriplet& b);

}  // namespace aniso
