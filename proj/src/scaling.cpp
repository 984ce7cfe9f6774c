#include "aniso/scaling.hpp"

#include <cmath>

#include "aniso/error.hpp"
#include "aniso/fft.hpp"
#include "aniso/io.hpp"
#include "aniso/spectral_ops.hpp"

namespace aniso {
namespace {

/// Nearest power-of-two exponent of a positive scale; flags the snap.
int dyadic_exponent(double scale, const char* name, ScaledField& out) {
  require(scale > 0.0 && std::isfinite(scale), ErrorKind::precondition, std::string(name) + " must be positive");
  const double e = std::log2(scale);
  const int r = static_cast<int>(std::lround(e));
  if (std::abs(e - r) > 1e-12) {
    out.snapped = true;
    out.notes.push_back(std::string(name) + " " + format_double(scale) + " snapped to 2^" + std::to_string(r));
  }
  return r;
}

int floor_mod(long long a, int n) { return static_cast<int>(((a % n) + n) % n); }

}  // namespace

ScaledField scale_translate(const Field& f, double eps, double gamma, std::array<double, 3> core) {
  ScaledField out;
  const Grid& g = f.grid();
  const int eh = dyadic_exponent(eps, "eps", out);
  const int ev = dyadic_exponent(gamma, "gamma", out);
  out.eps = std::exp2(eh);
  out.gamma = std::exp2(ev);

  std::array<int, 3> shift{};
  for (int a = 0; a < 3; ++a) {
    const double cells = core[a] / g.spacing(a);
    shift[a] = static_cast<int>(std::lround(cells));
    if (std::abs(cells - shift[a]) > 1e-9) {
      out.snapped = true;
      out.notes.push_back("core[" + std::to_string(a) + "] " + format_double(core[a]) + " snapped to lattice");
    }
    out.core[a] = shift[a] * g.spacing(a);
  }

  // Per axis: fine samples per output cell = 2^{-exponent}·upsampling.
  const std::array<int, 3> exps{eh, eh, ev};
  std::array<int, 3> up{}, stride{};
  for (int a = 0; a < 3; ++a) {
    up[a] = exps[a] > 0 ? (1 << exps[a]) : 1;
    stride[a] = exps[a] > 0 ? 1 : (1 << -exps[a]);
  }
  Field source = f;
  if (up[0] > 1 || up[1] > 1 || up[2] > 1) source = to_physical(refine(to_spectral(f), up));
  const Grid& sg = source.grid();

  Field result(g, f.ncomp());
  const double amp = 1.0 / out.eps;
  std::array<std::vector<int>, 3> src_index;
  for (int a = 0; a < 3; ++a) {
    const int ns = sg.n(a);
    src_index[a].resize(g.n(a));
    for (int i = 0; i < g.n(a); ++i) {
      // Offset from the core in output cells, taken in the centered range.
      int d = floor_mod(static_cast<long long>(i) - shift[a], g.n(a));
      if (d >= g.n(a) / 2) d -= g.n(a);
      const long long m = static_cast<long long>(d) * stride[a];
      src_index[a][i] = (m >= -ns / 2 && m < ns / 2) ? floor_mod(m, ns) : -1;
    }
  }
  for (int c = 0; c < f.ncomp(); ++c)
    for (int i1 = 0; i1 < g.n(0); ++i1) {
      const int s1 = src_index[0][i1];
      if (s1 < 0) continue;
      for (int i2 = 0; i2 < g.n(1); ++i2) {
        const int s2 = src_index[1][i2];
        if (s2 < 0) continue;
        for (int i3 = 0; i3 < g.n(2); ++i3) {
          const int s3 = src_index[2][i3];
          if (s3 >= 0) result.at(c, i1, i2, i3) = amp * source.at(c, s1, s2, s3);
        }
      }
    }
  out.field = std::move(result);
  return out;
}

const char* to_string(Orthogonality o) {
  switch (o) {
    case Orthogonality::scale: return "scale-orthogonal";
    case Orthogonality::core: return "core-orthogonal";
    case Orthogonality::none: return "non-orthogonal";
  }
  return "?";
}

Orthogonality triplets_orthogonal(const ScaleCoreTriplet& a, const ScaleCoreTriplet& b) {
  if (a.eps_exp != b.eps_exp || a.gamma_exp != b.gamma_exp) return Orthogonality::scale;
  // (Δx0 + nΔv)·2^{slope·n} is unbounded iff slope > 0 with a nonzero difference, or
  // slope = 0 with a nonzero rate.
  const auto diverges = [](int slope, double d0, double dv) {
    if (slope > 0) return d0 != 0.0 || dv != 0.0;
    if (slope == 0) return dv != 0.0;
    return false;
  };
  for (int axis = 0; axis < 3; ++axis) {
    const int slope = axis < 2 ? a.eps_exp : a.gamma_exp;
    if (diverges(slope, a.core0[axis] - b.core0[axis], a.core_rate[axis] - b.core_rate[axis]))
      return Orthogonality::core;
  }
  return Orthogonality::none;
}

}  // namespace aniso
