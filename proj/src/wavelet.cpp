#include "aniso/wavelet.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "aniso/error.hpp"
#include "aniso/io.hpp"

namespace aniso {
namespace {

constexpr int taps = static_cast<int>(db4_lowpass.size());

constexpr std::array<double, 8> make_highpass() {
  std::array<double, 8> g{};
  for (int m = 0; m < taps; ++m) g[m] = (m % 2 ? -1.0 : 1.0) * db4_lowpass[taps - 1 - m];
  return g;
}
constexpr std::array<double, 8> db4_highpass = make_highpass();

int log2i(int n) { return std::bit_width(static_cast<unsigned>(n)) - 1; }

/// One periodized analysis step on x[0..m): approximations to the front half, details behind.
void analyze(std::span<double> x, int m, std::vector<double>& tmp) {
  tmp.assign(m, 0.0);
  const int half = m / 2;
  for (int k = 0; k < half; ++k) {
    double a = 0.0, d = 0.0;
    for (int t = 0; t < taps; ++t) {
      const double v = x[(2 * k + t) % m];
      a += db4_lowpass[t] * v;
      d += db4_highpass[t] * v;
    }
    tmp[k] = a;
    tmp[half + k] = d;
  }
  std::copy(tmp.begin(), tmp.end(), x.begin());
}

void synthesize(std::span<double> x, int m, std::vector<double>& tmp) {
  tmp.assign(m, 0.0);
  const int half = m / 2;
  for (int k = 0; k < half; ++k) {
    const double a = x[k], d = x[half + k];
    for (int t = 0; t < taps; ++t) tmp[(2 * k + t) % m] += db4_lowpass[t] * a + db4_highpass[t] * d;
  }
  std::copy(tmp.begin(), tmp.end(), x.begin());
}

struct Level1D {
  int level;  // pyramid level ℓ (1 = finest)
  int e;
  int pos;
};

Level1D decode1(int i, int n, int depth) {
  const int coarse = n >> depth;
  if (i < coarse) return {depth, 0, i};
  const int level = log2i(n) - log2i(i);
  return {level, 1, i - (n >> level)};
}

struct Level2D {
  int level;
  int e;
  int pa, pb;
};

Level2D decode2(int i1, int i2, int n, int depth) {
  const int coarse = n >> depth;
  if (i1 < coarse && i2 < coarse) return {depth, 0, i1, i2};
  const int level = log2i(n) - log2i(std::max(i1, i2));
  const int sz = n >> level;
  const int e = (i1 >= sz ? 1 : 0) + (i2 >= sz ? 2 : 0);
  return {level, e, i1 >= sz ? i1 - sz : i1, i2 >= sz ? i2 - sz : i2};
}

/// Applies `op` to every line along `axis` of the first `m` entries of each component block,
/// restricted to indices below `bound` on the other horizontal axis.
template <class Op>
void for_lines(const Grid& g, int ncomp, std::span<double> data, int axis, int m, int bound, Op&& op) {
  const int n1 = g.n(0), n2 = g.n(1), n3 = g.n(2);
  const std::size_t nn = g.size();
  for (int c = 0; c < ncomp; ++c) {
    double* base = data.data() + c * nn;
    if (axis == 2) {
#pragma omp parallel
      {
        std::vector<double> tmp;
#pragma omp for schedule(static)
        for (int i1 = 0; i1 < n1; ++i1)
          for (int i2 = 0; i2 < n2; ++i2) op(std::span<double>(base + g.index(i1, i2, 0), n3), tmp);
      }
    } else {
      const int other = bound;
#pragma omp parallel
      {
        std::vector<double> line, tmp;
        line.resize(m);
#pragma omp for schedule(static)
        for (int i3 = 0; i3 < n3; ++i3)
          for (int o = 0; o < other; ++o) {
            for (int t = 0; t < m; ++t) line[t] = base[axis == 0 ? g.index(t, o, i3) : g.index(o, t, i3)];
            op(std::span<double>(line), tmp);
            for (int t = 0; t < m; ++t) base[axis == 0 ? g.index(t, o, i3) : g.index(o, t, i3)] = line[t];
          }
      }
    }
  }
}

void check_levels(const Grid& g, int lh, int lv) {
  require(g.n(0) == g.n(1), ErrorKind::structural, "hyperbolic wavelets need N1 = N2");
  require(lh >= 1 && lh <= max_wavelet_depth(g.n(0)), ErrorKind::usage,
          "horizontal wavelet depth must lie in [1, " + std::to_string(max_wavelet_depth(g.n(0))) + "]");
  require(lv >= 1 && lv <= max_wavelet_depth(g.n(2)), ErrorKind::usage,
          "vertical wavelet depth must lie in [1, " + std::to_string(max_wavelet_depth(g.n(2))) + "]");
}

}  // namespace

int max_wavelet_depth(int n) { return log2i(n) - 2; }

WaveletCoeffs::WaveletCoeffs(const Grid& grid, int ncomp, int levels_h, int levels_v)
    : grid_(grid), ncomp_(ncomp), levels_h_(levels_h), levels_v_(levels_v), data_(grid.size() * ncomp, 0.0) {
  require(ncomp == 1 || ncomp == 3, ErrorKind::structural, "wavelet coefficients need 1 or 3 components");
  check_levels(grid, levels_h, levels_v);
}

std::array<int, 3> WaveletCoeffs::array_coords(std::size_t flat) const {
  const std::size_t r = flat % grid_.size();
  const int n2 = grid_.n(1), n3 = grid_.n(2);
  return {static_cast<int>(r / (static_cast<std::size_t>(n2) * n3)), static_cast<int>((r / n3) % n2),
          static_cast<int>(r % n3)};
}

WaveletIndex WaveletCoeffs::index_of(std::size_t flat) const {
  const auto [i1, i2, i3] = array_coords(flat);
  const Level2D h = decode2(i1, i2, grid_.n(0), levels_h_);
  const Level1D v = decode1(i3, grid_.n(2), levels_v_);
  return {static_cast<int>(flat / grid_.size()), log2i(grid_.n(0)) - h.level, h.e, h.pa, h.pb,
          log2i(grid_.n(2)) - v.level, v.e, v.pos};
}

std::size_t WaveletCoeffs::flat_of(const WaveletIndex& idx) const {
  const int nh = grid_.n(0), nv = grid_.n(2);
  const int lh = log2i(nh) - idx.j1, lv = log2i(nv) - idx.j2;
  require(idx.comp >= 0 && idx.comp < ncomp_, ErrorKind::range, "wavelet component out of range");
  require(lh >= 1 && lh <= levels_h_ && lv >= 1 && lv <= levels_v_, ErrorKind::range, "wavelet scale out of range");
  require(idx.e1 >= (lh == levels_h_ ? 0 : 1) && idx.e1 <= 3, ErrorKind::range, "horizontal orientation out of range");
  require(idx.e2 == 0 ? lv == levels_v_ : idx.e2 == 1, ErrorKind::range, "vertical orientation out of range");
  const int sh = nh >> lh, sv = nv >> lv;
  require(idx.k1a >= 0 && idx.k1a < sh && idx.k1b >= 0 && idx.k1b < sh && idx.k2 >= 0 && idx.k2 < sv,
          ErrorKind::range, "wavelet position out of range");
  const int i1 = idx.k1a + ((idx.e1 & 1) ? sh : 0);
  const int i2 = idx.k1b + ((idx.e1 & 2) ? sh : 0);
  const int i3 = idx.k2 + (idx.e2 ? sv : 0);
  return idx.comp * grid_.size() + grid_.index(i1, i2, i3);
}

WaveletCoeffs hdwt_forward(const Field& f, int levels_h, int levels_v) {
  const Grid& g = f.grid();
  if (levels_h < 0) levels_h = max_wavelet_depth(g.n(0));
  if (levels_v < 0) levels_v = max_wavelet_depth(g.n(2));
  WaveletCoeffs c(g, f.ncomp(), levels_h, levels_v);
  auto data = c.values();
  const double scale = std::sqrt(g.cell_volume());
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = scale * f.values()[i];

  const int n3 = g.n(2);
  for_lines(g, f.ncomp(), data, 2, n3, 0, [&](std::span<double> line, std::vector<double>& tmp) {
    for (int l = 0, m = n3; l < levels_v; ++l, m /= 2) analyze(line, m, tmp);
  });
  for (int l = 0, m = g.n(0); l < levels_h; ++l, m /= 2) {
    for_lines(g, f.ncomp(), data, 0, m, m, [&](std::span<double> line, std::vector<double>& tmp) { analyze(line, m, tmp); });
    for_lines(g, f.ncomp(), data, 1, m, m, [&](std::span<double> line, std::vector<double>& tmp) { analyze(line, m, tmp); });
  }
  return c;
}

Field hdwt_inverse(const WaveletCoeffs& c) {
  const Grid& g = c.grid();
  Field f(g, c.ncomp());
  auto data = f.values();
  std::copy(c.values().begin(), c.values().end(), data.begin());
  for (int l = c.levels_h() - 1; l >= 0; --l) {
    const int m = g.n(0) >> l;
    for_lines(g, c.ncomp(), data, 1, m, m, [&](std::span<double> line, std::vector<double>& tmp) { synthesize(line, m, tmp); });
    for_lines(g, c.ncomp(), data, 0, m, m, [&](std::span<double> line, std::vector<double>& tmp) { synthesize(line, m, tmp); });
  }
  const int n3 = g.n(2);
  const int lv = c.levels_v();
  for_lines(g, c.ncomp(), data, 2, n3, 0, [&](std::span<double> line, std::vector<double>& tmp) {
    for (int l = lv - 1; l >= 0; --l) synthesize(line, n3 >> l, tmp);
  });
  const double scale = 1.0 / std::sqrt(g.cell_volume());
  for (double& v : data) v *= scale;
  return f;
}

double WaveletSpace::level_factor(int, int j2) const { return std::exp2(0.5 * j2); }

void WaveletSpace::validate() const {
  if (kind == Kind::b1q)
    require(exponent > 0.0, ErrorKind::usage, "B1q space needs q > 0");
  else
    require(exponent >= 1.0, ErrorKind::usage, "Bppp space needs p >= 1");
}

namespace {

/// j1 for every (i1, i2) and j2 for every i3.
struct LevelTables {
  std::vector<int> j1;
  std::vector<int> j2;
};

LevelTables level_tables(const WaveletCoeffs& c) {
  const Grid& g = c.grid();
  LevelTables t;
  t.j1.resize(static_cast<std::size_t>(g.n(0)) * g.n(1));
  for (int i1 = 0; i1 < g.n(0); ++i1)
    for (int i2 = 0; i2 < g.n(1); ++i2)
      t.j1[i1 * g.n(1) + i2] = log2i(g.n(0)) - decode2(i1, i2, g.n(0), c.levels_h()).level;
  t.j2.resize(g.n(2));
  for (int i3 = 0; i3 < g.n(2); ++i3) t.j2[i3] = log2i(g.n(2)) - decode1(i3, g.n(2), c.levels_v()).level;
  return t;
}

double q_sum(double acc, double v, double q) { return std::isinf(q) ? std::max(acc, v) : acc + std::pow(v, q); }
double q_root(double acc, double q) { return std::isinf(q) ? acc : std::pow(acc, 1.0 / q); }

}  // namespace

double coeff_norm(const WaveletCoeffs& c, WaveletSpace space) {
  space.validate();
  const Grid& g = c.grid();
  const LevelTables lt = level_tables(c);
  const auto d = c.values();
  const int n12 = g.n(0) * g.n(1), n3 = g.n(2);
  if (space.kind == WaveletSpace::Kind::bppp) {
    const double p = space.exponent;
    double acc = 0.0;
    for (int comp = 0; comp < c.ncomp(); ++comp)
      for (int h = 0; h < n12; ++h)
        for (int i3 = 0; i3 < n3; ++i3) {
          const double v = std::abs(d[comp * g.size() + static_cast<std::size_t>(h) * n3 + i3]) *
                           space.level_factor(lt.j1[h], lt.j2[i3]);
          acc = q_sum(acc, v, p);
        }
    return q_root(acc, p);
  }
  const double q = space.exponent;
  const int j2_lo = *std::min_element(lt.j2.begin(), lt.j2.end());
  const int j2_hi = *std::max_element(lt.j2.begin(), lt.j2.end());
  const int j1_lo = *std::min_element(lt.j1.begin(), lt.j1.end());
  const int j1_hi = *std::max_element(lt.j1.begin(), lt.j1.end());
  std::vector<double> per_j1(j1_hi - j1_lo + 1, 0.0);
  std::vector<double> per_j2(j2_hi - j2_lo + 1);
  for (int comp = 0; comp < c.ncomp(); ++comp)
    for (int h = 0; h < n12; ++h) {
      std::fill(per_j2.begin(), per_j2.end(), 0.0);
      for (int i3 = 0; i3 < n3; ++i3)
        per_j2[lt.j2[i3] - j2_lo] += std::abs(d[comp * g.size() + static_cast<std::size_t>(h) * n3 + i3]) *
                                     space.level_factor(lt.j1[h], lt.j2[i3]);
      double inner = 0.0;
      for (double s : per_j2) inner = q_sum(inner, s, q);
      per_j1[lt.j1[h] - j1_lo] += q_root(inner, q);
    }
  double acc = 0.0;
  for (double u : per_j1) acc = q_sum(acc, u, q);
  return q_root(acc, q);
}

std::vector<std::size_t> rank_coefficients(const WaveletCoeffs& c, WaveletSpace space) {
  space.validate();
  const Grid& g = c.grid();
  const LevelTables lt = level_tables(c);
  const int n3 = g.n(2);
  const auto d = c.values();
  std::vector<double> mag(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const std::size_t r = i % g.size();
    const int h = static_cast<int>(r / n3), i3 = static_cast<int>(r % n3);
    mag[i] = std::abs(d[i]) * space.level_factor(lt.j1[h], lt.j2[i3]);
  }
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto key = [&](std::size_t i) {
    const std::size_t r = i % g.size();
    const int h = static_cast<int>(r / n3), i3 = static_cast<int>(r % n3);
    return std::array<long long, 6>{lt.j1[h], h / g.n(1), h % g.n(1), lt.j2[i3], i3,
                                    static_cast<long long>(i / g.size())};
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (mag[a] != mag[b]) return mag[a] > mag[b];
    return key(a) < key(b);
  });
  return order;
}

BestMTerm best_m_term(const WaveletCoeffs& c, std::size_t M, WaveletSpace space) {
  const auto order = rank_coefficients(c, space);
  BestMTerm out;
  const std::size_t m = std::min(M, order.size());
  out.selected.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));
  out.kept = WaveletCoeffs(c.grid(), c.ncomp(), c.levels_h(), c.levels_v());
  out.rest = c;
  for (std::size_t i : out.selected) {
    out.kept.values()[i] = c.values()[i];
    out.rest.values()[i] = 0.0;
  }
  out.qmf = hdwt_inverse(out.kept);
  out.remainder = hdwt_inverse(out.rest);
  return out;
}

namespace {

std::vector<std::string> coeff_row(const WaveletCoeffs& c, std::size_t flat) {
  const WaveletIndex idx = c.index_of(flat);
  const auto a = c.array_coords(flat);
  const double v = c.values()[flat] * WaveletSpace::b1q(1.0).level_factor(idx.j1, idx.j2);
  return {std::to_string(idx.j1), std::to_string(a[0]), std::to_string(a[1]), std::to_string(idx.j2),
          std::to_string(a[2]), format_double(v)};
}

}  // namespace

void write_coeff_csv(const std::filesystem::path& path, const WaveletCoeffs& c, int comp) {
  require(comp >= 0 && comp < c.ncomp(), ErrorKind::range, "component out of range");
  CsvWriter csv(path, {"j1", "k1a", "k1b", "j2", "k2", "value"});
  const std::size_t n = c.grid().size();
  for (std::size_t i = 0; i < n; ++i) csv.row(coeff_row(c, comp * n + i));
}

void write_selection_csv(const std::filesystem::path& path, const WaveletCoeffs& c,
                         std::span<const std::size_t> selected) {
  CsvWriter csv(path, {"j1", "k1a", "k1b", "j2", "k2", "value", "rank"});
  for (std::size_t r = 0; r < selected.size(); ++r) {
    auto row = coeff_row(c, selected[r]);
    row.push_back(std::to_string(r));
    csv.row(row);
  }
}

}  // namespace aniso
