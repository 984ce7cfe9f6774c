#include "aniso/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "aniso/error.hpp"

namespace aniso {
namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

ShellRange make_range(double lowest_frequency, double nyquist) {
  ShellRange r;
  r.lo = static_cast<int>(std::floor(std::log2(lowest_frequency))) - 1;
  r.hi = static_cast<int>(std::ceil(std::log2(nyquist))) - 2;
  while (std::ldexp(1.0, r.hi + 2) >= nyquist) --r.hi;
  return r;
}

}  // namespace

double ShellRange::covered_low() const { return std::ldexp(1.0, lo + 1); }
double ShellRange::covered_high() const { return std::ldexp(1.0, hi + 1); }

std::string ShellRange::describe() const {
  std::ostringstream os;
  os << "[" << lo << ", " << hi << "]";
  return os.str();
}

Grid::Grid(std::array<int, 3> dims, std::array<double, 3> lengths) : dims_(dims), lengths_(lengths) {
  for (int a = 0; a < 3; ++a) {
    require(is_power_of_two(dims_[a]) && dims_[a] >= 8, ErrorKind::precondition,
            "grid dimension " + std::to_string(dims_[a]) + " must be a power of two >= 8");
    require(lengths_[a] > 0.0 && std::isfinite(lengths_[a]), ErrorKind::precondition,
            "box lengths must be positive and finite");
  }
  size_ = static_cast<std::size_t>(dims_[0]) * dims_[1] * dims_[2];
  for (int a = 0; a < 3; ++a) {
    auto& w = wavenumbers_[a];
    w.resize(dims_[a]);
    for (int i = 0; i < dims_[a]; ++i) w[i] = 2.0 * std::numbers::pi * mode(a, i) / lengths_[a];
  }
  const double two_pi = 2.0 * std::numbers::pi;
  shells_h_ = make_range(two_pi / std::max(lengths_[0], lengths_[1]), nyquist_h());
  shells_v_ = make_range(two_pi / lengths_[2], nyquist_v());
  shells_iso_ = make_range(two_pi / std::max({lengths_[0], lengths_[1], lengths_[2]}), nyquist_iso());
  require(shells_h_.count() > 0 && shells_v_.count() > 0 && shells_iso_.count() > 0,
          ErrorKind::precondition, "grid " + describe() + " resolves no complete dyadic shell");
}

double Grid::nyquist_h() const {
  return std::numbers::pi * std::min(dims_[0] / lengths_[0], dims_[1] / lengths_[1]);
}
double Grid::nyquist_v() const { return std::numbers::pi * dims_[2] / lengths_[2]; }
double Grid::nyquist_iso() const { return std::max(nyquist_h(), nyquist_v()); }

std::string Grid::describe() const {
  std::ostringstream os;
  os << dims_[0] << "x" << dims_[1] << "x" << dims_[2] << " box " << lengths_[0] << "x" << lengths_[1]
     << "x" << lengths_[2];
  return os.str();
}

void require_same_grid(const Grid& a, const Grid& b, const char* context) {
  require(a == b, ErrorKind::structural,
          std::string(context) + ": grid mismatch (" + a.describe() + " vs " + b.describe() + ")");
}

}  // namespace aniso
