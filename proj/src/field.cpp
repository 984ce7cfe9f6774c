#include "aniso/field.hpp"

#include <algorithm>
#include <cmath>

#include "aniso/error.hpp"

namespace aniso {
namespace {

void require_ncomp(int ncomp) {
  require(ncomp == 1 || ncomp == 3, ErrorKind::structural,
          "fields carry 1 or 3 components, got " + std::to_string(ncomp));
}

template <class A, class B>
void require_compatible(const A& a, const B& b, const char* op) {
  require_same_grid(a.grid(), b.grid(), op);
  require(a.ncomp() == b.ncomp(), ErrorKind::structural, std::string(op) + ": component count mismatch");
}

}  // namespace

Field::Field(const Grid& grid, int ncomp) : grid_(grid), ncomp_(ncomp) {
  require_ncomp(ncomp);
  data_.assign(grid.size() * ncomp, 0.0);
}

std::span<double> Field::component(int c) { return {data_.data() + c * grid_.size(), grid_.size()}; }
std::span<const double> Field::component(int c) const {
  return {data_.data() + c * grid_.size(), grid_.size()};
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool Field::mean_free(double rel_tol) const {
  const double scale = max_abs();
  for (int c = 0; c < ncomp_; ++c) {
    double sum = 0.0;
    for (double v : component(c)) sum += v;
    if (std::abs(sum / grid_.size()) > rel_tol * scale) return false;
  }
  return true;
}

void Field::remove_mean() {
  for (int c = 0; c < ncomp_; ++c) {
    auto comp = component(c);
    double sum = 0.0;
    for (double v : comp) sum += v;
    const double mean = sum / static_cast<double>(comp.size());
    for (double& v : comp) v -= mean;
  }
}

Field& Field::operator+=(const Field& o) {
  require_compatible(*this, o, "field addition");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  require_compatible(*this, o, "field subtraction");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Field& Field::operator*=(double a) {
  for (double& v : data_) v *= a;
  return *this;
}

Field& Field::axpy(double a, const Field& o) {
  require_compatible(*this, o, "field axpy");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += a * o.data_[i];
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

SpectralField::SpectralField(const Grid& grid, int ncomp) : grid_(grid), ncomp_(ncomp) {
  require_ncomp(ncomp);
  data_.assign(grid.size() * ncomp, cplx(0.0, 0.0));
}

std::span<cplx> SpectralField::component(int c) { return {data_.data() + c * grid_.size(), grid_.size()}; }
std::span<const cplx> SpectralField::component(int c) const {
  return {data_.data() + c * grid_.size(), grid_.size()};
}

double SpectralField::energy() const {
  double e = 0.0;
  for (const cplx& v : data_) e += std::norm(v);
  return e;
}

double SpectralField::hermitian_defect() const {
  const auto& d = grid_.dims();
  double biggest = 0.0, defect = 0.0;
  for (int c = 0; c < ncomp_; ++c)
    for (int i1 = 0; i1 < d[0]; ++i1)
      for (int i2 = 0; i2 < d[1]; ++i2)
        for (int i3 = 0; i3 < d[2]; ++i3) {
          const cplx a = at(c, i1, i2, i3);
          const cplx b = at(c, (d[0] - i1) % d[0], (d[1] - i2) % d[1], (d[2] - i3) % d[2]);
          biggest = std::max(biggest, std::abs(a));
          defect = std::max(defect, std::abs(a - std::conj(b)));
        }
  return biggest > 0.0 ? defect / biggest : 0.0;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_compatible(*this, o, "spectral addition");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_compatible(*this, o, "spectral subtraction");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  for (cplx& v : data_) v *= a;
  return *this;
}

SpectralField& SpectralField::axpy(double a, const SpectralField& o) {
  require_compatible(*this, o, "spectral axpy");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += a * o.data_[i];
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

double l2_norm(const Field& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return std::sqrt(s * f.grid().cell_volume());
}

double l2_norm(const SpectralField& f) { return std::sqrt(f.energy() * f.grid().volume()); }

double relative_l2(const Field& a, const Field& b) {
  const double nb = l2_norm(b);
  const double d = l2_norm(a - b);
  return nb > 0.0 ? d / nb : d;
}

double relative_l2(const SpectralField& a, const SpectralField& b) {
  const double nb = l2_norm(b);
  const double d = l2_norm(a - b);
  return nb > 0.0 ? d / nb : d;
}

}  // namespace aniso
