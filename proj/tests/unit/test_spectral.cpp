#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "aniso/blocks.hpp"
#include "aniso/corpus.hpp"
#include "aniso/cutoff.hpp"
#include "aniso/error.hpp"
#include "aniso/fft.hpp"
#include "aniso/io.hpp"
#include "aniso/reference.hpp"
#include "aniso/spectral_ops.hpp"

using namespace aniso;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

/// Lattice wavenumber with the Nyquist entry zeroed, as used by odd multipliers.
double kappa(const Grid& g, int axis, int i) { return g.is_nyquist(axis, i) ? 0.0 : g.wavenumbers(axis)[i]; }

}  // namespace

TEST_CASE("cutoff is a smooth monotone step with the reflection identity") {
  CHECK(chi_hat(0.0) == 1.0);
  CHECK(chi_hat(1.0) == 1.0);
  CHECK(chi_hat(2.0) == 0.0);
  CHECK(chi_hat(-0.5) == 1.0);
  double prev = 1.0;
  for (double t = 1.0; t <= 2.0; t += 1.0 / 64) {
    CHECK(chi_hat(t) <= prev + 1e-15);
    prev = chi_hat(t);
    CHECK(chi_hat(t) + chi_hat(3.0 - t) == doctest::Approx(1.0).epsilon(1e-14));
  }
  for (double t = 1.0; t < 64.0; t *= 1.37) {
    double sum = 0.0;
    for (int k = -2; k < 10; ++k) sum += psi_hat(std::ldexp(t, -k));
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(psi_hat(1.0) == 0.0);
  CHECK(psi_hat(4.0) == 0.0);
}

TEST_CASE("grid shell ranges on the unit 32-cube") {
  const Grid g = Grid::cube(32);
  CHECK(g.shells_h().lo == 1);
  CHECK(g.shells_h().hi == 4);
  CHECK(g.shells_v().lo == 1);
  CHECK(g.shells_v().hi == 4);
  CHECK(g.shells_h().covered_low() <= two_pi);
}

TEST_CASE("forward transform matches a direct DFT on 8^3") {
  const Grid g({8, 8, 8}, {1.0, 2.0, 0.5});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  Field f(g, 1);
  for (double& v : f.values()) v = u(rng);
  const SpectralField F = to_spectral(f);
  double worst = 0.0;
  for (int m1 = 0; m1 < 8; ++m1)
    for (int m2 = 0; m2 < 8; ++m2)
      for (int m3 = 0; m3 < 8; ++m3) {
        cplx acc = 0.0;
        for (int i1 = 0; i1 < 8; ++i1)
          for (int i2 = 0; i2 < 8; ++i2)
            for (int i3 = 0; i3 < 8; ++i3)
              acc += f.at(0, i1, i2, i3) * std::polar(1.0, -two_pi * (m1 * i1 + m2 * i2 + m3 * i3) / 8.0);
        worst = std::max(worst, std::abs(acc / 512.0 - F.at(0, m1, m2, m3)));
      }
  CHECK(worst < 1e-14);
  CHECK(relative_l2(to_physical(F), f) < 1e-14);
  CHECK(F.hermitian_defect() < 1e-14);
}

TEST_CASE("Parseval with box-volume normalization") {
  const Grid g({16, 16, 8}, {2.0, 1.0, 0.5});
  const Field f = corpus::random_band_limited(g, 3, 5);
  CHECK(l2_norm(f) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(l2_norm(to_spectral(f)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Littlewood-Paley blocks sum back to band-limited data") {
  const Grid g = Grid::cube(16);
  for (std::uint64_t seed : {1u, 2u}) {
    const SpectralField F = to_spectral(corpus::random_band_limited(g, 1, seed));
    SpectralField sum(g, 1);
    for (int k = g.shells_h().lo; k <= g.shells_h().hi; ++k)
      for (int j = g.shells_v().lo; j <= g.shells_v().hi; ++j) sum += lp_block(F, k, j);
    CHECK(relative_l2(sum, F) < 1e-12);
  }
  CHECK_THROWS_AS(lp_block(SpectralField(g, 1), 99, 1), Error);
}

TEST_CASE("block norms agree with the serial reference") {
  const Grid g({16, 16, 32}, {1.0, 1.0, 2.0});
  const SpectralField F = to_spectral(corpus::random_band_limited(g, 3, 9));
  for (double p : {1.0, 2.0, 3.0, p_infinity}) {
    const BlockTable fast = block_norms(F, p);
    const BlockTable ref = reference::block_norms(F, p);
    for (std::size_t i = 0; i < fast.values().size(); ++i)
      CHECK(fast.values()[i] == doctest::Approx(ref.values()[i]).epsilon(1e-10).scale(1e-14));
  }
}

TEST_CASE("Leray projection matches the per-mode formula and is idempotent") {
  const Grid g = Grid::cube(16);
  const SpectralField U = to_spectral(corpus::random_band_limited(g, 3, 4));
  const SpectralField P = leray_project(U);
  double worst = 0.0;
  for (int i1 = 0; i1 < 16; ++i1)
    for (int i2 = 0; i2 < 16; ++i2)
      for (int i3 = 0; i3 < 16; ++i3) {
        const double k[3] = {kappa(g, 0, i1), kappa(g, 1, i2), kappa(g, 2, i3)};
        const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        cplx dot = 0.0;
        for (int c = 0; c < 3; ++c) dot += k[c] * U.at(c, i1, i2, i3);
        for (int c = 0; c < 3; ++c) {
          const cplx expect = k2 > 0 ? U.at(c, i1, i2, i3) - k[c] * dot / k2 : U.at(c, i1, i2, i3);
          worst = std::max(worst, std::abs(expect - P.at(c, i1, i2, i3)));
        }
      }
  CHECK(worst < 1e-14);
  CHECK(divergence_defect(P) <= 1e-10);
  CHECK(relative_l2(leray_project(P), P) < 1e-12);
}

TEST_CASE("Leray projection removes axis-aligned longitudinal modes exactly") {
  const Grid g = Grid::cube(16);
  SpectralField U(g, 3);
  U.at(2, 0, 0, 6) = cplx(0.0, -5.93e-67);
  U.at(2, 0, 0, 10) = cplx(0.0, 5.93e-67);
  U.at(0, 3, 0, 0) = 1.0;
  U.at(0, 13, 0, 0) = 1.0;
  U.at(1, 0, 0, 6) = 0.25;
  U.at(1, 0, 0, 10) = 0.25;
  const SpectralField P = leray_project(U);
  CHECK(P.at(2, 0, 0, 6) == cplx(0.0));
  CHECK(P.at(0, 3, 0, 0) == cplx(0.0));
  CHECK(P.at(1, 0, 0, 6) == cplx(0.25));
}

TEST_CASE("horizontal Helmholtz split against the per-mode potential") {
  const Grid g = Grid::cube(16);
  const SpectralField U = leray_project(to_spectral(corpus::random_band_limited(g, 3, 8)));
  const HorizontalSplit s = horizontal_helmholtz_split(U);
  double worst = 0.0;
  for (int i1 = 0; i1 < 16; ++i1)
    for (int i2 = 0; i2 < 16; ++i2)
      for (int i3 = 0; i3 < 16; ++i3) {
        const double k1 = kappa(g, 0, i1), k2 = kappa(g, 1, i2);
        const double kh2 = k1 * k1 + k2 * k2;
        if (kh2 == 0.0) continue;
        // (−∂2C, ∂1C) carries the horizontal curl, so Ĉ = −i(ξ1û² − ξ2û¹)/|ξ_h|².
        const cplx expect = cplx(0, -1) * (k1 * U.at(1, i1, i2, i3) - k2 * U.at(0, i1, i2, i3)) / kh2;
        worst = std::max(worst, std::abs(expect - s.potential.at(0, i1, i2, i3)));
      }
  CHECK(worst < 1e-14);
  SpectralField sum = s.stream;
  sum += s.compressible;
  for (int c = 0; c < 2; ++c)
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(sum.component(c)[i] - U.component(c)[i]) < 1e-12);
  const SpectralField dh = divergence(s.stream);
  CHECK(l2_norm(dh) < 1e-12 * l2_norm(U));

  // Purely two-dimensional divergence-free data has no compressible part.
  Field psi(g, 1);
  for (int i1 = 0; i1 < 16; ++i1)
    for (int i2 = 0; i2 < 16; ++i2)
      for (int i3 = 0; i3 < 16; ++i3) psi.at(0, i1, i2, i3) = std::sin(two_pi * i1 / 16) * std::cos(two_pi * 2 * i2 / 16);
  const SpectralField Psi = to_spectral(psi);
  SpectralField V(g, 3);
  const SpectralField d1 = derivative(Psi, 0), d2 = derivative(Psi, 1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    V.component(0)[i] = -d2.values()[i];
    V.component(1)[i] = d1.values()[i];
  }
  CHECK(l2_norm(horizontal_helmholtz_split(V).compressible) < 1e-14);
  CHECK(relative_l2(leray_project(V), V) < 1e-12);
}

TEST_CASE("spectral derivatives converge to centered differences at second order") {
  double prev_err = 0.0;
  for (int n : {16, 32, 64}) {
    const Grid g = Grid::cube(n);
    Field f(g, 1);
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2)
        for (int i3 = 0; i3 < n; ++i3)
          f.at(0, i1, i2, i3) = std::sin(two_pi * i1 / n + 0.3) * std::cos(two_pi * 2 * i2 / n) * std::sin(two_pi * 3 * i3 / n);
    const SpectralField F = to_spectral(f);
    double err = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
      const Field d = to_physical(derivative(F, axis));
      const double h = g.spacing(axis);
      for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
          for (int i3 = 0; i3 < n; ++i3) {
            int ip[3] = {i1, i2, i3}, im[3] = {i1, i2, i3};
            ip[axis] = (ip[axis] + 1) % n;
            im[axis] = (im[axis] + n - 1) % n;
            const double fd = (f.at(0, ip[0], ip[1], ip[2]) - f.at(0, im[0], im[1], im[2])) / (2 * h);
            err = std::max(err, std::abs(fd - d.at(0, i1, i2, i3)));
          }
    }
    if (prev_err > 0.0) CHECK(prev_err / err == doctest::Approx(4.0).epsilon(0.1));
    prev_err = err;
  }
}

TEST_CASE("gradient, divergence, curl and Laplacian identities") {
  const Grid g = Grid::cube(16);
  const SpectralField phi = to_spectral(corpus::random_band_limited(g, 1, 12));
  CHECK(relative_l2(divergence(gradient(phi)), laplacian(phi)) < 1e-12);
  CHECK(l2_norm(curl(gradient(phi))) < 1e-12 * l2_norm(gradient(phi)));
  const SpectralField U = to_spectral(corpus::random_band_limited(g, 3, 13));
  CHECK(l2_norm(divergence(curl(U))) < 1e-12 * l2_norm(curl(U)));
}

TEST_CASE("heat flow multiplies each mode by exp(-t|xi|^2)") {
  const Grid g = Grid::cube(8);
  SpectralField F(g, 1);
  F.at(0, 1, 0, 0) = 0.5;
  F.at(0, 7, 0, 0) = 0.5;
  const SpectralField H = heat_flow(F, 0.01);
  CHECK(H.at(0, 1, 0, 0).real() == doctest::Approx(0.5 * std::exp(-0.01 * two_pi * two_pi)));
  CHECK_THROWS_AS(heat_flow(F, -1.0), Error);
}

TEST_CASE("dealiasing keeps |m| <= (N-1)/3") {
  CHECK(dealias_cutoff(16) == 5);
  CHECK(dealias_cutoff(32) == 10);
  const Grid g = Grid::cube(16);
  SpectralField F = to_spectral(corpus::random_band_limited(g, 1, 2));
  CHECK_FALSE(is_dealiased(F));
  dealias_in_place(F);
  CHECK(is_dealiased(F));
}

TEST_CASE("refinement interpolates exactly at the coarse samples") {
  const Grid g({8, 8, 16}, {1.0, 1.0, 1.0});
  const Field f = corpus::random_band_limited(g, 1, 21);
  const Field r = to_physical(refine(to_spectral(f), {2, 2, 4}));
  double worst = 0.0;
  for (int i1 = 0; i1 < 8; ++i1)
    for (int i2 = 0; i2 < 8; ++i2)
      for (int i3 = 0; i3 < 16; ++i3) worst = std::max(worst, std::abs(r.at(0, 2 * i1, 2 * i2, 4 * i3) - f.at(0, i1, i2, i3)));
  CHECK(worst < 1e-13);
  CHECK(l2_norm(r) == doctest::Approx(l2_norm(f)).epsilon(1e-12));
}

TEST_CASE("field files round-trip and corrupt headers report the byte offset") {
  const auto dir = std::filesystem::temp_directory_path() / "aniso_io_test";
  std::filesystem::create_directories(dir);
  const Field f = corpus::random_band_limited(Grid({8, 8, 16}, {1.0, 0.5, 2.0}), 3, 17);
  write_field(dir / "f.afld", f);
  const Field back = read_field(dir / "f.afld");
  CHECK(back.grid() == f.grid());
  CHECK(std::equal(back.values().begin(), back.values().end(), f.values().begin()));

  std::string bytes = "AFLD1 8 x 16 1 0.5 2 3\n";
  try {
    parse_field(bytes, "crafted");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io);
    CHECK(std::string(e.what()).find("byte offset 8") != std::string::npos);
  }
  CHECK_THROWS_AS(read_field(dir / "missing.afld"), Error);
  CHECK_THROWS_AS(parse_field("AFLD1 2 2 2 1 1 1 1\n" + std::string(16, '\0')), Error);
}

TEST_CASE("block CSV export has one row per block") {
  const auto path = std::filesystem::temp_directory_path() / "aniso_blocks.csv";
  const Grid g = Grid::cube(16);
  write_block_csv(path, block_norms(SpectralField(g, 1), 2.0), 2.0);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "k,j,energy_Lp,p");
  int rows = 0;
  for (std::string line; std::getline(in, line);) {
    ++rows;
    CHECK(line.find(",0,2") != std::string::npos);
  }
  CHECK(rows == g.shells_h().count() * g.shells_v().count());
}
