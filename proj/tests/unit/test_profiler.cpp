#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "aniso/besov.hpp"
#include "aniso/corpus.hpp"
#include "aniso/error.hpp"
#include "aniso/fft.hpp"
#include "aniso/profiler.hpp"
#include "aniso/spectral_ops.hpp"
#include "aniso/wavelet.hpp"

using namespace aniso;

TEST_CASE("db4 filter is orthonormal with four vanishing moments") {
  const auto& h = db4_lowpass;
  CHECK(std::accumulate(h.begin(), h.end(), 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  for (int shift = 0; shift < 4; ++shift) {
    double dot = 0.0;
    for (int m = 0; m + 2 * shift < 8; ++m) dot += h[m] * h[m + 2 * shift];
    CHECK(dot == doctest::Approx(shift == 0 ? 1.0 : 0.0).scale(1.0).epsilon(1e-14));
  }
  for (int moment = 0; moment < 4; ++moment) {
    double acc = 0.0;
    for (int m = 0; m < 8; ++m) acc += std::pow(m, moment) * (m % 2 ? -1.0 : 1.0) * h[7 - m];
    CHECK(std::abs(acc) < 1e-10);
  }
}

TEST_CASE("hyperbolic transform: round trip, Parseval and depth limits") {
  const Grid g({16, 16, 32}, {1.0, 1.0, 2.0});
  const Field f = corpus::random_band_limited(g, 3, 2);
  const WaveletCoeffs c = hdwt_forward(f);
  CHECK(c.levels_h() == 2);
  CHECK(c.levels_v() == 3);
  CHECK(relative_l2(hdwt_inverse(c), f) < 1e-13);
  double sq = 0.0;
  for (double v : c.values()) sq += v * v;
  CHECK(std::sqrt(sq) == doctest::Approx(l2_norm(f)).epsilon(1e-12));
  CHECK(max_wavelet_depth(32) == 3);
  CHECK_THROWS_AS(hdwt_forward(f, 3, 1), Error);
  CHECK_THROWS_AS(hdwt_forward(Field(Grid({16, 32, 16}), 1)), Error);
}

TEST_CASE("coefficients equal inner products with synthesized wavelets") {
  const Grid g = Grid::cube(16);
  const Field f = corpus::random_band_limited(g, 1, 6);
  const WaveletCoeffs c = hdwt_forward(f);
  for (std::size_t flat : {std::size_t{0}, std::size_t{7}, std::size_t{1234}, std::size_t{3001}, g.size() - 1}) {
    WaveletCoeffs unit(g, 1, c.levels_h(), c.levels_v());
    unit.values()[flat] = 1.0;
    const Field psi = hdwt_inverse(unit);
    double dot = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) dot += f.values()[i] * psi.values()[i];
    // ψ is L²-normalized, so ⟨f, ψ⟩ = Σ f ψ · cell volume.
    CHECK(dot * g.cell_volume() == doctest::Approx(c.values()[flat]).scale(1e-12).epsilon(1e-10));
    CHECK(l2_norm(psi) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("flat and structured indices are inverse maps") {
  const WaveletCoeffs c(Grid({16, 16, 32}), 3, 2, 3);
  for (std::size_t flat = 0; flat < c.size(); flat += 97) {
    const WaveletIndex idx = c.index_of(flat);
    CHECK(c.flat_of(idx) == flat);
    CHECK(idx.k1a < (1 << idx.j1));
    CHECK(idx.k2 < (1 << idx.j2));
  }
}

TEST_CASE("coefficient norms follow the nested sums") {
  const Grid g = Grid::cube(16);
  WaveletCoeffs c(g, 1, 2, 2);
  const WaveletIndex a{0, 3, 1, 0, 0, 3, 1, 0}, b{0, 3, 1, 1, 0, 2, 1, 0}, d{0, 2, 2, 0, 0, 3, 1, 1};
  c.values()[c.flat_of(a)] = 1.0;
  c.values()[c.flat_of(b)] = -2.0;
  c.values()[c.flat_of(d)] = 3.0;
  const auto x = [](double v, int j2) { return std::abs(v) * std::exp2(0.5 * j2); };
  // q = 2: λ1 = (3,(0,0)) holds a alone; λ1 = (3,(1,0)) holds b; λ1 = (2,(0,0)) holds d.
  const double j1_3 = x(1.0, 3) + x(-2.0, 2);
  const double j1_2 = x(3.0, 3);
  CHECK(coeff_norm(c, WaveletSpace::b1q(2.0)) == doctest::Approx(std::sqrt(j1_3 * j1_3 + j1_2 * j1_2)));
  CHECK(coeff_norm(c, WaveletSpace::b1q(1.0)) == doctest::Approx(x(1, 3) + x(-2, 2) + x(3, 3)));
  CHECK(coeff_norm(c, WaveletSpace::bppp(3.0)) ==
        doctest::Approx(std::cbrt(std::pow(x(1, 3), 3) + std::pow(x(-2, 2), 3) + std::pow(x(3, 3), 3))));
}

TEST_CASE("best M-term selection on five coefficients") {
  const Grid g = Grid::cube(16);
  WaveletCoeffs c(g, 1, 2, 2);
  const WaveletIndex idx[5] = {{0, 3, 1, 0, 0, 3, 1, 0}, {0, 3, 2, 1, 1, 3, 1, 2}, {0, 2, 3, 1, 0, 2, 1, 1},
                               {0, 3, 1, 5, 2, 2, 1, 3}, {0, 2, 1, 2, 3, 3, 1, 4}};
  // 𝓑¹-normalized magnitudes 5, 1, 4, 2, 3 (with a tie-free layout).
  const double dx[5] = {5.0, -1.0, 4.0, 2.0, -3.0};
  for (int i = 0; i < 5; ++i) c.values()[c.flat_of(idx[i])] = dx[i] / std::exp2(0.5 * idx[i].j2);
  const BestMTerm best = best_m_term(c, 3, WaveletSpace::b1q(1.0));
  REQUIRE(best.selected.size() == 3);
  CHECK(best.selected[0] == c.flat_of(idx[0]));
  CHECK(best.selected[1] == c.flat_of(idx[2]));
  CHECK(best.selected[2] == c.flat_of(idx[4]));
  CHECK(coeff_norm(best.rest, WaveletSpace::b1q(1.0)) == doctest::Approx(3.0));
  CHECK(coeff_norm(best.rest, WaveletSpace::bppp(3.0)) == doctest::Approx(std::cbrt(1.0 + 8.0)));
  CHECK(relative_l2(best.qmf + best.remainder, hdwt_inverse(c)) < 1e-13);
}

TEST_CASE("ranking breaks ties by storage coordinates") {
  const Grid g = Grid::cube(16);
  WaveletCoeffs c(g, 1, 2, 2);
  const WaveletIndex first{0, 2, 1, 0, 0, 3, 1, 0}, second{0, 3, 1, 0, 0, 3, 1, 0};
  c.values()[c.flat_of(second)] = 1.0;
  c.values()[c.flat_of(first)] = 1.0;
  const auto order = rank_coefficients(c, WaveletSpace::b1q(1.0));
  CHECK(order[0] == c.flat_of(first));
  CHECK(order[1] == c.flat_of(second));
  CHECK(rank_coefficients(c, WaveletSpace::b1q(1.0)) == order);
}

TEST_CASE("coefficient CSV columns") {
  const auto path = std::filesystem::temp_directory_path() / "aniso_coeffs.csv";
  const WaveletCoeffs c = hdwt_forward(corpus::random_band_limited(Grid::cube(16), 1, 1));
  write_coeff_csv(path, c);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "j1,k1a,k1b,j2,k2,value");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == c.size());
}

TEST_CASE("profiles of the core-orthogonal two-atom sequence") {
  const corpus::AtomSequence seq = corpus::two_atom_core_sequence();
  const DecompositionReport r = extract_profiles(seq.input, ProfilerOptions{});
  REQUIRE(r.atoms.size() == 2);
  CHECK(r.undetermined_components == 0);
  for (const auto& a : r.atoms) {
    CHECK(a.j1.slope == 0.0);
    CHECK(a.j2.slope == 0.0);
  }
  CHECK(r.pairwise[0][1] == Orthogonality::core);
  CHECK(r.pairwise[1][0] == Orthogonality::core);
  const BesovSpec b11{1, 1, 1, 1};
  for (const auto& atom : seq.atoms) {
    const Field truth = corpus::atom_field(seq.input.fields[0].grid(), 1, atom, seq.n_ref, seq.n_ref);
    double best = 1e300;
    for (const auto& a : r.atoms) best = std::min(best, besov_norm(a.profile - truth, b11) / besov_norm(truth, b11));
    CHECK(best < 0.05);
  }
  double data_sup = 0.0;
  for (const auto& f : seq.input.fields) data_sup = std::max(data_sup, besov_norm(f, BesovSpec::critical(3.0, 3.0)));
  for (const auto& rem : r.remainder) {
    CHECK(rem[2] > 0.0);
    CHECK(rem[2] < 0.1 * data_sup);
  }
}

TEST_CASE("profiles of the scale-orthogonal two-atom sequence") {
  const corpus::AtomSequence seq = corpus::two_atom_scale_sequence();
  const DecompositionReport r = extract_profiles(seq.input, ProfilerOptions{});
  REQUIRE(r.atoms.size() == 2);
  const bool a_first = r.atoms[0].j1.slope == 1.0;
  const auto& h = r.atoms[a_first ? 0 : 1];
  const auto& v = r.atoms[a_first ? 1 : 0];
  CHECK(h.j1.slope == 1.0);
  CHECK(h.j2.slope == 0.0);
  CHECK(v.j1.slope == 0.0);
  CHECK(v.j2.slope == 1.0);
  CHECK(r.pairwise[0][1] == Orthogonality::scale);
  CHECK(triplets_orthogonal(induced_triplet(r.atoms[0], r), induced_triplet(r.atoms[1], r)) == Orthogonality::scale);
}

TEST_CASE("a constant sequence yields one atom") {
  const Grid g = Grid::cube(32);
  const auto atom = corpus::geometric_atom(0, {3, 3}, {1, 2, 3}, 20, 1.0, 0.8);
  const Field f = corpus::atom_field(g, 1, atom, 0, 0);
  SequenceInput in{{0, 1, 2, 3}, {f, f, f, f}, 20};
  const DecompositionReport r = extract_profiles(in, ProfilerOptions{});
  REQUIRE(r.atoms.size() == 1);
  CHECK(relative_l2(r.atoms[0].profile, f) < 1e-12);
  CHECK(r.remainder[0][1] < 1e-12 * r.remainder[0][0]);
}

TEST_CASE("profiler input validation") {
  SequenceInput mixed{{0, 1}, {Field(Grid::cube(16), 1), Field(Grid::cube(32), 1)}, 8};
  try {
    extract_profiles(mixed, ProfilerOptions{});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::structural);
  }
  ProfilerOptions bad;
  bad.p = 1.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("stability sum is finite and reproducible") {
  const corpus::AtomSequence seq = corpus::two_atom_core_sequence();
  const StabilitySum a = stability_sum(extract_profiles(seq.input, ProfilerOptions{}), seq.input);
  const StabilitySum b = stability_sum(extract_profiles(corpus::two_atom_core_sequence().input, ProfilerOptions{}), seq.input);
  CHECK(std::isfinite(a.ratio));
  CHECK(a.ratio > 0.0);
  CHECK(a.ratio == b.ratio);
}

namespace {

/// u = (0, 0, f(x_h)) with f a horizontally contracting atom: divergence-free, ∂3u = 0.
corpus::AtomSequence vertical_column_sequence() {
  corpus::WaveletAtom a;
  a.comp = 2;
  a.j1 = 2;
  a.j2 = 2;
  a.slope1 = 1;
  double mag = 1.0;
  for (int i = 0; i < 6; ++i, mag *= 0.8)
    for (int k2 = 0; k2 < 4; ++k2) a.terms.push_back({1 + i % 3, 0, 0, 0, i / 3, 0, k2, mag});
  return corpus::atom_sequence(Grid::cube(32), 3, {a}, {0, 1, 2}, 24);
}

}  // namespace

TEST_CASE("divergence diagnostics") {
  SUBCASE("contracting horizontal scale with bounded vertical derivative passes") {
    const auto seq = vertical_column_sequence();
    const DecompositionReport r = extract_profiles(seq.input, ProfilerOptions{});
    const DivergenceDiagnostics d = divergence_diagnostics(seq.input, r, 1.0);
    REQUIRE_FALSE(d.atoms.empty());
    CHECK(d.d3_bounded);
    for (const auto& a : d.atoms) {
      CHECK(a.scale_ratio_slope < 0.0);
      CHECK(a.vertical_scale == Verdict::pass);
    }
  }
  SUBCASE("a two-dimensional family passes the horizontal flag") {
    const Grid g = Grid::cube(16);
    const SpectralField psi = to_spectral(corpus::anisotropic_gaussian(g, 0.12, 0.12));
    const SpectralField d1 = derivative(psi, 0), d2 = derivative(psi, 1);
    SpectralField U(g, 3);
    for (std::size_t i = 0; i < g.size(); ++i) {
      U.component(0)[i] = -d2.values()[i];
      U.component(1)[i] = d1.values()[i];
    }
    const Field u = to_physical(U);
    SequenceInput in{{0, 1, 2}, {u, u, u}, 3 * g.size()};
    const DecompositionReport r = extract_profiles(in, ProfilerOptions{});
    const DivergenceDiagnostics d = divergence_diagnostics(in, r, 1e6);
    REQUIRE(d.atoms.size() == 1);
    CHECK(d.atoms[0].horizontal == Verdict::pass);
    // No scale trend: the vertical-scale flag makes no claim.
    CHECK(d.atoms[0].vertical_scale == Verdict::hypothesis_unmet);
  }
  SUBCASE("a violated vertical bound reports an unmet hypothesis") {
    const auto seq = corpus::two_atom_core_sequence();
    SequenceInput in = seq.input;
    const Grid& g = in.fields[0].grid();
    for (auto& f : in.fields) {
      Field v(g, 3);
      const Field w = corpus::taylor_green(g, 1.0);
      v = w;
      f = v;
    }
    const DecompositionReport r = extract_profiles(in, ProfilerOptions{});
    const DivergenceDiagnostics d = divergence_diagnostics(in, r, 1e-3);
    CHECK_FALSE(d.d3_bounded);
    for (const auto& a : d.atoms) CHECK(a.vertical_scale == Verdict::hypothesis_unmet);
  }
}
