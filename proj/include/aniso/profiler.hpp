#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "aniso/besov.hpp"
#include "aniso/field.hpp"
#include "aniso/scaling.hpp"
#include "aniso/wavelet.hpp"

namespace aniso {

/// A finite window of a sequence u_n sharing one grid.
struct SequenceInput {
  std::vector<int> n_window;
  std::vector<Field> fields;
  std::size_t budget = 64;  ///< M, coefficients kept per n

  void validate() const;
};

struct ProfilerOptions {
  double q = 1.0;               ///< 𝓑¹_q used for selection and profile norms
  double p = 3.0;               ///< remainder norm B^{−1+2/p,1/p}_{p,p}
  int max_profiles = 2;         ///< L_max
  double tol_d_fraction = 0.02; ///< coefficient spread tolerance, relative to max |d|

  void validate() const;
};

/// n ↦ intercept + slope·(n − n_ref); `affine` is false when the samples do not fit one line.
struct IndexMap {
  double slope = 0.0;
  double intercept = 0.0;
  bool affine = true;
};

struct ProfileAtom {
  std::vector<std::size_t> members;               ///< ranks of the components in this group
  std::vector<double> coeffs;                     ///< limit coefficient d_m per member, 𝓑¹-normalized
  std::vector<std::vector<WaveletIndex>> tracks;  ///< λ(m, n) per member and window entry
  IndexMap j1, j2, k1a, k1b, k2;        ///< fitted over the whole window
  Field profile;                        ///< Σ d_m ψ_{λ(m, n_ref)}
  double norm = 0.0;                    ///< 𝓑¹_q
  bool undetermined = false;
  std::string note;
};

struct DecompositionReport {
  Grid grid;
  int levels_h = 0;
  int levels_v = 0;
  std::vector<int> n_window;
  std::vector<ProfileAtom> atoms;
  std::vector<std::vector<double>> remainder;  ///< [window entry][L], L = 0..max_profiles
  std::vector<std::vector<Orthogonality>> pairwise;
  std::size_t undetermined_components = 0;
  std::size_t discarded_components = 0;
  double p = 3.0;
  double q = 1.0;
};

/// Rank-matched best-M-term components, grouped by index offsets that stay constant on the
/// tail half of the window, assembled into profiles at the first window entry.
DecompositionReport extract_profiles(const SequenceInput& input, const ProfilerOptions& opts);

/// Verdict from the index tracks on the tail of the window: a varying scale difference is
/// scale-orthogonal; otherwise a varying rescaled position difference is core-orthogonal.
Orthogonality classify_pair(const ProfileAtom& a, const ProfileAtom& b);

/// Scale and core sequences of an atom, in the triplet form used by triplets_orthogonal.
ScaleCoreTriplet induced_triplet(const ProfileAtom& a, const DecompositionReport& report);

/// Field of the atom at window entry `entry` (the profile transported to λ(m, n)).
Field atom_at(const ProfileAtom& a, const DecompositionReport& report, std::size_t entry);

struct StabilitySum {
  double sum = 0.0;
  double data_sup = 0.0;
  double ratio = 0.0;
};

StabilitySum stability_sum(const DecompositionReport& report, const SequenceInput& input);

enum class Verdict { pass, fail, hypothesis_unmet, not_applicable };
const char* to_string(Verdict v);

struct AtomDivergenceFlags {
  double scale_ratio_slope = 0.0;  ///< slope in n of j2 − j1 (log2 of ε_n/γ_n)
  Verdict vertical_scale = Verdict::not_applicable;
  double horizontal_divergence = 0.0;  ///< ‖div_h φ^h‖ / ‖φ‖ in L²
  Verdict horizontal = Verdict::not_applicable;
};

struct DivergenceDiagnostics {
  double d3_sup = 0.0;  ///< sup_n ‖∂3 u_n‖_{B^{0,1}_{1,q}}
  bool d3_bounded = false;
  std::vector<AtomDivergenceFlags> atoms;
};

/// Needs a divergence-free 3-component sequence. The vertical-scale flag passes when ∂3u_n
/// stays below `d3_bound` and ε_n/γ_n decays; it reports an unmet hypothesis when the bound
/// fails or the ratio has no trend. The horizontal flag passes when div_h φ^h < 1e-6·‖φ‖.
DivergenceDiagnostics divergence_diagnostics(const SequenceInput& input, const DecompositionReport& report,
                                             double d3_bound, double q = 1.0);

/// One stanza per atom: slopes, core maps, norm, verdicts.
void write_report(const std::filesystem::path& path, const DecompositionReport& report);
/// CSV `n,L,norm`.
void write_remainder_csv(const std::filesystem::path& path, const DecompositionReport& report);

}  // namespace aniso
