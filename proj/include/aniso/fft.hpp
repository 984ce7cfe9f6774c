#pragma once

#include <span>

#include "aniso/field.hpp"

namespace aniso {

/// Forward transform to Fourier-series coefficients (scaled by 1/N).
SpectralField to_spectral(const Field& f);
/// Inverse transform; the imaginary residue of non-Hermitian input is discarded.
Field to_physical(const SpectralField& F);

namespace fft {

/// Single-component transforms on raw buffers of grid.size() entries. Safe to call
/// concurrently: plans are created under a lock and executed with the new-array interface.
void forward(const Grid& grid, std::span<const double> in, std::span<cplx> out);
void inverse(const Grid& grid, std::span<const cplx> in, std::span<double> out);
void inverse_complex(const Grid& grid, std::span<const cplx> in, std::span<cplx> out);

}  // namespace fft
}  // namespace aniso
