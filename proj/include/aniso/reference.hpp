#pragma once

#include "aniso/blocks.hpp"
#include "aniso/field.hpp"

/// Serial reference kernels. They follow the defining formulas with plain loops and no
/// threading, and exist so the parallel kernels can be tested and benchmarked against them.
namespace aniso::reference {

double lp_norm(const Field& f, double p);

/// Block norms by explicit multiplier application, synthesis and quadrature, one block at a time.
BlockTable block_norms(const SpectralField& F, double p);

/// −P div(u ⊗ u) evaluated mode by mode from physical products, with two-thirds truncation.
SpectralField advection(const SpectralField& u);

}  // namespace aniso::reference
