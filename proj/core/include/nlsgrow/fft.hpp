#pragma once

#include "nlsgrow/field.hpp"

namespace nls {

/// Inverse transform: u(x) = sum_k u_k e^{i k.x} (no scaling).
PhysicalField to_physical(const SpectralField& f);

/// Forward transform: u_k = (1/N) sum_x u(x) e^{-i k.x}. Inverse of
/// to_physical; the pair round-trips to ~1e-15 relative.
SpectralField to_spectral(const PhysicalField& f);

}  // namespace nls
