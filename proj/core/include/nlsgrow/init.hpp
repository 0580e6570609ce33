#pragma once

#include <cstdint>

#include "nlsgrow/field.hpp"

namespace nls {

/// Initial-condition generators. All are deterministic; random_sobolev draws
/// per-mode complex Gaussians (fixed Box-Muller on mt19937_64, stable across
/// toolchains) scaled by (1+|xi|^2)^{-(s/2 + d/4 + 0.01)} and then rescales
/// so the H^s norm equals `amplitude` exactly.
struct InitSpec {
  enum class Kind { plane_wave, random_sobolev, gaussian_bump };
  Kind kind = Kind::plane_wave;

  // plane_wave: amplitude * e^{i(k0.x + phase)}
  std::array<int, 3> k0{1, 0, 0};
  double phase = 0.0;

  double amplitude = 1.0;

  // random_sobolev
  double s = 2.0;
  std::uint64_t seed = 1;

  // gaussian_bump: periodic bump of the given width centered mid-torus;
  // strictly positive modulus, spectrum decays like a Gaussian
  double width = 0.5;
};

SpectralField make_initial(const InitSpec& spec, const GridSpec& grid);

}  // namespace nls
