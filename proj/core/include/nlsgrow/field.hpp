#pragma once

#include <complex>
#include <vector>

#include "nlsgrow/grid.hpp"

namespace nls {

/// A function on the torus stored as Fourier coefficients on the wavevector
/// lattice, normalized so the plane wave A*e^{i k0.x} has coefficient A at k0
/// and zero elsewhere. Treat instances as immutable once built.
struct SpectralField {
  GridSpec grid;
  std::vector<Cplx> coeffs;

  static SpectralField zero(const GridSpec& g) {
    return SpectralField{g, std::vector<Cplx>(g.size())};
  }
};

/// The same function, as samples on the physical grid (row-major, last axis
/// fastest -- identical flat indexing as SpectralField::coeffs).
struct PhysicalField {
  GridSpec grid;
  std::vector<Cplx> samples;

  static PhysicalField zero(const GridSpec& g) {
    return PhysicalField{g, std::vector<Cplx>(g.size())};
  }
};

void require_same_grid(const GridSpec& a, const GridSpec& b);

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(Cplx s, const SpectralField& f);

/// y += a*x
void axpy(Cplx a, const SpectralField& x, SpectralField& y);

}  // namespace nls
