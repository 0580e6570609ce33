#pragma once

#include <array>
#include <vector>

#include "nlsgrow/fft.hpp"

namespace nls {

/// Coefficient-wise product u_k -> m(xi_k) * u_k. The multiplier is called
/// with the continuous frequency vector xi = 2*pi*k/L (entries beyond dim are
/// zero).
template <class M>
SpectralField apply_multiplier(const SpectralField& f, M&& m) {
  SpectralField out{f.grid, std::vector<Cplx>(f.coeffs.size())};
  for_each_mode(f.grid, [&](std::size_t i, const std::array<int, 3>& k) {
    std::array<double, 3> xi{0.0, 0.0, 0.0};
    for (int a = 0; a < f.grid.dim; ++a) xi[a] = f.grid.xi(a, k[a]);
    out.coeffs[i] = m(xi) * f.coeffs[i];
  });
  return out;
}

/// Spectral derivative of given order along one axis, multiplier (i*xi_a)^q.
/// For odd q the Nyquist mode k_a = -n_a/2 is zeroed to keep the operator
/// conjugation-symmetric on the even-sized lattice.
SpectralField derivative(const SpectralField& f, int axis, int order);

SpectralField laplacian(const SpectralField& f);

std::vector<SpectralField> gradient(const SpectralField& f);

/// || <grad>^s f ||_{L^2} with the (1+|xi|^2)^{s/2} multiplier and mean
/// measure (so ||1|| = 1).
double sobolev_norm(const SpectralField& f, SobolevIndex s);
inline double sobolev_norm(const SpectralField& f, double s) {
  return sobolev_norm(f, SobolevIndex(s));
}

bool in_dealias_band(const GridSpec& g, const std::array<int, 3>& k);

/// Copy with all modes having any |k_a| > n_a/3 zeroed.
SpectralField dealiased(const SpectralField& f);

/// Pointwise product of the factors (conjugating flagged ones), computed in
/// physical space. With dealias on, factors are masked to the 2/3 band before
/// the transform and the result is masked after it.
SpectralField pointwise_product(const std::vector<const SpectralField*>& fs,
                                const std::vector<bool>& conj_flags,
                                bool dealias);
SpectralField pointwise_product(const std::vector<SpectralField>& fs,
                                const std::vector<bool>& conj_flags,
                                bool dealias);

/// Integral over the torus under the mean (probability) measure: the k=0
/// coefficient.
Cplx integral(const SpectralField& f);

/// sum_k u_k conj(v_k) = mean of u(x) conj(v(x)).
Cplx l2_inner(const SpectralField& f, const SpectralField& g);

double l2_norm(const SpectralField& f);

/// ||f||^2_{L^2}.
double mass(const SpectralField& f);

/// integral( |grad u|^2 + |u|^{p+1}/(p+1) ), p > 1.
double hamiltonian(const SpectralField& f, double p);

}  // namespace nls
