#include "nlsgrow/init.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "nlsgrow/fft.hpp"
#include "nlsgrow/ops.hpp"

namespace nls {

namespace {

struct Gauss {
  std::mt19937_64 rng;
  explicit Gauss(std::uint64_t seed) : rng(seed) {}
  double uniform() { return double(rng() >> 11) * 0x1.0p-53; }
  // one complex standard normal per call (Box-Muller)
  Cplx next() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
  }
};

SpectralField plane_wave(const InitSpec& spec, const GridSpec& g) {
  SpectralField f = SpectralField::zero(g);
  std::size_t flat = 0;
  for (int a = 0; a < g.dim; ++a) {
    const int k = spec.k0[a];
    if (k < -g.n[a] / 2 || k >= g.n[a] / 2)
      throw std::invalid_argument("make_initial: k0 outside the lattice");
    const int idx = k >= 0 ? k : k + g.n[a];
    flat = flat * std::size_t(g.n[a]) + std::size_t(idx);
  }
  f.coeffs[flat] =
      spec.amplitude * Cplx(std::cos(spec.phase), std::sin(spec.phase));
  return f;
}

SpectralField random_sobolev(const InitSpec& spec, const GridSpec& g) {
  if (!(spec.amplitude > 0.0))
    throw std::invalid_argument("make_initial: amplitude must be > 0");
  SpectralField f = SpectralField::zero(g);
  Gauss gauss(spec.seed);
  const double decay = -(spec.s / 2.0 + double(g.dim) / 4.0 + 0.01);
  for_each_mode(g, [&](std::size_t i, const std::array<int, 3>& k) {
    const Cplx z = gauss.next();  // always drawn, keeps the stream aligned
    for (int a = 0; a < g.dim; ++a)
      if (k[a] == -g.n[a] / 2) {
        f.coeffs[i] = 0.0;  // Nyquist ring stays empty
        return;
      }
    double xi2 = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      const double xi = g.xi(a, k[a]);
      xi2 += xi * xi;
    }
    f.coeffs[i] = z * std::pow(1.0 + xi2, decay);
  });
  const double norm = sobolev_norm(f, spec.s);
  if (!(norm > 0.0))
    throw std::runtime_error("make_initial: degenerate random draw");
  const double scale = spec.amplitude / norm;
  for (auto& c : f.coeffs) c *= scale;
  return f;
}

SpectralField gaussian_bump(const InitSpec& spec, const GridSpec& g) {
  if (!(spec.width > 0.0))
    throw std::invalid_argument("make_initial: width must be > 0");
  PhysicalField p = PhysicalField::zero(g);
  const double w2 = spec.width * spec.width;
  for_each_point(g, [&](std::size_t i, const std::array<double, 3>& x) {
    double arg = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      const double r = g.length[a] / kTwoPi;
      const double theta = kTwoPi * (x[a] - 0.5 * g.length[a]) / g.length[a];
      arg += r * r * (1.0 - std::cos(theta)) / w2;
    }
    p.samples[i] = spec.amplitude * std::exp(-arg);
  });
  return to_spectral(p);
}

}  // namespace

SpectralField make_initial(const InitSpec& spec, const GridSpec& grid) {
  switch (spec.kind) {
    case InitSpec::Kind::plane_wave: return plane_wave(spec, grid);
    case InitSpec::Kind::random_sobolev: return random_sobolev(spec, grid);
    default: return gaussian_bump(spec, grid);
  }
}

}  // namespace nls
