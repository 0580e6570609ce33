#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace nls {

using Cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Uniform periodic grid on a flat torus. Points per axis must be a power of
/// two >= 8; the period defaults to 2*pi per axis. Wavenumbers per axis follow
/// the usual half-open symmetric lattice k in [-n/2, n/2), stored in transform
/// order 0, 1, ..., n/2-1, -n/2, ..., -1 with the last axis varying fastest.
struct GridSpec {
  int dim = 0;
  std::array<int, 3> n{0, 0, 0};
  std::array<double, 3> length{kTwoPi, kTwoPi, kTwoPi};

  GridSpec() = default;
  explicit GridSpec(const std::vector<int>& points,
                    const std::vector<double>& periods = {});

  std::size_t size() const {
    std::size_t s = 1;
    for (int a = 0; a < dim; ++a) s *= std::size_t(n[a]);
    return s;
  }

  /// Wavenumber at storage position idx along an axis.
  int wavenumber(int axis, int idx) const {
    return idx < n[axis] / 2 ? idx : idx - n[axis];
  }

  /// Continuous frequency xi = 2*pi*k / L.
  double xi(int axis, int k) const { return kTwoPi * double(k) / length[axis]; }

  /// Physical coordinate of sample idx along an axis.
  double x(int axis, int idx) const {
    return length[axis] * double(idx) / double(n[axis]);
  }

  /// Largest |k| kept by the 2/3-rule mask on this axis.
  int dealias_limit(int axis) const { return n[axis] / 3; }

  bool operator==(const GridSpec& o) const {
    if (dim != o.dim) return false;
    for (int a = 0; a < dim; ++a)
      if (n[a] != o.n[a] || length[a] != o.length[a]) return false;
    return true;
  }
};

/// Fractional Sobolev regularity index, s >= 0 and finite.
struct SobolevIndex {
  double s = 0.0;
  SobolevIndex() = default;
  explicit SobolevIndex(double s_);
};

/// Visit every lattice site: f(flat_index, k) with k the integer wavevector.
template <class F>
void for_each_mode(const GridSpec& g, F&& f) {
  std::array<int, 3> k{0, 0, 0};
  std::size_t i = 0;
  const int n0 = g.n[0];
  const int n1 = g.dim > 1 ? g.n[1] : 1;
  const int n2 = g.dim > 2 ? g.n[2] : 1;
  for (int i0 = 0; i0 < n0; ++i0) {
    k[0] = g.wavenumber(0, i0);
    for (int i1 = 0; i1 < n1; ++i1) {
      if (g.dim > 1) k[1] = g.wavenumber(1, i1);
      for (int i2 = 0; i2 < n2; ++i2) {
        if (g.dim > 2) k[2] = g.wavenumber(2, i2);
        f(i, k);
        ++i;
      }
    }
  }
}

/// Visit every physical sample: f(flat_index, x) with x the coordinates.
template <class F>
void for_each_point(const GridSpec& g, F&& f) {
  std::array<double, 3> x{0.0, 0.0, 0.0};
  std::size_t i = 0;
  const int n0 = g.n[0];
  const int n1 = g.dim > 1 ? g.n[1] : 1;
  const int n2 = g.dim > 2 ? g.n[2] : 1;
  for (int i0 = 0; i0 < n0; ++i0) {
    x[0] = g.x(0, i0);
    for (int i1 = 0; i1 < n1; ++i1) {
      if (g.dim > 1) x[1] = g.x(1, i1);
      for (int i2 = 0; i2 < n2; ++i2) {
        if (g.dim > 2) x[2] = g.x(2, i2);
        f(i, x);
        ++i;
      }
    }
  }
}

}  // namespace nls
