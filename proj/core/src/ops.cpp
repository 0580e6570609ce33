#include "nlsgrow/ops.hpp"

#include <cmath>
#include <stdexcept>

namespace nls {

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

GridSpec::GridSpec(const std::vector<int>& points,
                   const std::vector<double>& periods) {
  if (points.empty() || points.size() > 3)
    throw std::invalid_argument("GridSpec: dim must be 1, 2, or 3");
  dim = int(points.size());
  if (!periods.empty() && periods.size() != points.size())
    throw std::invalid_argument("GridSpec: length entries must match dim");
  for (int a = 0; a < dim; ++a) {
    if (!is_power_of_two(points[a]) || points[a] < 8)
      throw std::invalid_argument("GridSpec: n must be a power of two >= 8");
    n[a] = points[a];
    if (!periods.empty()) {
      if (!(periods[a] > 0.0) || !std::isfinite(periods[a]))
        throw std::invalid_argument("GridSpec: length must be positive");
      length[a] = periods[a];
    }
  }
  // total point count must stay addressable by the dense evaluator
  double total = 1.0;
  for (int a = 0; a < dim; ++a) total *= double(n[a]);
  if (total > double(1u << 30))
    throw std::invalid_argument("GridSpec: total point count too large");
}

SobolevIndex::SobolevIndex(double s_) : s(s_) {
  if (!(s >= 0.0) || !std::isfinite(s))
    throw std::invalid_argument("SobolevIndex: s must be finite and >= 0");
}

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw std::invalid_argument("grid mismatch");
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid, b.grid);
  SpectralField out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
  return out;
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid, b.grid);
  SpectralField out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] -= b.coeffs[i];
  return out;
}

SpectralField operator*(Cplx s, const SpectralField& f) {
  SpectralField out = f;
  for (auto& c : out.coeffs) c *= s;
  return out;
}

void axpy(Cplx a, const SpectralField& x, SpectralField& y) {
  require_same_grid(x.grid, y.grid);
  for (std::size_t i = 0; i < y.coeffs.size(); ++i) y.coeffs[i] += a * x.coeffs[i];
}

SpectralField derivative(const SpectralField& f, int axis, int order) {
  if (axis < 0 || axis >= f.grid.dim)
    throw std::invalid_argument("derivative: axis out of range");
  if (order < 0) throw std::invalid_argument("derivative: negative order");
  if (order == 0) return f;
  SpectralField out{f.grid, std::vector<Cplx>(f.coeffs.size())};
  const bool odd = (order % 2) != 0;
  const int nyq = -f.grid.n[axis] / 2;
  for_each_mode(f.grid, [&](std::size_t i, const std::array<int, 3>& k) {
    if (odd && k[axis] == nyq) {
      out.coeffs[i] = 0.0;
      return;
    }
    const Cplx ik(0.0, f.grid.xi(axis, k[axis]));
    Cplx m = 1.0;
    for (int q = 0; q < order; ++q) m *= ik;
    out.coeffs[i] = m * f.coeffs[i];
  });
  return out;
}

SpectralField laplacian(const SpectralField& f) {
  return apply_multiplier(f, [](const std::array<double, 3>& xi) {
    return Cplx(-(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]), 0.0);
  });
}

std::vector<SpectralField> gradient(const SpectralField& f) {
  std::vector<SpectralField> out;
  out.reserve(f.grid.dim);
  for (int a = 0; a < f.grid.dim; ++a) out.push_back(derivative(f, a, 1));
  return out;
}

double sobolev_norm(const SpectralField& f, SobolevIndex s) {
  double acc = 0.0;
  for_each_mode(f.grid, [&](std::size_t i, const std::array<int, 3>& k) {
    double xi2 = 0.0;
    for (int a = 0; a < f.grid.dim; ++a) {
      const double xi = f.grid.xi(a, k[a]);
      xi2 += xi * xi;
    }
    acc += std::pow(1.0 + xi2, s.s) * std::norm(f.coeffs[i]);
  });
  return std::sqrt(acc);
}

bool in_dealias_band(const GridSpec& g, const std::array<int, 3>& k) {
  for (int a = 0; a < g.dim; ++a)
    if (std::abs(k[a]) > g.dealias_limit(a)) return false;
  return true;
}

SpectralField dealiased(const SpectralField& f) {
  SpectralField out = f;
  for_each_mode(f.grid, [&](std::size_t i, const std::array<int, 3>& k) {
    if (!in_dealias_band(f.grid, k)) out.coeffs[i] = 0.0;
  });
  return out;
}

SpectralField pointwise_product(const std::vector<const SpectralField*>& fs,
                                const std::vector<bool>& conj_flags,
                                bool dealias) {
  if (fs.empty()) throw std::invalid_argument("pointwise_product: no factors");
  if (fs.size() != conj_flags.size())
    throw std::invalid_argument("pointwise_product: flag count mismatch");
  const GridSpec& g = fs[0]->grid;
  for (const auto* f : fs) require_same_grid(g, f->grid);

  PhysicalField acc = PhysicalField::zero(g);
  for (std::size_t j = 0; j < fs.size(); ++j) {
    PhysicalField p = to_physical(dealias ? dealiased(*fs[j]) : *fs[j]);
    if (j == 0) {
      acc = std::move(p);
      if (conj_flags[0])
        for (auto& v : acc.samples) v = std::conj(v);
    } else if (conj_flags[j]) {
      for (std::size_t i = 0; i < acc.samples.size(); ++i)
        acc.samples[i] *= std::conj(p.samples[i]);
    } else {
      for (std::size_t i = 0; i < acc.samples.size(); ++i)
        acc.samples[i] *= p.samples[i];
    }
  }
  SpectralField out = to_spectral(acc);
  return dealias ? dealiased(out) : out;
}

SpectralField pointwise_product(const std::vector<SpectralField>& fs,
                                const std::vector<bool>& conj_flags,
                                bool dealias) {
  std::vector<const SpectralField*> ptrs;
  ptrs.reserve(fs.size());
  for (const auto& f : fs) ptrs.push_back(&f);
  return pointwise_product(ptrs, conj_flags, dealias);
}

Cplx integral(const SpectralField& f) { return f.coeffs[0]; }

Cplx l2_inner(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f.grid, g.grid);
  Cplx acc = 0.0;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i)
    acc += f.coeffs[i] * std::conj(g.coeffs[i]);
  return acc;
}

double l2_norm(const SpectralField& f) { return std::sqrt(mass(f)); }

double mass(const SpectralField& f) {
  double acc = 0.0;
  for (const auto& c : f.coeffs) acc += std::norm(c);
  return acc;
}

double hamiltonian(const SpectralField& f, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("hamiltonian: p must be > 1");
  double grad = 0.0;
  for (const auto& d : gradient(f)) grad += mass(d);
  const PhysicalField u = to_physical(f);
  double pot = 0.0;
  const double q = (p + 1.0) / 2.0;
  for (const auto& v : u.samples) pot += std::pow(std::norm(v), q);
  pot /= double(u.samples.size());
  return grad + pot / (p + 1.0);
}

}  // namespace nls
