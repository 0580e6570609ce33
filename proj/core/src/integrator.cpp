#include "nlsgrow/integrator.hpp"

#include <cmath>

namespace nls {

namespace {

// |u|^{p-1} pointwise; p == 3 avoids the pow call.
inline double modulus_power(const Cplx& v, double p) {
  const double m2 = std::norm(v);
  if (p == 3.0) return m2;
  return std::pow(m2, (p - 1.0) / 2.0);
}

// u(x) -> u(x) e^{-i |u|^{p-1} dt}, the exact flow of the nonlinear substep.
void nonlinear_phase(PhysicalField& u, double dt, double p) {
  for (auto& v : u.samples) {
    const double theta = -modulus_power(v, p) * dt;
    v *= Cplx(std::cos(theta), std::sin(theta));
  }
}

// spectral multiplier e^{-i |xi|^2 tau}
SpectralField linear_flow(const SpectralField& u, double tau) {
  return apply_multiplier(u, [tau](const std::array<double, 3>& xi) {
    const double phase = -(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]) * tau;
    return Cplx(std::cos(phase), std::sin(phase));
  });
}

// |u|^{p-1} u as a spectral field, dealiased on request
SpectralField nonlinear_term(const SpectralField& u, const NLSParams& params) {
  PhysicalField phys = to_physical(params.dealias ? dealiased(u) : u);
  for (auto& v : phys.samples) v *= modulus_power(v, params.p);
  SpectralField out = to_spectral(phys);
  return params.dealias ? dealiased(out) : out;
}

bool all_finite(const SpectralField& u) {
  for (const auto& c : u.coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

}  // namespace

bool is_odd_integer_p(double p) {
  const double r = std::round(p);
  return p == r && long(r) % 2 == 1 && r >= 3.0;
}

void NLSParams::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("NLSParams: dt must be > 0");
  if (!(t_end >= 0.0)) throw std::invalid_argument("NLSParams: t_end must be >= 0");
  if (!(p > 1.0)) throw std::invalid_argument("NLSParams: p must be > 1");
  if (allow_any_regime) return;
  const bool regime_2d = dim == 2 && is_odd_integer_p(p);
  const bool regime_3d_cubic = dim == 3 && p == 3.0;
  const bool regime_3d_subcubic = dim == 3 && p > 2.0 && p < 3.0;
  if (!(regime_2d || regime_3d_cubic || regime_3d_subcubic))
    throw std::invalid_argument(
        "NLSParams: (dim,p) outside supported regimes (2d odd p>=3, 3d p=3, "
        "3d 2<p<3); set allow_any_regime to override");
}

SpectralField nls_rhs(const SpectralField& u, const NLSParams& params) {
  SpectralField out = laplacian(u) - nonlinear_term(u, params);
  for (auto& c : out.coeffs) c *= Cplx(0.0, 1.0);
  return out;
}

SpectralField step_strang(const SpectralField& u, double dt,
                          const NLSParams& params) {
  SpectralField half = linear_flow(u, dt / 2.0);
  PhysicalField phys = to_physical(half);
  nonlinear_phase(phys, dt, params.p);
  return linear_flow(to_spectral(phys), dt / 2.0);
}

SpectralField step_rk4(const SpectralField& u, double dt,
                       const NLSParams& params) {
  // Twisted variable v(tau) = e^{-i Lap tau} u(t+tau) satisfies
  // v' = e^{-i Lap tau} (-i N(e^{i Lap tau} v)); the linear flow is exact.
  auto nonlin = [&](const SpectralField& w) {
    SpectralField n = nonlinear_term(w, params);
    for (auto& c : n.coeffs) c *= Cplx(0.0, -1.0);
    return n;
  };
  auto stage = [&](const SpectralField& v, double tau) {
    return linear_flow(nonlin(linear_flow(v, tau)), -tau);
  };

  const SpectralField g1 = nonlin(u);

  SpectralField v2 = u;
  axpy(dt / 2.0, g1, v2);
  const SpectralField g2 = stage(v2, dt / 2.0);

  SpectralField v3 = u;
  axpy(dt / 2.0, g2, v3);
  const SpectralField g3 = stage(v3, dt / 2.0);

  SpectralField v4 = u;
  axpy(dt, g3, v4);
  const SpectralField g4 = stage(v4, dt);

  SpectralField v1 = u;
  axpy(dt / 6.0, g1, v1);
  axpy(dt / 3.0, g2, v1);
  axpy(dt / 3.0, g3, v1);
  axpy(dt / 6.0, g4, v1);
  return linear_flow(v1, dt);
}

Trajectory evolve(const SpectralField& u0, const NLSParams& params,
                  int cadence_steps, const Observer& observer) {
  params.validate();
  if (cadence_steps < 1)
    throw std::invalid_argument("evolve: cadence_steps must be >= 1");
  if (u0.grid.dim != params.dim)
    throw std::invalid_argument("evolve: grid dimension != params.dim");

  const long long nsteps = llround(params.t_end / params.dt);

  Trajectory traj;
  traj.grid = u0.grid;

  SpectralField u = u0;
  auto record = [&](long long step, double t) {
    if (!all_finite(u)) throw NonFiniteError(t, step);
    traj.times.push_back(t);
    traj.states.push_back(u);
    if (observer) observer(step, t, u);
  };

  record(0, 0.0);
  for (long long s = 1; s <= nsteps; ++s) {
    u = params.integrator == IntegratorKind::strang
            ? step_strang(u, params.dt, params)
            : step_rk4(u, params.dt, params);
    if (s % cadence_steps == 0 || s == nsteps) record(s, double(s) * params.dt);
  }
  return traj;
}

}  // namespace nls
