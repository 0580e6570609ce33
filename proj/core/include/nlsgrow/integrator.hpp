#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "nlsgrow/ops.hpp"

namespace nls {

enum class IntegratorKind { strang, rk4 };

/// Time-stepping parameters for i u_t + Lap u = |u|^{p-1} u (defocusing).
/// The (dim, p) pair must fall in one of the supported regimes -- 2d with odd
/// integer p >= 3, 3d cubic, or 3d sub-cubic 2 < p < 3 -- unless
/// allow_any_regime is set for exploratory runs.
struct NLSParams {
  int dim = 2;
  double p = 3.0;
  double dt = 1e-3;
  double t_end = 1.0;
  bool dealias = true;
  IntegratorKind integrator = IntegratorKind::strang;
  bool allow_any_regime = false;

  void validate() const;
};

bool is_odd_integer_p(double p);

struct Trajectory {
  GridSpec grid;
  std::vector<double> times;
  std::vector<SpectralField> states;
};

struct NonFiniteError : std::runtime_error {
  double t;
  long long step;
  NonFiniteError(double t_, long long step_)
      : std::runtime_error("non-finite state at t=" + std::to_string(t_)),
        t(t_),
        step(step_) {}
};

/// du/dt = i(Lap u - |u|^{p-1} u). For non-integer p the modulus power is
/// (|u|^2)^{(p-1)/2} pointwise.
SpectralField nls_rhs(const SpectralField& u, const NLSParams& params);

/// Strang step: half linear phase e^{-i|xi|^2 dt/2}, exact pointwise
/// nonlinear phase u -> u e^{-i|u|^{p-1} dt}, half linear phase. Both
/// substeps are L^2 isometries, so mass is conserved to roundoff; no dealias
/// mask is applied (the nonlinear substep is exact, not a polynomial
/// product). dt may be negative.
SpectralField step_strang(const SpectralField& u, double dt,
                          const NLSParams& params);

/// Classical RK4 on the twisted variable v = e^{-i Lap t} u (integrating
/// factor form); fourth-order reference for cross-validating Strang.
SpectralField step_rk4(const SpectralField& u, double dt,
                       const NLSParams& params);

using Observer =
    std::function<void(long long step, double t, const SpectralField& u)>;

/// March u0 to t_end with fixed dt, recording states (and invoking the
/// observer) every cadence_steps steps plus at the final step. Throws
/// NonFiniteError as soon as a recorded state stops being finite.
Trajectory evolve(const SpectralField& u0, const NLSParams& params,
                  int cadence_steps = 1, const Observer& observer = {});

}  // namespace nls
