#pragma once

#include <string>
#include <vector>

#include "nlsgrow/dt_calculus.hpp"
#include "nlsgrow/evaluate.hpp"
#include "nlsgrow/integrator.hpp"

namespace nls {

enum class EnergyKind { even, odd, f2 };

/// Selects one of the modified energies: even order 2k, odd order 2k+1 (k=1
/// only), or the sub-cubic F2. Polynomial nonlinearities go through the
/// symbolic engine; F2 is evaluated numerically with |u| regularized by
/// sqrt(|u|^2 + eps^2).
struct EnergySpec {
  EnergyKind kind = EnergyKind::even;
  int k = 1;
  double p = 3.0;
  double eps_reg = 1e-8;

  void validate() const;
  int odd_integer_p() const;  // for symbolic kinds
  std::string name() const;   // "E2", "E3", "F2"
  std::string label() const;  // "E2_p3", "F2_p2.5", ...
};

/// E_{2k}(u) = ||dt^k u||^2 - (p-1)/4 int |dt^{k-1} grad(|u|^2)|^2 |u|^{p-3}
///            - int |dt^{k-1}(|u|^{p-1} u)|^2
double energy_even(const SpectralField& u, const EnergySpec& spec);

/// The two integral terms of E_{2k} (so E_{2k} = ||dt^k u||^2 + R_{2k}).
double residual_r2k(const SpectralField& u, const EnergySpec& spec);

/// E_{2k+1}(u) at k=1: 1/2 ||dt grad u||^2 + 1/2 int |u|^{p-1} |dt u|^2
///                     + (p-1)/8 int |u|^{p-3} |dt(|u|^2)|^2
double energy_odd(const SpectralField& u, const EnergySpec& spec);

/// F2(u) = ||dt u||^2 - (p-1) int |u|^{p-1} |grad|u||^2
///         - (p-1)/p int |u|^{2p},  2 < p < 3
double energy_f2(const SpectralField& u, const EnergySpec& spec);

/// d/dt E_{2k} along solutions, from the engine's exact functional
/// derivative in normal form (computed once per (k,p,dim) and cached).
double even_identity_rhs(const SpectralField& u, const EnergySpec& spec);
double odd_identity_rhs(const SpectralField& u, const EnergySpec& spec);

/// d/dt F2 = (p-1)(p-3) int |u|^{p-2} dt|u| |grad|u||^2
///           + 2(p-1) int |u|^{p-2} dt|u| |grad u|^2
double f2_rhs(const SpectralField& u, const EnergySpec& spec);

/// Dispatch on spec.kind.
double energy_value(const SpectralField& u, const EnergySpec& spec);
double identity_rhs_value(const SpectralField& u, const EnergySpec& spec);

/// Cached symbolic pieces (also used for emitting derived identities into
/// run manifests and for structural tests).
const SymExpr& energy_even_integrand(int dim, int k, int p);
const SymExpr& energy_even_ddt(int dim, int k, int p);
const SymExpr& energy_odd_integrand(int dim, int p);
const SymExpr& energy_odd_ddt(int dim, int p);
SymExpr mass_integrand(int dim);
SymExpr hamiltonian_integrand(int dim, int p);

/// Finite-difference check of d/dt E = rhs along a stored trajectory.
/// lhs uses central differences of the stored energy samples at each width;
/// rhs is the identity's right-hand side at the sample itself.
struct IdentityReport {
  EnergySpec spec;
  double sample_dt = 0.0;
  struct WidthLine {
    double h = 0.0;
    std::vector<double> t, lhs, rhs, residual;
    double max_abs_residual = 0.0;
    double rms_residual = 0.0;
  };
  std::vector<WidthLine> lines;
  double fitted_order = 0.0;
  double order_fit_r2 = 0.0;

  std::string to_json_string() const;
};

IdentityReport identity_check(const Trajectory& traj, const EnergySpec& spec,
                              const std::vector<double>& widths);

}  // namespace nls
