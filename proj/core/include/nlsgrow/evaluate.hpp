#pragma once

#include <map>

#include "nlsgrow/ops.hpp"
#include "nlsgrow/symexpr.hpp"

namespace nls {

/// Physical-space realizations of the distinct factors of expressions on one
/// field, built on demand and shared across evaluations. A factor d^alpha u
/// becomes apply_multiplier with prod_a (i xi_a)^{alpha_a} (odd per-axis
/// orders zero the Nyquist mode), masked to the 2/3 band when dealiasing.
class FactorCache {
 public:
  FactorCache(const SpectralField& u, bool dealias)
      : u_(u), dealias_(dealias) {}

  const std::vector<Cplx>& samples(const Factor& f);
  const SpectralField& field() const { return u_; }
  bool dealias() const { return dealias_; }

 private:
  const SpectralField& u_;
  bool dealias_;
  std::map<Factor, std::vector<Cplx>> cache_;
};

/// Realize an expression on a field: factors via spectral multipliers,
/// monomial products pointwise in physical space, exact coefficients
/// converted to complex doubles at the end.
SpectralField evaluate(const SymExpr& e, FactorCache& cache);
SpectralField evaluate(const SymExpr& e, const SpectralField& u,
                       bool dealias = true);

/// integral(evaluate(e)) without the final transform; identical value (the
/// mean is the k=0 coefficient, which no dealias mask touches).
Cplx evaluate_integral(const SymExpr& e, FactorCache& cache);
Cplx evaluate_integral(const SymExpr& e, const SpectralField& u,
                       bool dealias = true);

}  // namespace nls
