#pragma once

#include <stdexcept>

#include "nlsgrow/symexpr.hpp"

namespace nls {

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Default ceiling on any single factor's total spatial order reached while
/// substituting the equation; generous enough for dt_power up to k=3 and
/// functional derivatives of the order-2k energies.
inline constexpr int kDefaultFactorOrderCap = 12;
/// Default ceiling on the number of time derivatives taken symbolically.
inline constexpr int kDefaultDtPowerCap = 3;

/// |u|^{p-1} u for odd integer p = 2n+1: the monomial u^{n+1} conj(u)^n.
/// Throws std::invalid_argument for any other p.
SymExpr nonlinearity_expr(int p, int dim);

/// d/dt of an expression along solutions: du -> i Lap u - i u^{n+1} conj(u)^n
/// (and the conjugate rule), pushed through spatial derivatives and products
/// by Leibniz. Exact rational arithmetic. Throws CapExceeded when a factor's
/// spatial order would exceed the cap.
SymExpr time_derivative(const SymExpr& e, int p,
                        int factor_order_cap = kDefaultFactorOrderCap);

/// k-fold time derivative of the bare field u. The single-factor part is
/// exactly i^k Lap^k u; everything else carries at least p factors.
SymExpr dt_power(int k, int p, int dim, int k_cap = kDefaultDtPowerCap);

/// d/dt of the functional  integral(e dvol)  along solutions, returned in
/// integration-by-parts normal form (see ibp.hpp).
SymExpr dt_of_functional(const SymExpr& integrand, int p);

}  // namespace nls
