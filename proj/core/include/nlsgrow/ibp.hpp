#pragma once

#include "nlsgrow/symexpr.hpp"

namespace nls {

/// Canonical representative of an integrand modulo exact divergences on the
/// torus (no boundary terms). Two integrands with equal integrals for every
/// field map to the same normal form; the map is linear and idempotent.
///
/// Monomials connected by moving single derivatives between factors share an
/// invariance class (factor counts per conjugation flag, per-axis derivative
/// totals). Within each class every Leibniz expansion of d_a(monomial) is a
/// relation that integrates to zero; the class is reduced once by exact
/// Gaussian elimination, eliminating the monomials whose derivatives are most
/// concentrated on a single factor, and the reduction is cached.
SymExpr ibp_normal_form(const SymExpr& integrand);

}  // namespace nls
