#pragma once

#include <string>
#include <vector>

#include "nlsgrow/init.hpp"
#include "nlsgrow/integrator.hpp"

namespace nls {

/// Refinement study of the integrator floor: evolve the same datum at each
/// dt, record the worst relative drift of the conserved quantities, and fit
/// the Richardson slope of the hamiltonian drift. Runs whose drift sits at
/// roundoff (plane waves) are flagged exact instead of fitted.
struct ConvergenceReport {
  struct Entry {
    double dt = 0.0;
    double mass_drift = 0.0;  // max relative |m(t)-m(0)|
    double ham_drift = 0.0;   // max relative |H(t)-H(0)|
  };
  std::vector<Entry> entries;
  bool exact = false;
  double ham_order = 0.0;
  double ham_fit_r2 = 0.0;

  std::string to_json_string() const;
};

ConvergenceReport convergence_study(const GridSpec& grid, NLSParams params,
                                    const InitSpec& init,
                                    const std::vector<double>& dts);

}  // namespace nls
