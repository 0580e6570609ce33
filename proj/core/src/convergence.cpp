#include "nlsgrow/convergence.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "nlsgrow/fit.hpp"

namespace nls {

ConvergenceReport convergence_study(const GridSpec& grid, NLSParams params,
                                    const InitSpec& init,
                                    const std::vector<double>& dts) {
  if (dts.size() < 3)
    throw std::invalid_argument(
        "convergence_study: need at least 3 refinement levels");

  const SpectralField u0 = make_initial(init, grid);
  const double m0 = mass(u0);
  const double h0 = hamiltonian(u0, params.p);

  ConvergenceReport report;
  for (double dt : dts) {
    params.dt = dt;
    ConvergenceReport::Entry entry;
    entry.dt = dt;
    evolve(u0, params, 1,
           [&](long long, double, const SpectralField& u) {
             entry.mass_drift =
                 std::max(entry.mass_drift,
                          std::abs(mass(u) - m0) / (1.0 + std::abs(m0)));
             entry.ham_drift =
                 std::max(entry.ham_drift,
                          std::abs(hamiltonian(u, params.p) - h0) /
                              (1.0 + std::abs(h0)));
           });
    report.entries.push_back(entry);
  }

  double worst = 0.0;
  for (const auto& e : report.entries) worst = std::max(worst, e.ham_drift);
  if (worst < 1e-12) {
    report.exact = true;  // drift at roundoff at every dt; slope undefined
    return report;
  }

  std::vector<double> x, y;
  for (const auto& e : report.entries) {
    x.push_back(std::log(e.dt));
    y.push_back(std::log(std::max(e.ham_drift, 1e-300)));
  }
  const LineFit fit = least_squares(x, y);
  report.ham_order = fit.slope;
  report.ham_fit_r2 = fit.r2;
  return report;
}

std::string ConvergenceReport::to_json_string() const {
  nlohmann::json j;
  j["exact"] = exact;
  j["ham_order"] = ham_order;
  j["ham_fit_r2"] = ham_fit_r2;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json je;
    je["dt"] = e.dt;
    je["mass_drift"] = e.mass_drift;
    je["ham_drift"] = e.ham_drift;
    j["entries"].push_back(je);
  }
  return j.dump(2);
}

}  // namespace nls
