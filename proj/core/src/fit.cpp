#include "nlsgrow/fit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace nls {

LineFit least_squares(const std::vector<double>& x,
                      const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("least_squares: need >= 2 matched points");
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("least_squares: degenerate x");
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0.0, ss_tot = 0.0;
  const double ybar = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += e * e;
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
  }
  // a flat series fit by a flat line is a perfect fit
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

GrowthFit fit_growth(const std::vector<std::pair<double, double>>& series,
                     GrowthModel model, double t_min, double t_max, int dim,
                     double p, double sobolev_m, double margin) {
  std::vector<double> x, y;
  for (const auto& [t, v] : series) {
    if (t < t_min || t > t_max) continue;
    if (model == GrowthModel::polynomial && t <= 0.0) continue;
    if (!(v > 0.0))
      throw std::invalid_argument("fit_growth: non-positive sample value");
    x.push_back(model == GrowthModel::polynomial ? std::log(t) : t);
    y.push_back(std::log(v));
  }
  if (x.size() < 10)
    throw std::invalid_argument(
        "fit_growth: fewer than 10 samples in the fit window");

  const LineFit line = least_squares(x, y);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  GrowthFit fit;
  fit.model = model;
  fit.exponent_or_rate = line.slope;
  fit.t_min = t_min;
  fit.t_max = t_max;
  fit.r_squared = line.r2;
  fit.margin = margin;
  fit.n_samples = x.size();

  if (dim == 2) {
    fit.envelope_exponent = sobolev_m - 1.0;          // torus: any s0 > 0
    fit.reference_exponent = 2.0 * (sobolev_m - 1.0); // generic: s0 = 1/4
  } else if (dim == 3 && p == 3.0) {
    fit.envelope_exponent = nan;  // at-most-exponential regime
    fit.reference_exponent = nan;
  } else if (dim == 3 && p > 2.0 && p < 3.0) {
    fit.envelope_exponent = 4.0 / (3.0 - p);
    fit.reference_exponent = nan;
  } else {
    fit.envelope_exponent = nan;
    fit.reference_exponent = nan;
  }

  if (model == GrowthModel::polynomial && std::isfinite(fit.envelope_exponent))
    fit.within_envelope =
        fit.exponent_or_rate <= fit.envelope_exponent + margin;
  else
    fit.within_envelope = true;  // exponential envelopes carry no fixed rate
  return fit;
}

std::string GrowthFit::to_json_string() const {
  nlohmann::json j;
  j["model"] = model == GrowthModel::polynomial ? "polynomial" : "exponential";
  j["exponent_or_rate"] = exponent_or_rate;
  j["window"] = {t_min, t_max};
  j["r_squared"] = r_squared;
  j["envelope_exponent"] =
      std::isfinite(envelope_exponent) ? nlohmann::json(envelope_exponent)
                                       : nlohmann::json();
  j["reference_exponent"] =
      std::isfinite(reference_exponent) ? nlohmann::json(reference_exponent)
                                        : nlohmann::json();
  j["margin"] = margin;
  j["within_envelope"] = within_envelope;
  j["n_samples"] = n_samples;
  j["observable"] = observable;
  return j.dump(2);
}

}  // namespace nls
