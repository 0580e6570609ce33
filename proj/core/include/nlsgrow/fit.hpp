#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nls {

enum class GrowthModel { polynomial, exponential };

/// Least-squares growth fit of a norm time series against the regime's
/// envelope. polynomial fits log y vs log t (exponent), exponential fits
/// log y vs t (rate). The envelope exponent depends on (dim, p, m):
///   2d, odd p:      m-1 on the torus (reference 2(m-1) on generic surfaces)
///   3d, p=3:        exponential regime; no finite envelope exponent
///   3d, 2<p<3, m=2: 4/(3-p)
struct GrowthFit {
  GrowthModel model = GrowthModel::polynomial;
  double exponent_or_rate = 0.0;
  double t_min = 0.0, t_max = 0.0;
  double r_squared = 0.0;
  double envelope_exponent = 0.0;   // NaN when the regime has none
  double reference_exponent = 0.0;  // NaN outside the 2d regime
  double margin = 0.5;
  bool within_envelope = true;
  std::size_t n_samples = 0;
  std::string observable;

  std::string to_json_string() const;
};

GrowthFit fit_growth(const std::vector<std::pair<double, double>>& series,
                     GrowthModel model, double t_min, double t_max, int dim,
                     double p, double sobolev_m, double margin = 0.5);

/// Plain least squares of y against x; returns (slope, intercept, r2).
struct LineFit {
  double slope = 0.0, intercept = 0.0, r2 = 0.0;
};
LineFit least_squares(const std::vector<double>& x,
                      const std::vector<double>& y);

}  // namespace nls
