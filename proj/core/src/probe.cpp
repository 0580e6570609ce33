#include "nlsgrow/probe.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "nlsgrow/dt_calculus.hpp"
#include "nlsgrow/evaluate.hpp"
#include "nlsgrow/init.hpp"

namespace nls {

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

ProbeStats norm_equivalence_probe(const GridSpec& grid, int k, double s,
                                  double p, int ensemble, std::uint64_t seed) {
  if (ensemble < 1)
    throw std::invalid_argument("norm_equivalence_probe: empty ensemble");
  const int pi = int(std::lround(p));
  if (double(pi) != p || pi < 3 || pi % 2 == 0)
    throw std::invalid_argument("norm_equivalence_probe: p must be odd >= 3");

  // dt^k u minus its leading i^k Lap^k part
  SymExpr lead = SymExpr::field(grid.dim, false);
  for (int j = 0; j < k; ++j) lead = lead.laplacian();
  const SymExpr deviation =
      dt_power(k, pi, grid.dim) - lead.scaled(GaussianRational::i_power(k));

  const double denom_s = s + 2.0 * k - 1.0;
  ProbeStats stats;
  stats.k = k;
  stats.s = s;
  stats.p = p;
  stats.ensemble = ensemble;

  InitSpec init;
  init.kind = InitSpec::Kind::random_sobolev;
  init.s = denom_s;
  init.amplitude = 1.0;

  for (int i = 0; i < ensemble; ++i) {
    init.seed = seed + std::uint64_t(i);
    const SpectralField u = make_initial(init, grid);
    const double denom = sobolev_norm(u, denom_s);
    const double denom_strong = sobolev_norm(u, denom_s + 1.0);
    if (denom < 1e-14 || denom_strong < 1e-14) {
      stats.skipped++;  // degenerate draw: ratio undefined
      continue;
    }
    const double num = sobolev_norm(evaluate(deviation, u), s);
    stats.ratios.push_back(num / denom);
    stats.ratios_strong.push_back(num / denom_strong);
  }

  if (!stats.ratios.empty()) {
    stats.max_ratio = *std::max_element(stats.ratios.begin(), stats.ratios.end());
    stats.median_ratio = median(stats.ratios);
    double sum = 0.0;
    for (double r : stats.ratios) sum += r;
    stats.mean_ratio = sum / double(stats.ratios.size());
    stats.max_ratio_strong =
        *std::max_element(stats.ratios_strong.begin(), stats.ratios_strong.end());
    stats.median_ratio_strong = median(stats.ratios_strong);
  }
  return stats;
}

std::string ProbeStats::to_json_string() const {
  nlohmann::json j;
  j["k"] = k;
  j["s"] = s;
  j["p"] = p;
  j["ensemble"] = ensemble;
  j["skipped"] = skipped;
  j["ratios"] = ratios;
  j["ratios_strong"] = ratios_strong;
  j["max_ratio"] = max_ratio;
  j["median_ratio"] = median_ratio;
  j["mean_ratio"] = mean_ratio;
  j["max_ratio_strong"] = max_ratio_strong;
  j["median_ratio_strong"] = median_ratio_strong;
  return j.dump(2);
}

}  // namespace nls
