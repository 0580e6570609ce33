#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlsgrow/field.hpp"

namespace nls {

/// Ensemble statistics for the ratio
///   || dt^k u - i^k Lap^k u ||_{H^s} / || u ||_{H^{s+2k-1}}
/// over random H^{s+2k-1} fields (the difference loses exactly 2k-1
/// derivatives). ratios_strong uses the over-strong denominator H^{s+2k},
/// which should decay as resolution grows.
struct ProbeStats {
  int k = 1;
  double s = 1.0, p = 3.0;
  int ensemble = 0, skipped = 0;
  std::vector<double> ratios, ratios_strong;
  double max_ratio = 0.0, median_ratio = 0.0, mean_ratio = 0.0;
  double max_ratio_strong = 0.0, median_ratio_strong = 0.0;

  std::string to_json_string() const;
};

ProbeStats norm_equivalence_probe(const GridSpec& grid, int k, double s,
                                  double p, int ensemble, std::uint64_t seed);

}  // namespace nls
