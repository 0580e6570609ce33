#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlsgrow/energies.hpp"
#include "nlsgrow/init.hpp"
#include "nlsgrow/integrator.hpp"

namespace nls {

/// A fully reproducible experiment: grid, equation parameters, initial
/// datum, observables, cadence, and output directory. Observables are named
/// strings:
///   "mass", "hamiltonian", "H<s>" (Sobolev norm, e.g. H1, H2.5),
///   "E2[:p=..]", "E4[:p=..]" (even energies k=1,2),
///   "E3[:p=..]" (odd, k=1), "F2[:p=..][:eps=..]" (sub-cubic).
/// Energy p must match params.p when given.
struct RunConfig {
  GridSpec grid;
  NLSParams params;
  InitSpec init;
  std::vector<std::string> observables{"mass", "hamiltonian", "H1", "H2"};
  int cadence_steps = 10;
  std::string output_dir;
  bool deterministic = true;

  void validate() const;
};

struct RunOptions {
  bool resume = false;
  /// Testing hook: stop (still resumable) after this many steps; -1 = off.
  long long stop_after_steps = -1;
};

struct RunResult {
  std::string dir;
  bool completed = false;
  bool aborted = false;       // non-finite observable
  double last_t = 0.0;
  long long last_step = 0;
  std::string diagnostic;     // path of the abort diagnostic, when aborted
};

/// Run (or resume) an experiment. Writes:
///   manifest.json    config echo, column names, derived identities, status
///   series.ndjson    one JSON record per cadence point (append-only)
///   checkpoint.bin   latest state, enabling resume
/// A non-finite observable aborts the run, persists the offending state and
/// a diagnostic record, and returns aborted=true.
RunResult run_experiment(const RunConfig& config, const RunOptions& opts = {});

/// Parsed back form of a persisted series.
struct SeriesData {
  std::vector<std::string> columns;                 // observable names
  std::vector<double> t;
  std::vector<long long> step;
  std::vector<std::vector<double>> values;          // [row][column]
};

SeriesData read_series(const std::string& run_dir);

/// Extract one observable as (t, value) pairs.
std::vector<std::pair<double, double>> series_column(const SeriesData& data,
                                                     const std::string& name);

/// Parse an observable name into an evaluator; throws on unknown names.
struct Observable {
  std::string column;
  std::function<double(const SpectralField&)> eval;
};
Observable parse_observable(const std::string& name, const NLSParams& params);

}  // namespace nls
