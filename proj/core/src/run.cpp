#include "nlsgrow/run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nlsgrow/version.hpp"

namespace nls {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

json grid_json(const GridSpec& g) {
  json j;
  j["dim"] = g.dim;
  j["n"] = std::vector<int>(g.n.begin(), g.n.begin() + g.dim);
  j["length"] = std::vector<double>(g.length.begin(), g.length.begin() + g.dim);
  return j;
}

json params_json(const NLSParams& p) {
  json j;
  j["dim"] = p.dim;
  j["p"] = p.p;
  j["dt"] = p.dt;
  j["t_end"] = p.t_end;
  j["dealias"] = p.dealias;
  j["integrator"] = p.integrator == IntegratorKind::strang ? "strang" : "rk4";
  j["allow_any_regime"] = p.allow_any_regime;
  return j;
}

json init_json(const InitSpec& i) {
  json j;
  switch (i.kind) {
    case InitSpec::Kind::plane_wave:
      j["kind"] = "plane_wave";
      j["k0"] = std::vector<int>(i.k0.begin(), i.k0.end());
      j["phase"] = i.phase;
      break;
    case InitSpec::Kind::random_sobolev:
      j["kind"] = "random_sobolev";
      j["s"] = i.s;
      j["seed"] = i.seed;
      break;
    case InitSpec::Kind::gaussian_bump:
      j["kind"] = "gaussian_bump";
      j["width"] = i.width;
      break;
  }
  j["amplitude"] = i.amplitude;
  return j;
}

json config_json(const RunConfig& c) {
  json j;
  j["grid"] = grid_json(c.grid);
  j["params"] = params_json(c.params);
  j["init"] = init_json(c.init);
  j["observables"] = c.observables;
  j["cadence_steps"] = c.cadence_steps;
  j["deterministic"] = c.deterministic;
  return j;
}

struct EnergyObs {
  EnergySpec spec;
};

// "E2", "E4", "E3", "F2" with optional ":p=<v>" and ":eps=<v>" suffixes
std::optional<EnergySpec> parse_energy_name(const std::string& name,
                                            const NLSParams& params) {
  std::vector<std::string> parts;
  std::stringstream ss(name);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty()) return std::nullopt;

  EnergySpec spec;
  spec.p = params.p;
  if (parts[0] == "E2") {
    spec.kind = EnergyKind::even;
    spec.k = 1;
  } else if (parts[0] == "E4") {
    spec.kind = EnergyKind::even;
    spec.k = 2;
  } else if (parts[0] == "E3") {
    spec.kind = EnergyKind::odd;
    spec.k = 1;
  } else if (parts[0] == "F2") {
    spec.kind = EnergyKind::f2;
  } else {
    return std::nullopt;
  }
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("observable '" + name + "': bad option");
    const std::string key = parts[i].substr(0, eq);
    const double val = std::stod(parts[i].substr(eq + 1));
    if (key == "p") {
      if (val != params.p)
        throw std::invalid_argument("observable '" + name +
                                    "': p differs from params.p");
      spec.p = val;
    } else if (key == "eps") {
      spec.eps_reg = val;
    } else {
      throw std::invalid_argument("observable '" + name + "': unknown option " +
                                  key);
    }
  }
  spec.validate();
  return spec;
}

}  // namespace

Observable parse_observable(const std::string& name, const NLSParams& params) {
  if (name == "mass")
    return {name, [](const SpectralField& u) { return mass(u); }};
  if (name == "hamiltonian") {
    const double p = params.p;
    return {name, [p](const SpectralField& u) { return hamiltonian(u, p); }};
  }
  if (name.size() > 1 && name[0] == 'H') {
    double s = 0.0;
    try {
      std::size_t used = 0;
      s = std::stod(name.substr(1), &used);
      if (used != name.size() - 1) throw std::invalid_argument("");
    } catch (...) {
      throw std::invalid_argument("unknown observable '" + name + "'");
    }
    SobolevIndex idx(s);
    return {name,
            [idx](const SpectralField& u) { return sobolev_norm(u, idx); }};
  }
  if (auto spec = parse_energy_name(name, params)) {
    const EnergySpec es = *spec;
    return {name, [es](const SpectralField& u) { return energy_value(u, es); }};
  }
  throw std::invalid_argument("unknown observable '" + name + "'");
}

void RunConfig::validate() const {
  params.validate();
  if (grid.dim != params.dim)
    throw std::invalid_argument("RunConfig: grid dimension != params.dim");
  if (cadence_steps < 1)
    throw std::invalid_argument("RunConfig: cadence_steps must be >= 1");
  if (output_dir.empty())
    throw std::invalid_argument("RunConfig: output_dir is empty");
  for (const auto& name : observables) parse_observable(name, params);
}

namespace {

constexpr char kCheckpointMagic[8] = {'N', 'L', 'S', 'C', 'K', 'P', 'T', '1'};

void write_checkpoint(const std::string& path, const SpectralField& u,
                      long long step, double t) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
    out.write(kCheckpointMagic, 8);
    const std::int32_t dim = u.grid.dim;
    out.write(reinterpret_cast<const char*>(&dim), 4);
    for (int a = 0; a < 3; ++a) {
      const std::int32_t n = u.grid.n[a];
      out.write(reinterpret_cast<const char*>(&n), 4);
    }
    for (int a = 0; a < 3; ++a)
      out.write(reinterpret_cast<const char*>(&u.grid.length[a]), 8);
    out.write(reinterpret_cast<const char*>(&step), 8);
    out.write(reinterpret_cast<const char*>(&t), 8);
    out.write(reinterpret_cast<const char*>(u.coeffs.data()),
              std::streamsize(u.coeffs.size() * sizeof(Cplx)));
  }
  fs::rename(tmp, path);
}

bool read_checkpoint(const std::string& path, const GridSpec& expect,
                     SpectralField& u, long long& step, double& t) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kCheckpointMagic, 8) != 0)
    throw std::runtime_error("corrupt checkpoint " + path);
  std::int32_t dim = 0;
  in.read(reinterpret_cast<char*>(&dim), 4);
  std::array<std::int32_t, 3> n{0, 0, 0};
  for (int a = 0; a < 3; ++a) in.read(reinterpret_cast<char*>(&n[a]), 4);
  std::array<double, 3> len{0, 0, 0};
  for (int a = 0; a < 3; ++a) in.read(reinterpret_cast<char*>(&len[a]), 8);
  if (dim != expect.dim)
    throw std::runtime_error("checkpoint grid mismatch in " + path);
  for (int a = 0; a < dim; ++a)
    if (n[a] != expect.n[a] || len[a] != expect.length[a])
      throw std::runtime_error("checkpoint grid mismatch in " + path);
  in.read(reinterpret_cast<char*>(&step), 8);
  in.read(reinterpret_cast<char*>(&t), 8);
  u = SpectralField::zero(expect);
  in.read(reinterpret_cast<char*>(u.coeffs.data()),
          std::streamsize(u.coeffs.size() * sizeof(Cplx)));
  if (!in) throw std::runtime_error("truncated checkpoint " + path);
  return true;
}

json derived_identities(const RunConfig& config) {
  json out = json::object();
  for (const auto& name : config.observables) {
    auto spec = parse_energy_name(name, config.params);
    if (!spec) continue;
    try {
      switch (spec->kind) {
        case EnergyKind::even:
          out[spec->label() + "_ddt"] =
              energy_even_ddt(config.grid.dim, spec->k, spec->odd_integer_p())
                  .str();
          break;
        case EnergyKind::odd:
          out[spec->label() + "_ddt"] =
              energy_odd_ddt(config.grid.dim, spec->odd_integer_p()).str();
          break;
        case EnergyKind::f2:
          break;  // numeric-path energy, no symbolic identity to emit
      }
    } catch (const std::exception&) {
      // identities are advisory manifest content; never block a run
    }
  }
  return out;
}

void write_manifest(const std::string& dir, const RunConfig& config,
                    const std::vector<std::string>& columns,
                    const std::string& status, const json& extra = {}) {
  json j;
  j["format"] = "nlsgrow-run/1";
  j["generator"] = std::string("nlsgrow ") + kVersion;
  j["status"] = status;
  j["config"] = config_json(config);
  j["columns"] = columns;
  j["derived_identities"] = derived_identities(config);
  if (!extra.is_null() && !extra.empty()) j["abort"] = extra;
  std::ofstream out(dir + "/manifest.json", std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write manifest in " + dir);
  out << j.dump(2) << "\n";
}

bool all_finite(const SpectralField& u) {
  for (const auto& c : u.coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

}  // namespace

RunResult run_experiment(const RunConfig& config, const RunOptions& opts) {
  config.validate();
  const std::string dir = config.output_dir;
  fs::create_directories(dir);

  std::vector<Observable> observables;
  std::vector<std::string> columns;
  for (const auto& name : config.observables) {
    observables.push_back(parse_observable(name, config.params));
    columns.push_back(observables.back().column);
  }

  const long long nsteps = llround(config.params.t_end / config.params.dt);
  const std::string series_path = dir + "/series.ndjson";
  const std::string ckpt_path = dir + "/checkpoint.bin";

  SpectralField u = SpectralField::zero(config.grid);
  long long start_step = 0;
  double start_t = 0.0;
  bool resumed = false;

  if (opts.resume && fs::exists(ckpt_path)) {
    resumed = read_checkpoint(ckpt_path, config.grid, u, start_step, start_t);
    if (resumed) {
      // drop any records past the checkpoint
      std::vector<std::string> keep;
      std::ifstream in(series_path);
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto rec = json::parse(line);
        if (rec.at("step").get<long long>() <= start_step)
          keep.push_back(line);
      }
      in.close();
      std::ofstream out(series_path, std::ios::trunc);
      for (const auto& l : keep) out << l << "\n";
    }
  }
  if (!resumed) {
    u = make_initial(config.init, config.grid);
    std::ofstream truncate(series_path, std::ios::trunc);
  }

  write_manifest(dir, config, columns, "running");

  std::ofstream series(series_path, std::ios::app);
  if (!series) throw std::runtime_error("cannot open " + series_path);

  RunResult result;
  result.dir = dir;

  auto record = [&](long long step, double t) -> bool {
    if (!all_finite(u)) {
      const std::string state_path = dir + "/abort_state.bin";
      write_checkpoint(state_path, u, step, t);
      json diag;
      diag["step"] = step;
      diag["t"] = t;
      diag["reason"] = "non-finite state";
      diag["state"] = state_path;
      write_manifest(dir, config, columns, "aborted", diag);
      result.aborted = true;
      result.diagnostic = state_path;
      return false;
    }
    json rec;
    rec["step"] = step;
    rec["t"] = t;
    json vals = json::object();
    for (const auto& obs : observables) {
      const double v = obs.eval(u);
      if (!std::isfinite(v)) {
        const std::string state_path = dir + "/abort_state.bin";
        write_checkpoint(state_path, u, step, t);
        json diag;
        diag["step"] = step;
        diag["t"] = t;
        diag["reason"] = "non-finite observable " + obs.column;
        diag["state"] = state_path;
        write_manifest(dir, config, columns, "aborted", diag);
        result.aborted = true;
        result.diagnostic = state_path;
        return false;
      }
      vals[obs.column] = v;
    }
    rec["values"] = vals;
    series << rec.dump() << "\n";
    series.flush();
    write_checkpoint(ckpt_path, u, step, t);
    result.last_t = t;
    result.last_step = step;
    return true;
  };

  if (!resumed) {
    if (!record(0, 0.0)) return result;
  } else {
    result.last_t = start_t;
    result.last_step = start_step;
  }

  for (long long s = start_step + 1; s <= nsteps; ++s) {
    u = config.params.integrator == IntegratorKind::strang
            ? step_strang(u, config.params.dt, config.params)
            : step_rk4(u, config.params.dt, config.params);
    const double t = double(s) * config.params.dt;
    if (s % config.cadence_steps == 0 || s == nsteps) {
      if (!record(s, t)) return result;
    }
    if (opts.stop_after_steps >= 0 && s >= opts.stop_after_steps &&
        s % config.cadence_steps == 0) {
      return result;  // manifest stays "running": resumable
    }
  }

  write_manifest(dir, config, columns, "complete");
  result.completed = true;
  return result;
}

SeriesData read_series(const std::string& run_dir) {
  std::ifstream mf(run_dir + "/manifest.json");
  if (!mf) throw std::runtime_error("no manifest.json in " + run_dir);
  const json manifest = json::parse(mf);

  SeriesData data;
  data.columns = manifest.at("columns").get<std::vector<std::string>>();

  std::ifstream in(run_dir + "/series.ndjson");
  if (!in) throw std::runtime_error("no series.ndjson in " + run_dir);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json rec = json::parse(line);
    data.t.push_back(rec.at("t").get<double>());
    data.step.push_back(rec.at("step").get<long long>());
    std::vector<double> row;
    for (const auto& c : data.columns)
      row.push_back(rec.at("values").at(c).get<double>());
    data.values.push_back(std::move(row));
  }
  return data;
}

std::vector<std::pair<double, double>> series_column(const SeriesData& data,
                                                     const std::string& name) {
  std::size_t col = data.columns.size();
  for (std::size_t i = 0; i < data.columns.size(); ++i)
    if (data.columns[i] == name) col = i;
  if (col == data.columns.size())
    throw std::invalid_argument("series has no column '" + name + "'");
  std::vector<std::pair<double, double>> out;
  out.reserve(data.t.size());
  for (std::size_t r = 0; r < data.t.size(); ++r)
    out.emplace_back(data.t[r], data.values[r][col]);
  return out;
}

}  // namespace nls
