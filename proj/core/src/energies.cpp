#include "nlsgrow/energies.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include <nlohmann/json.hpp>

namespace nls {

namespace {

using json = nlohmann::json;

double real_checked(Cplx v, const char* what) {
  // energies are real-valued functionals; a large imaginary part means a bug
  if (std::abs(v.imag()) > 1e-8 * (1.0 + std::abs(v.real())))
    throw std::runtime_error(std::string(what) +
                             ": imaginary part beyond tolerance");
  return v.real();
}

// (u conj(u))^q as an expression
SymExpr modulus_sq_power(int dim, int q) {
  std::vector<Factor> fs;
  for (int j = 0; j < q; ++j) {
    fs.push_back(Factor{{0, 0, 0}, false});
    fs.push_back(Factor{{0, 0, 0}, true});
  }
  return SymExpr::monomial(dim, 1, std::move(fs));
}

struct EvenPieces {
  SymExpr integrand;    // full E_{2k} integrand
  SymExpr r_integrand;  // the two integral terms only
  SymExpr ddt;          // normal form of d/dt E_{2k}
  EvenPieces() : integrand(1), r_integrand(1), ddt(1) {}
};

const EvenPieces& even_pieces(int dim, int k, int p) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, EvenPieces*> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_tuple(dim, k, p);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;

  auto* pieces = new EvenPieces;
  const SymExpr dtk = dt_power(k, p, dim);
  const SymExpr mod2 = SymExpr::field(dim, false) * SymExpr::field(dim, true);
  const GaussianRational quarter(BigRat(-(p - 1), 4));

  SymExpr::Builder r(dim);
  // -(p-1)/4 sum_a |dt^{k-1} d_a(|u|^2)|^2 |u|^{p-3}
  SymExpr root = mod2;
  for (int j = 0; j < k - 1; ++j) root = time_derivative(root, p);
  for (int a = 0; a < dim; ++a) {
    SymExpr xa = root.spatial_derivative(a);
    r.add_expr((xa * xa.conjugated()) * modulus_sq_power(dim, (p - 3) / 2),
               quarter);
  }
  // -|dt^{k-1}(|u|^{p-1} u)|^2
  SymExpr b = nonlinearity_expr(p, dim);
  for (int j = 0; j < k - 1; ++j) b = time_derivative(b, p);
  r.add_expr(b * b.conjugated(), GaussianRational(-1));

  pieces->r_integrand = r.build();
  pieces->integrand = dtk * dtk.conjugated() + pieces->r_integrand;
  pieces->ddt = dt_of_functional(pieces->integrand, p);

  cache.emplace(key, pieces);
  return *pieces;
}

struct OddPieces {
  SymExpr dt1;                     // dt u
  std::vector<SymExpr> dt1_grad;   // d_a dt u
  SymExpr tail_integrand;          // the two integral terms
  SymExpr integrand;               // full E_3 integrand
  SymExpr ddt;                     // normal form of d/dt E_3
  OddPieces() : dt1(1), tail_integrand(1), integrand(1), ddt(1) {}
};

const OddPieces& odd_pieces(int dim, int p) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, OddPieces*> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(dim, p);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;

  auto* pieces = new OddPieces;
  pieces->dt1 = dt_power(1, p, dim);
  const SymExpr mod2 = SymExpr::field(dim, false) * SymExpr::field(dim, true);
  const SymExpr x = time_derivative(mod2, p);  // dt(|u|^2)

  SymExpr::Builder head(dim);
  for (int a = 0; a < dim; ++a) {
    pieces->dt1_grad.push_back(pieces->dt1.spatial_derivative(a));
    head.add_expr(pieces->dt1_grad.back() *
                      pieces->dt1_grad.back().conjugated(),
                  GaussianRational(BigRat(1, 2)));
  }

  SymExpr::Builder tail(dim);
  tail.add_expr(modulus_sq_power(dim, (p - 1) / 2) *
                    (pieces->dt1 * pieces->dt1.conjugated()),
                GaussianRational(BigRat(1, 2)));
  tail.add_expr(modulus_sq_power(dim, (p - 3) / 2) * (x * x.conjugated()),
                GaussianRational(BigRat(p - 1, 8)));
  pieces->tail_integrand = tail.build();
  pieces->integrand = head.build() + pieces->tail_integrand;
  pieces->ddt = dt_of_functional(pieces->integrand, p);

  cache.emplace(key, pieces);
  return *pieces;
}

// shared scratch for the pointwise F2 quantities
struct F2Point {
  std::vector<Cplx> u, dtu;
  std::vector<std::vector<Cplx>> grad;
  const GridSpec* grid = nullptr;
};

F2Point f2_pointwise(const SpectralField& u, const EnergySpec& spec) {
  NLSParams params;
  params.dim = u.grid.dim;
  params.p = spec.p;
  params.dealias = false;  // nonlinearity is not polynomial; masks cannot
                           // dealias it, they would only distort
  params.allow_any_regime = true;
  F2Point out;
  out.grid = &u.grid;
  out.u = to_physical(u).samples;
  out.dtu = to_physical(nls_rhs(u, params)).samples;
  for (const auto& d : gradient(u)) out.grad.push_back(to_physical(d).samples);
  return out;
}

}  // namespace

void EnergySpec::validate() const {
  if (!(eps_reg >= 0.0))
    throw std::invalid_argument("EnergySpec: eps_reg must be >= 0");
  switch (kind) {
    case EnergyKind::even:
      odd_integer_p();
      if (k < 1) throw std::invalid_argument("EnergySpec: k must be >= 1");
      if (k > 2)
        throw CapExceeded("EnergySpec: even energies supported for k <= 2");
      break;
    case EnergyKind::odd:
      odd_integer_p();
      if (k != 1)
        throw std::invalid_argument(
            "EnergySpec: odd energies supported for k = 1 only (higher k has "
            "undetermined correction constants)");
      break;
    case EnergyKind::f2:
      if (!(p > 2.0 && p < 3.0))
        throw std::invalid_argument("EnergySpec: f2 requires 2 < p < 3");
      break;
  }
}

int EnergySpec::odd_integer_p() const {
  if (!is_odd_integer_p(p))
    throw std::invalid_argument(
        "EnergySpec: symbolic energies require an odd integer p >= 3");
  return int(std::lround(p));
}

std::string EnergySpec::name() const {
  switch (kind) {
    case EnergyKind::even: return "E" + std::to_string(2 * k);
    case EnergyKind::odd: return "E" + std::to_string(2 * k + 1);
    default: return "F2";
  }
}

std::string EnergySpec::label() const {
  std::ostringstream os;
  os << name() << "_p" << p;
  return os.str();
}

double energy_even(const SpectralField& u, const EnergySpec& spec) {
  spec.validate();
  if (spec.kind != EnergyKind::even)
    throw std::invalid_argument("energy_even: spec.kind must be even");
  const int p = spec.odd_integer_p();
  const auto& pieces = even_pieces(u.grid.dim, spec.k, p);
  FactorCache cache(u, true);
  const double lead = mass(evaluate(dt_power(spec.k, p, u.grid.dim), cache));
  return lead + real_checked(evaluate_integral(pieces.r_integrand, cache),
                             "energy_even");
}

double residual_r2k(const SpectralField& u, const EnergySpec& spec) {
  spec.validate();
  const int p = spec.odd_integer_p();
  const auto& pieces = even_pieces(u.grid.dim, spec.k, p);
  return real_checked(evaluate_integral(pieces.r_integrand, u),
                      "residual_r2k");
}

double energy_odd(const SpectralField& u, const EnergySpec& spec) {
  spec.validate();
  if (spec.kind != EnergyKind::odd)
    throw std::invalid_argument("energy_odd: spec.kind must be odd");
  const int p = spec.odd_integer_p();
  const auto& pieces = odd_pieces(u.grid.dim, p);
  FactorCache cache(u, true);
  double head = 0.0;
  for (const auto& e : pieces.dt1_grad) head += 0.5 * mass(evaluate(e, cache));
  return head + real_checked(evaluate_integral(pieces.tail_integrand, cache),
                             "energy_odd");
}

double energy_f2(const SpectralField& u, const EnergySpec& spec) {
  spec.validate();
  if (spec.kind != EnergyKind::f2)
    throw std::invalid_argument("energy_f2: spec.kind must be f2");
  const double p = spec.p;
  const double eps2 = spec.eps_reg * spec.eps_reg;
  const F2Point pt = f2_pointwise(u, spec);
  const std::size_t n = pt.u.size();

  double dtu_sq = 0.0, grad_abs_term = 0.0, pow_term = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dtu_sq += std::norm(pt.dtu[i]);
    const double m2 = std::norm(pt.u[i]);
    const double meps = std::sqrt(m2 + eps2);
    double ga2 = 0.0;
    for (const auto& g : pt.grad) {
      const double ga = (std::conj(pt.u[i]) * g[i]).real() / meps;
      ga2 += ga * ga;
    }
    grad_abs_term += std::pow(m2, (p - 1.0) / 2.0) * ga2;
    pow_term += std::pow(m2, p);
  }
  const double inv_n = 1.0 / double(n);
  return dtu_sq * inv_n - (p - 1.0) * grad_abs_term * inv_n -
         (p - 1.0) / p * pow_term * inv_n;
}

double f2_rhs(const SpectralField& u, const EnergySpec& spec) {
  spec.validate();
  const double p = spec.p;
  const double eps2 = spec.eps_reg * spec.eps_reg;
  const F2Point pt = f2_pointwise(u, spec);
  const std::size_t n = pt.u.size();

  double term1 = 0.0, term2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double m2 = std::norm(pt.u[i]);
    const double meps = std::sqrt(m2 + eps2);
    const double dt_abs = (std::conj(pt.u[i]) * pt.dtu[i]).real() / meps;
    double ga2 = 0.0, g2 = 0.0;
    for (const auto& g : pt.grad) {
      const double ga = (std::conj(pt.u[i]) * g[i]).real() / meps;
      ga2 += ga * ga;
      g2 += std::norm(g[i]);
    }
    const double wp2 = std::pow(m2, (p - 2.0) / 2.0);
    term1 += wp2 * dt_abs * ga2;
    term2 += wp2 * dt_abs * g2;
  }
  const double inv_n = 1.0 / double(n);
  return (p - 1.0) * (p - 3.0) * term1 * inv_n +
         2.0 * (p - 1.0) * term2 * inv_n;
}

double even_identity_rhs(const SpectralField& u, const EnergySpec& spec) {
  spec.validate();
  const int p = spec.odd_integer_p();
  const auto& pieces = even_pieces(u.grid.dim, spec.k, p);
  return real_checked(evaluate_integral(pieces.ddt, u), "even_identity_rhs");
}

double odd_identity_rhs(const SpectralField& u, const EnergySpec& spec) {
  spec.validate();
  const int p = spec.odd_integer_p();
  const auto& pieces = odd_pieces(u.grid.dim, p);
  return real_checked(evaluate_integral(pieces.ddt, u), "odd_identity_rhs");
}

double energy_value(const SpectralField& u, const EnergySpec& spec) {
  switch (spec.kind) {
    case EnergyKind::even: return energy_even(u, spec);
    case EnergyKind::odd: return energy_odd(u, spec);
    default: return energy_f2(u, spec);
  }
}

double identity_rhs_value(const SpectralField& u, const EnergySpec& spec) {
  switch (spec.kind) {
    case EnergyKind::even: return even_identity_rhs(u, spec);
    case EnergyKind::odd: return odd_identity_rhs(u, spec);
    default: return f2_rhs(u, spec);
  }
}

const SymExpr& energy_even_integrand(int dim, int k, int p) {
  return even_pieces(dim, k, p).integrand;
}
const SymExpr& energy_even_ddt(int dim, int k, int p) {
  return even_pieces(dim, k, p).ddt;
}
const SymExpr& energy_odd_integrand(int dim, int p) {
  return odd_pieces(dim, p).integrand;
}
const SymExpr& energy_odd_ddt(int dim, int p) {
  return odd_pieces(dim, p).ddt;
}

SymExpr mass_integrand(int dim) {
  return SymExpr::field(dim, false) * SymExpr::field(dim, true);
}

SymExpr hamiltonian_integrand(int dim, int p) {
  SymExpr u = SymExpr::field(dim, false);
  SymExpr uc = SymExpr::field(dim, true);
  SymExpr::Builder b(dim);
  for (int a = 0; a < dim; ++a)
    b.add_expr(u.spatial_derivative(a) * uc.spatial_derivative(a));
  b.add_expr(modulus_sq_power(dim, (p + 1) / 2),
             GaussianRational(BigRat(1, p + 1)));
  return b.build();
}

IdentityReport identity_check(const Trajectory& traj, const EnergySpec& spec,
                              const std::vector<double>& widths) {
  spec.validate();
  if (widths.empty())
    throw std::invalid_argument("identity_check: no widths given");
  const std::size_t nsamp = traj.times.size();
  if (nsamp < 3)
    throw std::invalid_argument("identity_check: insufficient samples");

  // uniform cadence required; a trailing short interval is dropped
  const double dt = traj.times[1] - traj.times[0];
  std::size_t usable = nsamp;
  for (std::size_t i = 2; i < nsamp; ++i) {
    if (std::abs((traj.times[i] - traj.times[i - 1]) - dt) > 1e-9 * dt) {
      usable = i;
      break;
    }
  }

  std::vector<int> steps;
  int max_step = 0;
  for (double h : widths) {
    const int m = int(std::lround(h / dt));
    if (m < 1 || std::abs(m * dt - h) > 1e-9 * std::max(h, dt))
      throw std::invalid_argument(
          "identity_check: width is not a multiple of the sample spacing");
    steps.push_back(m);
    max_step = std::max(max_step, m);
  }
  if (usable < std::size_t(2 * max_step + 1))
    throw std::invalid_argument("identity_check: insufficient samples");

  std::vector<double> energy(usable), rhs(usable);
  for (std::size_t i = 0; i < usable; ++i) {
    energy[i] = energy_value(traj.states[i], spec);
    rhs[i] = identity_rhs_value(traj.states[i], spec);
  }

  IdentityReport report;
  report.spec = spec;
  report.sample_dt = dt;

  for (std::size_t w = 0; w < widths.size(); ++w) {
    const int m = steps[w];
    IdentityReport::WidthLine line;
    line.h = m * dt;
    double sumsq = 0.0;
    for (std::size_t i = max_step; i + max_step < usable; ++i) {
      const double lhs =
          (energy[i + m] - energy[i - m]) / (2.0 * double(m) * dt);
      const double r = lhs - rhs[i];
      line.t.push_back(traj.times[i]);
      line.lhs.push_back(lhs);
      line.rhs.push_back(rhs[i]);
      line.residual.push_back(r);
      line.max_abs_residual = std::max(line.max_abs_residual, std::abs(r));
      sumsq += r * r;
    }
    line.rms_residual =
        line.residual.empty() ? 0.0 : std::sqrt(sumsq / line.residual.size());
    report.lines.push_back(std::move(line));
  }

  // Richardson order: slope of log(max residual) against log(h)
  if (report.lines.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    const double n = double(report.lines.size());
    for (const auto& line : report.lines) {
      const double x = std::log(line.h);
      const double y = std::log(std::max(line.max_abs_residual, 1e-300));
      sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
    }
    const double denom = n * sxx - sx * sx;
    report.fitted_order = (n * sxy - sx * sy) / denom;
    const double ss_tot = syy - sy * sy / n;
    const double b = (sy - report.fitted_order * sx) / n;
    double ss_res = 0.0;
    for (const auto& line : report.lines) {
      const double x = std::log(line.h);
      const double y = std::log(std::max(line.max_abs_residual, 1e-300));
      const double e = y - (report.fitted_order * x + b);
      ss_res += e * e;
    }
    report.order_fit_r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  }
  return report;
}

std::string IdentityReport::to_json_string() const {
  json j;
  j["energy"] = spec.name();
  j["kind"] = spec.kind == EnergyKind::even
                  ? "even"
                  : (spec.kind == EnergyKind::odd ? "odd" : "f2");
  j["k"] = spec.k;
  j["p"] = spec.p;
  j["eps_reg"] = spec.eps_reg;
  j["sample_dt"] = sample_dt;
  j["fitted_order"] = fitted_order;
  j["order_fit_r2"] = order_fit_r2;
  j["widths"] = json::array();
  for (const auto& line : lines) {
    json lw;
    lw["h"] = line.h;
    lw["t"] = line.t;
    lw["lhs"] = line.lhs;
    lw["rhs"] = line.rhs;
    lw["residual"] = line.residual;
    lw["max_abs_residual"] = line.max_abs_residual;
    lw["rms_residual"] = line.rms_residual;
    j["widths"].push_back(std::move(lw));
  }
  return j.dump(2);
}

}  // namespace nls
