#include "nlsgrow/dt_calculus.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "nlsgrow/ibp.hpp"

namespace nls {

namespace {

// Per-(dim, p) substitution tables: d/dt of d^alpha u and d^alpha conj(u),
// built lazily and shared. The table outlives all callers (static storage).
class SubstitutionTable {
 public:
  SubstitutionTable(int dim, int p) : dim_(dim), p_(p) {
    SymExpr u = SymExpr::field(dim, false);
    SymExpr nl = nonlinearity_expr(p, dim);
    // i Lap u - i u|u|^{p-1}
    dt_u_ = u.laplacian().scaled(GaussianRational::i()) -
            nl.scaled(GaussianRational::i());
    dt_uc_ = dt_u_.conjugated();
  }

  // d/dt of a single factor, with all spatial derivatives applied
  const SymExpr& dt_factor(const Factor& f, int cap) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(f);
    if (it != cache_.end()) return it->second;

    if (f.total_order() + 2 > cap)
      throw CapExceeded("time_derivative: factor order cap exceeded");

    SymExpr e = f.conj ? dt_uc_ : dt_u_;
    for (int a = 0; a < dim_; ++a)
      for (int q = 0; q < int(f.alpha[a]); ++q) e = e.spatial_derivative(a);
    return cache_.emplace(f, std::move(e)).first->second;
  }

 private:
  int dim_, p_;
  SymExpr dt_u_{1}, dt_uc_{1};
  std::mutex mutex_;
  std::map<Factor, SymExpr> cache_;
};

SubstitutionTable& table_for(int dim, int p) {
  static std::mutex m;
  static std::map<std::pair<int, int>, SubstitutionTable*> tables;
  std::lock_guard<std::mutex> lock(m);
  auto key = std::make_pair(dim, p);
  auto it = tables.find(key);
  if (it == tables.end())
    it = tables.emplace(key, new SubstitutionTable(dim, p)).first;
  return *it->second;
}

void require_odd_p(int p) {
  if (p < 3 || p % 2 == 0)
    throw std::invalid_argument(
        "symbolic time calculus requires an odd integer p >= 3");
}

}  // namespace

SymExpr nonlinearity_expr(int p, int dim) {
  require_odd_p(p);
  const int n = (p - 1) / 2;
  std::vector<Factor> fs;
  for (int j = 0; j < n + 1; ++j) fs.push_back(Factor{{0, 0, 0}, false});
  for (int j = 0; j < n; ++j) fs.push_back(Factor{{0, 0, 0}, true});
  return SymExpr::monomial(dim, 1, std::move(fs));
}

SymExpr time_derivative(const SymExpr& e, int p, int factor_order_cap) {
  require_odd_p(p);
  auto& table = table_for(e.dim(), p);
  SymExpr::Builder out(e.dim());
  for (const auto& m : e.terms()) {
    // Leibniz over factor positions
    for (std::size_t j = 0; j < m.factors.size(); ++j) {
      std::vector<Factor> rest;
      rest.reserve(m.factors.size() - 1);
      for (std::size_t l = 0; l < m.factors.size(); ++l)
        if (l != j) rest.push_back(m.factors[l]);
      const SymExpr& sub = table.dt_factor(m.factors[j], factor_order_cap);
      for (const auto& sm : sub.terms()) {
        std::vector<Factor> fs = rest;
        fs.insert(fs.end(), sm.factors.begin(), sm.factors.end());
        out.add(m.coeff * sm.coeff, fs);
      }
    }
  }
  return out.build();
}

SymExpr dt_power(int k, int p, int dim, int k_cap) {
  require_odd_p(p);
  if (k < 0) throw std::invalid_argument("dt_power: k must be >= 0");
  if (k > k_cap) throw CapExceeded("dt_power: k exceeds the configured cap");
  SymExpr e = SymExpr::field(dim, false);
  for (int j = 0; j < k; ++j) e = time_derivative(e, p);
  return e;
}

SymExpr dt_of_functional(const SymExpr& integrand, int p) {
  return ibp_normal_form(time_derivative(integrand, p));
}

}  // namespace nls
