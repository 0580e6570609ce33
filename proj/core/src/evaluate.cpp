#include "nlsgrow/evaluate.hpp"

#include <stdexcept>

namespace nls {

const std::vector<Cplx>& FactorCache::samples(const Factor& f) {
  auto it = cache_.find(f);
  if (it != cache_.end()) return it->second;

  SpectralField d = dealias_ ? dealiased(u_) : u_;
  for (int a = 0; a < u_.grid.dim; ++a)
    if (f.alpha[a] > 0) d = derivative(d, a, f.alpha[a]);
  PhysicalField p = to_physical(d);
  if (f.conj)
    for (auto& v : p.samples) v = std::conj(v);
  return cache_.emplace(f, std::move(p.samples)).first->second;
}

namespace {

// sum of coeff * prod(factor samples) accumulated pointwise
PhysicalField accumulate(const SymExpr& e, FactorCache& cache) {
  const GridSpec& g = cache.field().grid;
  if (e.dim() != g.dim)
    throw std::invalid_argument("evaluate: expression/grid dimension mismatch");
  PhysicalField acc = PhysicalField::zero(g);
  const std::size_t n = acc.samples.size();
  std::vector<Cplx> prod(n);
  for (const auto& m : e.terms()) {
    const Cplx c = m.coeff.to_complex();
    std::fill(prod.begin(), prod.end(), c);
    for (const auto& f : m.factors) {
      const auto& s = cache.samples(f);
      for (std::size_t i = 0; i < n; ++i) prod[i] *= s[i];
    }
    for (std::size_t i = 0; i < n; ++i) acc.samples[i] += prod[i];
  }
  return acc;
}

}  // namespace

SpectralField evaluate(const SymExpr& e, FactorCache& cache) {
  SpectralField out = to_spectral(accumulate(e, cache));
  return cache.dealias() ? dealiased(out) : out;
}

SpectralField evaluate(const SymExpr& e, const SpectralField& u, bool dealias) {
  FactorCache cache(u, dealias);
  return evaluate(e, cache);
}

Cplx evaluate_integral(const SymExpr& e, FactorCache& cache) {
  const PhysicalField acc = accumulate(e, cache);
  Cplx sum = 0.0;
  for (const auto& v : acc.samples) sum += v;
  return sum / double(acc.samples.size());
}

Cplx evaluate_integral(const SymExpr& e, const SpectralField& u, bool dealias) {
  FactorCache cache(u, dealias);
  return evaluate_integral(e, cache);
}

}  // namespace nls
