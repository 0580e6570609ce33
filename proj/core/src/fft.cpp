// FFTW-backed transforms. Plans are created once per (shape, direction) under
// a mutex and reused via the new-array execute API; FFTW_UNALIGNED lifts the
// alignment requirement so plans run on any caller buffer. FFTW's FORWARD
// sign convention e^{-i k.x} matches our analysis transform, so to_spectral
// is FORWARD scaled by 1/N (exact: N is a power of two) and to_physical is
// BACKWARD unscaled.

#include "nlsgrow/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace nls {

namespace {

using PlanKey = std::pair<std::array<int, 3>, int>;  // (dims padded, sign)

std::mutex g_plan_mutex;
std::map<PlanKey, fftw_plan>& plan_cache() {
  static std::map<PlanKey, fftw_plan> cache;
  return cache;
}

fftw_plan get_plan(const GridSpec& g, int sign) {
  std::array<int, 3> dims{1, 1, 1};
  for (int a = 0; a < g.dim; ++a) dims[a] = g.n[a];
  PlanKey key{dims, sign};

  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto it = plan_cache().find(key);
  if (it != plan_cache().end()) return it->second;

  const std::size_t total = g.size();
  fftw_complex* in = fftw_alloc_complex(total);
  fftw_complex* out = fftw_alloc_complex(total);
  fftw_plan plan = fftw_plan_dft(g.dim, g.n.data(), in, out, sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(in);
  fftw_free(out);
  plan_cache().emplace(key, plan);
  return plan;
}

void run(const GridSpec& g, int sign, const std::vector<Cplx>& in,
         std::vector<Cplx>& out) {
  out.resize(in.size());
  fftw_plan plan = get_plan(g, sign);
  // new-array execute; in is not modified for out-of-place c2c transforms
  fftw_execute_dft(plan,
                   reinterpret_cast<fftw_complex*>(const_cast<Cplx*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

PhysicalField to_physical(const SpectralField& f) {
  PhysicalField out{f.grid, {}};
  run(f.grid, FFTW_BACKWARD, f.coeffs, out.samples);
  return out;
}

SpectralField to_spectral(const PhysicalField& f) {
  SpectralField out{f.grid, {}};
  run(f.grid, FFTW_FORWARD, f.samples, out.coeffs);
  const double scale = 1.0 / double(f.grid.size());
  for (auto& c : out.coeffs) c *= scale;
  return out;
}

}  // namespace nls
