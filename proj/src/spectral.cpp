#include "dplab/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

#include "dplab/kernels.hpp"

namespace dplab {
namespace {

struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

// Plans are created once per size under a lock; executing a plan on new arrays
// through the guru-style fftw_execute_dft_* calls is thread-safe.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.r2c);
      fftw_destroy_plan(p.c2r);
    }
  }

  const PlanPair& get(std::size_t n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    std::vector<double> real(n);
    std::vector<fftw_complex> cplx(n / 2 + 1);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    const int ni = static_cast<int>(n);
    PlanPair p;
    p.r2c = fftw_plan_dft_r2c_1d(ni, real.data(), cplx.data(), flags);
    p.c2r = fftw_plan_dft_c2r_1d(ni, cplx.data(), real.data(), flags | FFTW_DESTROY_INPUT);
    if (!p.r2c || !p.c2r) throw std::runtime_error("FFTW plan creation failed");
    return plans_.emplace(n, p).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

Spectrum forward_transform(const GridFunction& f) {
  const std::size_t n = f.size();
  const PlanPair& p = cache().get(n);
  Spectrum out(n / 2 + 1);
  // r2c does not modify its input, the cast only satisfies the C signature.
  fftw_execute_dft_r2c(p.r2c, const_cast<double*>(f.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

GridFunction inverse_transform(const Grid& grid, const Spectrum& coeffs) {
  const std::size_t n = grid.size();
  if (coeffs.size() != n / 2 + 1) throw std::invalid_argument("spectrum size does not match grid");
  const PlanPair& p = cache().get(n);
  Spectrum work = coeffs;
  GridFunction out(grid);
  fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(work.data()), out.data());
  kernels::scale(out.values(), 1.0 / static_cast<double>(n));
  return out;
}

}  // namespace dplab
