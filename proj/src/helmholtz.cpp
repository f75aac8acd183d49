#include "dplab/helmholtz.hpp"

#include <stdexcept>

#include "dplab/spectral.hpp"

namespace dplab {

HelmholtzParameter::HelmholtzParameter(double kappa) : kappa_(kappa) {
  if (kappa != 1.0 && kappa != 2.0) throw std::invalid_argument("Helmholtz parameter must be 1 or 2");
}

HelmholtzParameter HelmholtzParameter::unchecked(double kappa) { return HelmholtzParameter(kappa, Unchecked{}); }

GridFunction helmholtz_inverse(HelmholtzParameter kappa, const GridFunction& f) {
  const double k2 = kappa.kappa() * kappa.kappa();
  return apply_multiplier(f, [k2](double w, std::size_t) { return 1.0 / (k2 + w * w); });
}

GridFunction helmholtz_forward(HelmholtzParameter kappa, const GridFunction& f) {
  const double k2 = kappa.kappa() * kappa.kappa();
  return apply_multiplier(f, [k2](double w, std::size_t) { return k2 + w * w; });
}

GridFunction composed_inverse(const GridFunction& f) {
  return apply_multiplier(f, [](double w, std::size_t) {
    const double w2 = w * w;
    return 1.0 / ((1.0 + w2) * (4.0 + w2));
  });
}

}  // namespace dplab
