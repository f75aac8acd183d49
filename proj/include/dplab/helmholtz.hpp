#pragma once

#include "dplab/grid.hpp"

namespace dplab {

// Selects the operator (kappa^2 - d^2/dx^2); only kappa = 1 and kappa = 2 are admitted.
class HelmholtzParameter {
 public:
  explicit HelmholtzParameter(double kappa);
  static HelmholtzParameter one() { return HelmholtzParameter(1.0); }
  static HelmholtzParameter two() { return HelmholtzParameter(2.0); }

  // Bypasses validation. Exists so fault-injection tests can corrupt an operator.
  static HelmholtzParameter unchecked(double kappa);

  double kappa() const { return kappa_; }

 private:
  struct Unchecked {};
  HelmholtzParameter(double kappa, Unchecked) : kappa_(kappa) {}
  double kappa_;
};

// (kappa^2 - d^2)^{-1} f via the multiplier 1 / (kappa^2 + w^2).
GridFunction helmholtz_inverse(HelmholtzParameter kappa, const GridFunction& f);
// (kappa^2 - d^2) f via the multiplier kappa^2 + w^2.
GridFunction helmholtz_forward(HelmholtzParameter kappa, const GridFunction& f);
// (1 - d^2)^{-1} (4 - d^2)^{-1} f as a single multiplier.
GridFunction composed_inverse(const GridFunction& f);

}  // namespace dplab
