#pragma once

#include <complex>
#include <vector>

#include "dplab/grid.hpp"

namespace dplab {

using Spectrum = std::vector<std::complex<double>>;

// Unnormalized real-to-complex DFT (n/2+1 coefficients).
Spectrum forward_transform(const GridFunction& f);
// Inverse of forward_transform, including the 1/n factor.
GridFunction inverse_transform(const Grid& grid, const Spectrum& coeffs);

// Multiplies coefficient j by m(omega_j, j) and transforms back.
template <class Multiplier>
GridFunction apply_multiplier(const GridFunction& f, Multiplier&& m) {
  const Grid& g = f.grid();
  Spectrum s = forward_transform(f);
  for (std::size_t j = 0; j < s.size(); ++j) s[j] *= m(g.wavenumber(j), j);
  return inverse_transform(g, s);
}

// Grid samples of the band-limited function whose continuous Fourier transform
// (int f(x) e^{-i w x} dx) is `transform`, truncated at the grid Nyquist frequency.
template <class Transform>
GridFunction synthesize(const Grid& g, Transform&& transform) {
  Spectrum s(g.spectrum_size());
  const double d = g.half_width();
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double w = g.wavenumber(j);
    s[j] = std::complex<double>(transform(w)) * std::polar(1.0, -w * d) / g.dx();
  }
  return inverse_transform(g, s);
}

}  // namespace dplab
