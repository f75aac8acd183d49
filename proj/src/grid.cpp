#include "dplab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dplab/kernels.hpp"
#include "dplab/spectral.hpp"

namespace dplab {

Grid::Grid(double half_width, std::size_t n_points) : half_width_(half_width), n_(n_points) {
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw std::invalid_argument("grid half width must be positive");
  if (n_points < 16 || (n_points & (n_points - 1)) != 0)
    throw std::invalid_argument("grid size must be a power of two >= 16, got " + std::to_string(n_points));
  dx_ = 2.0 * half_width / static_cast<double>(n_points);
}

double Grid::wavenumber(std::size_t j) const {
  return std::numbers::pi * static_cast<double>(j) / half_width_;
}

GridFunction::GridFunction(const Grid& grid) : grid_(grid), values_(grid.size(), 0.0) {}

GridFunction::GridFunction(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw std::invalid_argument("sample count does not match grid size");
}

bool GridFunction::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

double GridFunction::max() const { return *std::max_element(values_.begin(), values_.end()); }
double GridFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }
double GridFunction::max_abs() const { return kernels::max_abs(values_); }

void require_same_grid(const GridFunction& a, const GridFunction& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("grid functions live on different grids");
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  require_same_grid(*this, other);
  kernels::axpy(values_, 1.0, other.values_);
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  require_same_grid(*this, other);
  kernels::axpy(values_, -1.0, other.values_);
  return *this;
}

GridFunction& GridFunction::operator*=(double a) {
  kernels::scale(values_, a);
  return *this;
}

GridFunction GridFunction::times(const GridFunction& other) const {
  require_same_grid(*this, other);
  GridFunction out(grid_);
  kernels::multiply(out.values_, values_, other.values_);
  return out;
}

GridFunction GridFunction::map(const std::function<double(double)>& f) const {
  GridFunction out(grid_);
  for (std::size_t k = 0; k < values_.size(); ++k) out.values_[k] = f(values_[k]);
  return out;
}

double integrate(const GridFunction& f) { return f.grid().dx() * kernels::sum(f.values()); }

double integrate_product(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  return f.grid().dx() * kernels::dot(f.values(), g.values());
}

double l2_norm(const GridFunction& f) { return std::sqrt(integrate_product(f, f)); }

namespace {
std::complex<double> derivative_symbol(double w, int order) {
  switch (order) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, w};
    case 2: return {-w * w, 0.0};
    case 3: return {0.0, -w * w * w};
    default: return {w * w * w * w, 0.0};
  }
}
}  // namespace

GridFunction differentiate(const GridFunction& f, int order) {
  if (order < 1 || order > 4) throw std::invalid_argument("derivative order must be in 1..4");
  const std::size_t nyquist = f.size() / 2;
  return apply_multiplier(f, [order, nyquist](double w, std::size_t j) {
    return j == nyquist ? std::complex<double>{} : derivative_symbol(w, order);
  });
}

SpectralInterpolant::SpectralInterpolant(const GridFunction& f)
    : grid_(f.grid()), coeffs_(forward_transform(f)) {}

double SpectralInterpolant::derivative(double x, int order) const {
  if (order < 0 || order > 4) throw std::invalid_argument("derivative order must be in 0..4");
  const std::size_t n = grid_.size();
  const std::size_t nyquist = n / 2;
  const double shift = x + grid_.half_width();
  double acc = order == 0 ? coeffs_[0].real() : 0.0;
  const std::complex<double> step = std::polar(1.0, grid_.wavenumber(1) * shift);
  std::complex<double> phase = step;
  for (std::size_t j = 1; j < nyquist; ++j) {
    if (j % 64 == 0) phase = std::polar(1.0, grid_.wavenumber(j) * shift);
    acc += 2.0 * (coeffs_[j] * derivative_symbol(grid_.wavenumber(j), order) * phase).real();
    phase *= step;
  }
  // The c2r convention keeps only the real part of the Nyquist coefficient.
  if (order == 0) acc += coeffs_[nyquist].real() * std::cos(grid_.wavenumber(nyquist) * shift);
  return acc / static_cast<double>(n);
}

}  // namespace dplab
