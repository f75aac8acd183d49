#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace dplab {

// Uniform periodic grid on [-D, D) with a power-of-two number of nodes.
class Grid {
 public:
  Grid(double half_width, std::size_t n_points);

  double half_width() const { return half_width_; }
  std::size_t size() const { return n_; }
  double dx() const { return dx_; }
  double length() const { return 2.0 * half_width_; }
  double node(std::size_t k) const { return -half_width_ + static_cast<double>(k) * dx_; }

  // Angular wavenumber of the j-th half-spectrum coefficient, 0 <= j <= n/2.
  double wavenumber(std::size_t j) const;
  double max_wavenumber() const { return wavenumber(n_ / 2); }
  std::size_t spectrum_size() const { return n_ / 2 + 1; }

  bool operator==(const Grid& other) const = default;

 private:
  double half_width_;
  std::size_t n_;
  double dx_;
};

class GridFunction {
 public:
  explicit GridFunction(const Grid& grid);
  GridFunction(const Grid& grid, std::vector<double> values);

  template <class F>
  static GridFunction sample(const Grid& grid, F&& f) {
    GridFunction out(grid);
    for (std::size_t k = 0; k < grid.size(); ++k) out.values_[k] = f(grid.node(k));
    return out;
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  double& operator[](std::size_t k) { return values_[k]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }

  bool all_finite() const;
  double max() const;
  double min() const;
  double max_abs() const;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double a);

  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(double s, GridFunction a) { return a *= s; }
  friend GridFunction operator*(GridFunction a, double s) { return a *= s; }

  // Pointwise product.
  GridFunction times(const GridFunction& other) const;
  GridFunction map(const std::function<double(double)>& f) const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

void require_same_grid(const GridFunction& a, const GridFunction& b);

// Periodic trapezoid rule: dx * sum_k f(x_k).
double integrate(const GridFunction& f);
// dx * sum_k f(x_k) g(x_k)
double integrate_product(const GridFunction& f, const GridFunction& g);
double l2_norm(const GridFunction& f);

// Fourier-multiplier derivative; the Nyquist coefficient is dropped for every order.
GridFunction differentiate(const GridFunction& f, int order);

// Trigonometric interpolant of a grid function, evaluable off the nodes.
class SpectralInterpolant {
 public:
  explicit SpectralInterpolant(const GridFunction& f);
  double operator()(double x) const { return derivative(x, 0); }
  double derivative(double x, int order) const;

 private:
  Grid grid_;
  std::vector<std::complex<double>> coeffs_;
};

}  // namespace dplab
