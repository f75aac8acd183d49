#include "dplab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace dplab::kernels {
namespace {

template <class Term>
double blocked_sum(std::size_t n, Term term) {
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(nblocks, 0.0);
  const auto nb = static_cast<std::ptrdiff_t>(nblocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(n, lo + kBlock);
    double s = 0.0;
    for (std::size_t k = lo; k < hi; ++k) s += term(k);
    partial[static_cast<std::size_t>(b)] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

template <class Body>
void parallel_for(std::size_t n, Body body) {
  const auto ni = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < ni; ++k) body(static_cast<std::size_t>(k));
}

}  // namespace

double sum(std::span<const double> a) {
  return blocked_sum(a.size(), [&](std::size_t k) { return a[k]; });
}

double dot(std::span<const double> a, std::span<const double> b) {
  return blocked_sum(a.size(), [&](std::size_t k) { return a[k] * b[k]; });
}

double dot3(std::span<const double> a, std::span<const double> b, std::span<const double> w) {
  return blocked_sum(a.size(), [&](std::size_t k) { return a[k] * b[k] * w[k]; });
}

double max_abs(std::span<const double> a) {
  double m = 0.0;
  const auto n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for reduction(max : m) schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) m = std::max(m, std::abs(a[static_cast<std::size_t>(k)]));
  return m;
}

void scale(std::span<double> a, double s) {
  parallel_for(a.size(), [&](std::size_t k) { a[k] *= s; });
}

void axpy(std::span<double> y, double s, std::span<const double> x) {
  parallel_for(y.size(), [&](std::size_t k) { y[k] += s * x[k]; });
}

void multiply(std::span<double> out, std::span<const double> a, std::span<const double> b) {
  parallel_for(out.size(), [&](std::size_t k) { out[k] = a[k] * b[k]; });
}

void offset(std::span<double> out, std::span<const double> x, double s, std::span<const double> k) {
  parallel_for(out.size(), [&](std::size_t i) { out[i] = x[i] + s * k[i]; });
}

void rk4_combine(std::span<double> out, double h, std::span<const double> k1, std::span<const double> k2,
                 std::span<const double> k3, std::span<const double> k4) {
  const double w = h / 6.0;
  parallel_for(out.size(), [&](std::size_t i) { out[i] += w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]); });
}

namespace serial {

double sum(std::span<const double> a) {
  double s = 0.0;
  for (double x : a) s += x;
  return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double dot3(std::span<const double> a, std::span<const double> b, std::span<const double> w) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k] * w[k];
  return s;
}

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

void scale(std::span<double> a, double s) {
  for (double& x : a) x *= s;
}

void axpy(std::span<double> y, double s, std::span<const double> x) {
  for (std::size_t k = 0; k < y.size(); ++k) y[k] += s * x[k];
}

void multiply(std::span<double> out, std::span<const double> a, std::span<const double> b) {
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] * b[k];
}

void offset(std::span<double> out, std::span<const double> x, double s, std::span<const double> k) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] + s * k[i];
}

void rk4_combine(std::span<double> out, double h, std::span<const double> k1, std::span<const double> k2,
                 std::span<const double> k3, std::span<const double> k4) {
  const double w = h / 6.0;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace serial
}  // namespace dplab::kernels
