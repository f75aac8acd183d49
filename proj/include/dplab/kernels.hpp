#pragma once

#include <cstddef>
#include <span>

// Data-parallel grid kernels. Reductions split the index range into fixed
// blocks and add the block partials in order, so results do not depend on
// the number of OpenMP threads.
namespace dplab::kernels {

inline constexpr std::size_t kBlock = 1024;

double sum(std::span<const double> a);
double dot(std::span<const double> a, std::span<const double> b);
// sum_k a_k b_k w_k
double dot3(std::span<const double> a, std::span<const double> b, std::span<const double> w);
double max_abs(std::span<const double> a);

void scale(std::span<double> a, double s);
// y += s * x
void axpy(std::span<double> y, double s, std::span<const double> x);
// out = a * b
void multiply(std::span<double> out, std::span<const double> a, std::span<const double> b);
// out = x + s * k
void offset(std::span<double> out, std::span<const double> x, double s, std::span<const double> k);
// out += (k1 + 2 k2 + 2 k3 + k4) * h / 6
void rk4_combine(std::span<double> out, double h, std::span<const double> k1, std::span<const double> k2,
                 std::span<const double> k3, std::span<const double> k4);

// Straightforward single-threaded versions, kept as the reference the
// parallel kernels are tested and benchmarked against.
namespace serial {
double sum(std::span<const double> a);
double dot(std::span<const double> a, std::span<const double> b);
double dot3(std::span<const double> a, std::span<const double> b, std::span<const double> w);
double max_abs(std::span<const double> a);
void scale(std::span<double> a, double s);
void axpy(std::span<double> y, double s, std::span<const double> x);
void multiply(std::span<double> out, std::span<const double> a, std::span<const double> b);
void offset(std::span<double> out, std::span<const double> x, double s, std::span<const double> k);
void rk4_combine(std::span<double> out, double h, std::span<const double> k1, std::span<const double> k2,
                 std::span<const double> k3, std::span<const double> k4);
}  // namespace serial

}  // namespace dplab::kernels
