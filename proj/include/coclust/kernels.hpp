#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel primitives behind the clustering inner loops. Every kernel
// has a scalar reference implementation and an AVX2 variant; the top-level
// entry points dispatch through a table selected at startup from the CPU
// (override with COCLUST_KERNELS=scalar|avx2 or kernels::use()).
//
// Reductions accumulate lane-wise then combine, so SIMD results can differ
// from scalar in the last ulps. Selection is fixed per process, which keeps
// end-to-end runs bit-reproducible on a given machine.
namespace coclust::kernels {

enum class Backend { Scalar, Avx2 };

namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
double sum_sq(std::span<const double> a);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(std::span<double> a, double factor);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
}  // namespace scalar

namespace avx2 {
// False when the binary was built without AVX2 support or the CPU lacks it.
bool available();
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
double sum_sq(std::span<const double> a);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(std::span<double> a, double factor);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
}  // namespace avx2

Backend active();
// Switch backends explicitly. Throws InvalidArgument if unsupported here.
void use(Backend backend);
std::string_view name(Backend backend);

double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
double sum_sq(std::span<const double> a);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(std::span<double> a, double factor);
double max_abs_diff(std::span<const double> a, std::span<const double> b);

}  // namespace coclust::kernels
