#include <cstddef>

#include "coclust/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

#include <cmath>

namespace coclust::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    s = _mm_add_sd(s, _mm_unpackhi_pd(s, s));
    return _mm_cvtsd_f64(s);
}

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d m = _mm_max_pd(lo, hi);
    m = _mm_max_sd(m, _mm_unpackhi_pd(m, m));
    return _mm_cvtsd_f64(m);
}

}  // namespace

bool available() { return __builtin_cpu_supports("avx2"); }

double dot(std::span<const double> a, std::span<const double> b) {
    std::size_t n = a.size();
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(a.data() + i);
        __m256d vb = _mm256_loadu_pd(b.data() + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(va, vb));
    }
    double out = hsum(acc);
    for (; i < n; ++i) out += a[i] * b[i];
    return out;
}

double sum(std::span<const double> a) {
    std::size_t n = a.size();
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a.data() + i));
    double out = hsum(acc);
    for (; i < n; ++i) out += a[i];
    return out;
}

double sum_sq(std::span<const double> a) {
    std::size_t n = a.size();
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(a.data() + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    double out = hsum(acc);
    for (; i < n; ++i) out += a[i] * a[i];
    return out;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    std::size_t n = x.size();
    std::size_t i = 0;
    __m256d va = _mm256_set1_pd(alpha);
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(x.data() + i);
        __m256d vy = _mm256_loadu_pd(y.data() + i);
        _mm256_storeu_pd(y.data() + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale(std::span<double> a, double factor) {
    std::size_t n = a.size();
    std::size_t i = 0;
    __m256d vf = _mm256_set1_pd(factor);
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(a.data() + i, _mm256_mul_pd(_mm256_loadu_pd(a.data() + i), vf));
    }
    for (; i < n; ++i) a[i] *= factor;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    std::size_t n = a.size();
    std::size_t i = 0;
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i));
        acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign_mask, d));
    }
    double worst = hmax(acc);
    for (; i < n; ++i) {
        double d = std::fabs(a[i] - b[i]);
        if (d > worst) worst = d;
    }
    return worst;
}

}  // namespace coclust::kernels::avx2

#else  // !defined(__AVX2__)

namespace coclust::kernels::avx2 {

bool available() { return false; }

double dot(std::span<const double> a, std::span<const double> b) { return scalar::dot(a, b); }
double sum(std::span<const double> a) { return scalar::sum(a); }
double sum_sq(std::span<const double> a) { return scalar::sum_sq(a); }
void axpy(double alpha, std::span<const double> x, std::span<double> y) { scalar::axpy(alpha, x, y); }
void scale(std::span<double> a, double factor) { scalar::scale(a, factor); }
double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    return scalar::max_abs_diff(a, b);
}

}  // namespace coclust::kernels::avx2

#endif
