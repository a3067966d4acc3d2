#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "coclust/kernels.hpp"

namespace k = coclust::kernels;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) {
        x = (static_cast<double>(rng() >> 11) * 0x1.0p-53) * 20.0 - 10.0;
    }
    return v;
}

}  // namespace

TEST_CASE("scalar kernels match hand results") {
    std::vector<double> a{1.0, 2.0, 3.0};
    std::vector<double> b{4.0, -5.0, 6.0};
    CHECK(k::scalar::dot(a, b) == doctest::Approx(12.0));
    CHECK(k::scalar::sum(a) == doctest::Approx(6.0));
    CHECK(k::scalar::sum_sq(b) == doctest::Approx(77.0));
    CHECK(k::scalar::max_abs_diff(a, b) == doctest::Approx(7.0));

    std::vector<double> y{1.0, 1.0, 1.0};
    k::scalar::axpy(2.0, a, y);
    CHECK(y == std::vector<double>{3.0, 5.0, 7.0});
    k::scalar::scale(y, 0.5);
    CHECK(y == std::vector<double>{1.5, 2.5, 3.5});
}

TEST_CASE("empty spans are harmless") {
    std::vector<double> e;
    CHECK(k::scalar::dot(e, e) == 0.0);
    CHECK(k::scalar::sum(e) == 0.0);
    CHECK(k::avx2::sum(e) == 0.0);
    CHECK(k::scalar::max_abs_diff(e, e) == 0.0);
}

TEST_CASE("avx2 kernels agree with scalar reference") {
    if (!k::avx2::available()) return;
    std::mt19937_64 rng(20240601);
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 33u, 100u, 257u, 1024u}) {
        auto a = random_vec(rng, n);
        auto b = random_vec(rng, n);
        double scale_hint = 1.0 + std::fabs(k::scalar::sum_sq(a));

        CHECK(std::fabs(k::avx2::dot(a, b) - k::scalar::dot(a, b)) <= 1e-12 * scale_hint);
        CHECK(std::fabs(k::avx2::sum(a) - k::scalar::sum(a)) <= 1e-12 * scale_hint);
        CHECK(std::fabs(k::avx2::sum_sq(a) - k::scalar::sum_sq(a)) <= 1e-12 * scale_hint);
        // max and elementwise ops are order-independent, so exact
        CHECK(k::avx2::max_abs_diff(a, b) == k::scalar::max_abs_diff(a, b));

        auto y1 = b, y2 = b;
        k::scalar::axpy(1.75, a, y1);
        k::avx2::axpy(1.75, a, y2);
        CHECK(y1 == y2);
        k::scalar::scale(y1, 0.3);
        k::avx2::scale(y2, 0.3);
        CHECK(y1 == y2);
    }
}

TEST_CASE("avx2 reductions equal scalar exactly below vector width") {
    if (!k::avx2::available()) return;
    std::mt19937_64 rng(7);
    for (std::size_t n : {0u, 1u, 2u, 3u}) {
        auto a = random_vec(rng, n);
        auto b = random_vec(rng, n);
        CHECK(k::avx2::dot(a, b) == k::scalar::dot(a, b));
        CHECK(k::avx2::sum(a) == k::scalar::sum(a));
        CHECK(k::avx2::sum_sq(a) == k::scalar::sum_sq(a));
    }
}

TEST_CASE("backend selection is explicit and reversible") {
    k::Backend original = k::active();
    k::use(k::Backend::Scalar);
    CHECK(k::active() == k::Backend::Scalar);
    CHECK(k::name(k::active()) == "scalar");
    std::vector<double> a{1.0, 2.0};
    CHECK(k::dot(a, a) == 5.0);
    if (k::avx2::available()) {
        k::use(k::Backend::Avx2);
        CHECK(k::active() == k::Backend::Avx2);
        CHECK(k::dot(a, a) == 5.0);
    }
    k::use(original);
}
