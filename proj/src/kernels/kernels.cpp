#include <cstdlib>
#include <string_view>

#include "coclust/errors.hpp"
#include "coclust/kernels.hpp"

namespace coclust::kernels {

namespace {

struct Table {
    Backend backend;
    double (*dot)(std::span<const double>, std::span<const double>);
    double (*sum)(std::span<const double>);
    double (*sum_sq)(std::span<const double>);
    void (*axpy)(double, std::span<const double>, std::span<double>);
    void (*scale)(std::span<double>, double);
    double (*max_abs_diff)(std::span<const double>, std::span<const double>);
};

constexpr Table kScalarTable{Backend::Scalar, scalar::dot,   scalar::sum,
                             scalar::sum_sq,  scalar::axpy,  scalar::scale,
                             scalar::max_abs_diff};
constexpr Table kAvx2Table{Backend::Avx2,   avx2::dot,   avx2::sum,
                           avx2::sum_sq,    avx2::axpy,  avx2::scale,
                           avx2::max_abs_diff};

Table initial_table() {
    const char* env = std::getenv("COCLUST_KERNELS");
    std::string_view want = env ? env : "auto";
    if (want == "scalar") return kScalarTable;
    if (want == "avx2" && avx2::available()) return kAvx2Table;
    if (want == "avx2") return kScalarTable;  // requested but unsupported
    return avx2::available() ? kAvx2Table : kScalarTable;
}

Table& table() {
    static Table t = initial_table();
    return t;
}

}  // namespace

Backend active() { return table().backend; }

void use(Backend backend) {
    switch (backend) {
        case Backend::Scalar:
            table() = kScalarTable;
            return;
        case Backend::Avx2:
            if (!avx2::available()) {
                throw InvalidArgument("avx2 kernels are not available on this machine");
            }
            table() = kAvx2Table;
            return;
    }
    throw InvalidArgument("unknown kernel backend");
}

std::string_view name(Backend backend) {
    return backend == Backend::Avx2 ? "avx2" : "scalar";
}

double dot(std::span<const double> a, std::span<const double> b) { return table().dot(a, b); }
double sum(std::span<const double> a) { return table().sum(a); }
double sum_sq(std::span<const double> a) { return table().sum_sq(a); }
void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    table().axpy(alpha, x, y);
}
void scale(std::span<double> a, double factor) { table().scale(a, factor); }
double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    return table().max_abs_diff(a, b);
}

}  // namespace coclust::kernels
