#include "agboost/kernels.hpp"

namespace agboost::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sign_dot_scalar(const double* w, const double* m, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += m[i] >= 0.0 ? w[i] : -w[i];
    return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void mul_scalar(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void neg_sign_scalar(const double* m, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = m[i] >= 0.0 ? -1.0 : 1.0;
}

constexpr KernelTable kScalar{"scalar", dot_scalar, sign_dot_scalar, axpy_scalar,
                              mul_scalar, neg_sign_scalar};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace agboost::kernels
