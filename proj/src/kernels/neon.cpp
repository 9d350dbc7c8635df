#include <arm_neon.h>

#include "agboost/kernels.hpp"

namespace agboost::kernels {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vaddq_f64(acc0, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
        acc1 = vaddq_f64(acc1, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sign_dot_neon(const double* w, const double* m, std::size_t n) {
    const float64x2_t zero = vdupq_n_f64(0.0);
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t wv = vld1q_f64(w + i);
        uint64x2_t ge = vcgeq_f64(vld1q_f64(m + i), zero);
        acc = vaddq_f64(acc, vbslq_f64(ge, wv, vnegq_f64(wv)));
    }
    double total = vaddvq_f64(acc);
    for (; i < n; ++i) total += m[i] >= 0.0 ? w[i] : -w[i];
    return total;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
    const float64x2_t a = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(a, vld1q_f64(x + i))));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void mul_neon(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void neg_sign_neon(const double* m, double* out, std::size_t n) {
    const float64x2_t zero = vdupq_n_f64(0.0);
    const float64x2_t plus = vdupq_n_f64(1.0);
    const float64x2_t minus = vdupq_n_f64(-1.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(out + i, vbslq_f64(vcgeq_f64(vld1q_f64(m + i), zero), minus, plus));
    for (; i < n; ++i) out[i] = m[i] >= 0.0 ? -1.0 : 1.0;
}

constexpr KernelTable kNeon{"neon", dot_neon, sign_dot_neon, axpy_neon, mul_neon, neg_sign_neon};

}  // namespace

const KernelTable* neon_compiled_table() { return &kNeon; }

}  // namespace agboost::kernels
