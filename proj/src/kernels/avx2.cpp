#include <immintrin.h>

#include "agboost/kernels.hpp"

// Compiled with -mavx2. Only reachable after a runtime CPU check.
// axpy/mul/neg_sign avoid FMA so they are bit-identical to the scalar path.

namespace agboost::kernels {
namespace {

double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
        acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(a + i + 4),
                                                 _mm256_loadu_pd(b + i + 4)));
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sign_dot_avx2(const double* w, const double* m, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d signbit = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d wv = _mm256_loadu_pd(w + i);
        __m256d ge = _mm256_cmp_pd(_mm256_loadu_pd(m + i), zero, _CMP_GE_OQ);
        // flip the sign of w where m < 0
        __m256d flip = _mm256_andnot_pd(ge, signbit);
        acc = _mm256_add_pd(acc, _mm256_xor_pd(wv, flip));
    }
    double total = hsum(acc);
    for (; i < n; ++i) total += m[i] >= 0.0 ? w[i] : -w[i];
    return total;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d a = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d yv = _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(a, _mm256_loadu_pd(x + i)));
        _mm256_storeu_pd(y + i, yv);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void mul_avx2(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void neg_sign_avx2(const double* m, double* out, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d plus = _mm256_set1_pd(1.0);
    const __m256d minus = _mm256_set1_pd(-1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d ge = _mm256_cmp_pd(_mm256_loadu_pd(m + i), zero, _CMP_GE_OQ);
        _mm256_storeu_pd(out + i, _mm256_blendv_pd(plus, minus, ge));
    }
    for (; i < n; ++i) out[i] = m[i] >= 0.0 ? -1.0 : 1.0;
}

constexpr KernelTable kAvx2{"avx2", dot_avx2, sign_dot_avx2, axpy_avx2, mul_avx2, neg_sign_avx2};

}  // namespace

const KernelTable* avx2_compiled_table() { return &kAvx2; }

}  // namespace agboost::kernels
