#pragma once

// Data-parallel inner loops shared by the learners, the booster and the
// oracles. Every kernel has a scalar reference implementation; AVX2 (x86-64)
// and NEON (aarch64) variants are selected once at runtime.
//
// Setting AGBOOST_SIMD=scalar|avx2|neon in the environment overrides the
// automatic choice (an unavailable request falls back to scalar).

#include <cstddef>
#include <span>

namespace agboost::kernels {

struct KernelTable {
    const char* name;
    /// sum_i a[i] * b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    /// sum_i w[i] * sgn(m[i]) with sgn(0) = +1
    double (*sign_dot)(const double* w, const double* m, std::size_t n);
    /// y[i] += alpha * x[i]
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    /// out[i] = a[i] * b[i]
    void (*mul)(const double* a, const double* b, double* out, std::size_t n);
    /// out[i] = -sgn(m[i])
    void (*neg_sign)(const double* m, double* out, std::size_t n);
};

const KernelTable& scalar_table();
/// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelTable* avx2_table();
const KernelTable* neon_table();

/// The table chosen for this process (stable for the process lifetime).
const KernelTable& active();

double dot(std::span<const double> a, std::span<const double> b);
double sign_dot(std::span<const double> w, std::span<const double> m);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void mul(std::span<const double> a, std::span<const double> b, std::span<double> out);
void neg_sign(std::span<const double> m, std::span<double> out);

}  // namespace agboost::kernels
