#include <cassert>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "agboost/kernels.hpp"

namespace agboost::kernels {

#if defined(AGBOOST_HAVE_AVX2_TU)
const KernelTable* avx2_compiled_table();
#endif
#if defined(AGBOOST_HAVE_NEON_TU)
const KernelTable* neon_compiled_table();
#endif

const KernelTable* avx2_table() {
#if defined(AGBOOST_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? avx2_compiled_table() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable* neon_table() {
#if defined(AGBOOST_HAVE_NEON_TU)
    return neon_compiled_table();  // NEON is mandatory on aarch64
#else
    return nullptr;
#endif
}

namespace {

const KernelTable& choose() {
    const char* env = std::getenv("AGBOOST_SIMD");
    const std::string_view want = env ? env : "";
    if (want == "scalar") return scalar_table();
    if (want == "avx2") return avx2_table() ? *avx2_table() : scalar_table();
    if (want == "neon") return neon_table() ? *neon_table() : scalar_table();
    if (const auto* t = avx2_table()) return *t;
    if (const auto* t = neon_table()) return *t;
    return scalar_table();
}

void require_same(std::size_t a, std::size_t b) {
    if (a != b) throw std::invalid_argument("kernel operands differ in length");
}

}  // namespace

const KernelTable& active() {
    static const KernelTable& table = choose();
    return table;
}

double dot(std::span<const double> a, std::span<const double> b) {
    require_same(a.size(), b.size());
    return active().dot(a.data(), b.data(), a.size());
}

double sign_dot(std::span<const double> w, std::span<const double> m) {
    require_same(w.size(), m.size());
    return active().sign_dot(w.data(), m.data(), w.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    require_same(x.size(), y.size());
    active().axpy(alpha, x.data(), y.data(), x.size());
}

void mul(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    require_same(a.size(), b.size());
    require_same(a.size(), out.size());
    active().mul(a.data(), b.data(), out.data(), a.size());
}

void neg_sign(std::span<const double> m, std::span<double> out) {
    require_same(m.size(), out.size());
    active().neg_sign(m.data(), out.data(), m.size());
}

}  // namespace agboost::kernels
