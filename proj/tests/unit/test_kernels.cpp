#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "agboost/kernels.hpp"
#include "agboost/rng.hpp"

using namespace agboost;

namespace {

std::vector<double> random_vec(std::size_t n, Rng& rng, bool zeros = false) {
    std::vector<double> v(n);
    for (auto& x : v) x = zeros && uniform01(rng) < 0.2 ? 0.0 : 4 * uniform01(rng) - 2;
    return v;
}

void compare(const kernels::KernelTable& ref, const kernels::KernelTable& alt) {
    Rng rng(17);
    for (std::size_t n = 0; n < 70; ++n) {
        const auto a = random_vec(n, rng);
        const auto b = random_vec(n, rng, true);
        const double tol = 1e-12 * (1.0 + static_cast<double>(n));
        CHECK(std::abs(ref.dot(a.data(), b.data(), n) - alt.dot(a.data(), b.data(), n)) <= tol);
        CHECK(std::abs(ref.sign_dot(a.data(), b.data(), n) - alt.sign_dot(a.data(), b.data(), n)) <= tol);
        auto y1 = b, y2 = b;
        ref.axpy(0.37, a.data(), y1.data(), n);
        alt.axpy(0.37, a.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-15 * (1 + std::abs(y1[i])));
        std::vector<double> o1(n), o2(n);
        ref.mul(a.data(), b.data(), o1.data(), n);
        alt.mul(a.data(), b.data(), o2.data(), n);
        CHECK(o1 == o2);
        ref.neg_sign(b.data(), o1.data(), n);
        alt.neg_sign(b.data(), o2.data(), n);
        CHECK(o1 == o2);
    }
}

}  // namespace

TEST_CASE("scalar reference semantics") {
    const auto& s = kernels::scalar_table();
    const std::vector<double> a{1, 2, 3}, b{4, -5, 0};
    CHECK(s.dot(a.data(), b.data(), 3) == -6.0);
    CHECK(s.sign_dot(a.data(), b.data(), 3) == 1 - 2 + 3);  // sgn(0) = +1
    std::vector<double> out(3);
    s.neg_sign(b.data(), out.data(), 3);
    CHECK(out == std::vector<double>{-1, 1, -1});
}

TEST_CASE("vector variants match the scalar reference") {
    const auto& ref = kernels::scalar_table();
    if (const auto* t = kernels::avx2_table()) compare(ref, *t);
    if (const auto* t = kernels::neon_table()) compare(ref, *t);
    compare(ref, kernels::active());
    MESSAGE("active kernels: " << kernels::active().name);
}

TEST_CASE("span wrappers check lengths") {
    const std::vector<double> a{1, 2}, b{1};
    CHECK_THROWS_AS(kernels::dot(a, b), std::invalid_argument);
}
