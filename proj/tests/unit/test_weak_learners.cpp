#include "doctest.h"

#include <cmath>
#include <limits>
#include <set>

#include "agboost/finite.hpp"
#include "agboost/oracles.hpp"
#include "agboost/weak_learners.hpp"

using namespace agboost;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

WeightedSet random_set(std::size_t n, std::size_t dim, std::size_t levels, Rng& rng) {
    WeightedSet w(dim);
    std::vector<double> x(dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto& v : x) v = static_cast<double>(uniform_index(rng, levels));
        w.add(x, random_sign(rng), 0.05 + uniform01(rng));
    }
    return w;
}

WeightedSet random_cube_set(std::size_t n, std::size_t dim, Rng& rng) {
    WeightedSet w(dim);
    std::vector<double> x(dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto& v : x) v = random_sign(rng);
        w.add(x, random_sign(rng), uniform01(rng) + 0.01);
    }
    return w;
}

}  // namespace

TEST_CASE("stump fit matches brute force") {
    Rng rng(1);
    for (int rep = 0; rep < 200; ++rep) {
        const auto data = random_set(1 + uniform_index(rng, 30), 1 + uniform_index(rng, 3), 5, rng);
        const auto fit = fit_stump(data);
        double best = -kInf;
        for (std::size_t f = 0; f < data.dim(); ++f) {
            std::set<double> vals;
            for (std::size_t i = 0; i < data.size(); ++i) vals.insert(data.row(i)[f]);
            std::vector<double> thr{-kInf, kInf};
            for (auto it = vals.begin(); std::next(it) != vals.end(); ++it) thr.push_back((*it + *std::next(it)) / 2);
            for (double t : thr)
                for (int pol : {-1, 1}) best = std::max(best, weighted_correlation(Stump(f, t, pol), data));
        }
        CHECK(fit.correlation == doctest::Approx(best).epsilon(1e-12));
        CHECK(weighted_correlation(fit.stump, data) == doctest::Approx(fit.correlation).epsilon(1e-12));
    }
}

TEST_CASE("stump tie-break and batch evaluation") {
    WeightedSet w(2);
    w.add(std::vector<double>{0.0, 0.0}, 1, 1.0);
    const auto fit = fit_stump(w);
    CHECK(fit.stump.feature() == 0);
    CHECK(fit.stump.threshold() == -kInf);
    CHECK(fit.stump.polarity() == 1);
    CHECK(fit.correlation == 1.0);

    Rng rng(2);
    const auto data = random_set(57, 3, 7, rng);
    const Stump s(1, 2.5, -1);
    std::vector<double> out(data.size());
    s.values(data.features(), data.dim(), out);
    for (std::size_t i = 0; i < data.size(); ++i) CHECK(out[i] == s.value(data.row(i)));
    CHECK(Stump(0, 1.0, 1).value(std::vector<double>{1.0}) == 1.0);  // sign(0) = +1
    CHECK_THROWS_AS(Stump(0, 0.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(fit_stump(WeightedSet(1)), std::invalid_argument);
}

TEST_CASE("parity subset counts") {
    CHECK(parity_subset_count(7, 0) == 1);
    CHECK(parity_subset_count(7, 1) == 8);
    CHECK(parity_subset_count(7, 2) == 29);
    CHECK(parity_subset_count(7, 7) == 128);
    CHECK(parity_subset_count(3, 10) == 8);
}

TEST_CASE("parity fit matches brute force") {
    Rng rng(3);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 1 + uniform_index(rng, 6);
        const std::size_t d = uniform_index(rng, n + 1);
        const auto data = random_cube_set(40, n, rng);
        const auto fit = fit_parity(data, d);
        CHECK(fit.subsets_evaluated == parity_subset_count(n, d));
        double best = -kInf;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            std::vector<std::size_t> subset;
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1u) subset.push_back(i);
            if (subset.size() > d) continue;
            for (int s : {-1, 1}) best = std::max(best, weighted_correlation(Parity(subset, s), data));
        }
        CHECK(fit.correlation == doctest::Approx(best).epsilon(1e-12));
        CHECK(fit.parity.subset().size() <= d);
    }
    CHECK_THROWS_AS(Parity({1, 0}, 1), std::invalid_argument);
}

TEST_CASE("erm picks the lowest index on ties") {
    Rng rng(4);
    const auto h = random_binary_table(5, rng);
    const FiniteClass cls({h, h, random_binary_table(5, rng)});
    WeightedSet w(1);
    for (int x = 0; x < 5; ++x) w.add(std::vector<double>{static_cast<double>(x)}, h->table()[x], 1.0);
    const auto fit = fit_erm(w, cls);
    CHECK(fit.index == 0);
    CHECK(fit.correlation == 1.0);
    CHECK_THROWS_AS(fit_erm(w, FiniteClass{}), std::invalid_argument);
}

TEST_CASE("learners are deterministic") {
    Rng rng(5);
    const auto data = random_cube_set(100, 5, rng);
    const ParityLearner pl(2);
    const StumpLearner sl;
    CHECK(pl.fit(data)->to_json() == pl.fit(data)->to_json());
    CHECK(sl.fit(data)->to_json() == sl.fit(data)->to_json());
}
