#include "doctest.h"

#include <cmath>

#include "agboost/baselines.hpp"
#include "agboost/errors.hpp"
#include "agboost/source.hpp"

using namespace agboost;

namespace {

Dataset separable(std::size_t n) {
    Dataset d(1);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -1.0 + 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        d.add(std::vector<double>{x}, x >= 0 ? 1 : -1);
    }
    return d;
}

}  // namespace

TEST_CASE("madaboost relabel weights") {
    Dataset d(1);
    d.add(std::vector<double>{0.0}, 1);
    d.add(std::vector<double>{1.0}, -1);
    d.add(std::vector<double>{2.0}, 1);
    const std::vector<double> margins{0.0, 1.0, 2.0};
    const auto w = madaboost_relabel(d, margins);
    REQUIRE(w.size() == 6);
    // rows come in (y, -y) pairs
    CHECK(w.label(0) == 1.0);
    CHECK(w.weight(0) == doctest::Approx(1.0));
    CHECK(w.weight(1) == doctest::Approx(0.0));
    // y H = -1 clips to weight 1
    CHECK(w.label(2) == -1.0);
    CHECK(w.weight(2) == doctest::Approx(1.0));
    // y H = 2 gives (1 + e^-2)/2 and (1 - e^-2)/2
    CHECK(w.weight(4) == doctest::Approx((1 + std::exp(-2.0)) / 2));
    CHECK(w.weight(5) == doctest::Approx((1 - std::exp(-2.0)) / 2));
    CHECK(w.label(5) == -1.0);
    double net = 0.0;
    for (std::size_t i = 4; i < 6; ++i) net += w.weight(i) * w.label(i);
    CHECK(net == doctest::Approx(std::exp(-2.0)));
}

TEST_CASE("kk09 and bhs20 sample budgets") {
    const Dataset data = separable(50);
    const StumpLearner learner;
    BaselineConfig cfg;
    cfg.rounds = 5;
    cfg.step = 0.3;
    cfg.weak_batch = 20;
    cfg.branch_batch = 7;
    cfg.final_holdout = 11;
    cfg.pool_size = 60;
    {
        DatasetBootstrapSource src(data);
        Rng rng(1);
        const auto r = boost_kk09(src, learner, cfg, rng);
        CHECK(r.samples_drawn == 5 * (20 + 7) + 11);
        CHECK(r.rounds.size() == 5);
        CHECK(r.holdout_corr.size() == 6);
        CHECK(r.holdout_corr[r.selected_prefix] == 1.0);
    }
    {
        DatasetBootstrapSource src(data);
        Rng rng(1);
        const auto r = boost_bhs20(src, learner, cfg, rng);
        CHECK(r.samples_drawn == 60);
        CHECK(r.rounds.size() == 5);
        CHECK(r.holdout_corr[r.selected_prefix] == 1.0);
        for (const auto& t : r.rounds) CHECK(t.branch == EnsembleComponent::Kind::ScaledWeak);
    }
}

TEST_CASE("baselines are deterministic given the seed") {
    const Dataset data = separable(30);
    const StumpLearner learner;
    BaselineConfig cfg;
    cfg.rounds = 4;
    cfg.weak_batch = 10;
    cfg.branch_batch = 5;
    cfg.final_holdout = 5;
    cfg.pool_size = 25;
    cfg.step_mode = StepMode::AdaptiveCorrelation;
    for (int algo = 0; algo < 2; ++algo) {
        auto run = [&] {
            DatasetBootstrapSource src(data);
            Rng rng(9);
            return algo == 0 ? boost_kk09(src, learner, cfg, rng) : boost_bhs20(src, learner, cfg, rng);
        };
        const auto a = run();
        const auto b = run();
        CHECK(a.holdout_corr == b.holdout_corr);
        CHECK(a.ensemble->to_json() == b.ensemble->to_json());
    }
}

TEST_CASE("baseline validation") {
    BaselineConfig cfg;
    cfg.final_holdout = 3;
    cfg.pool_size = 3;
    CHECK_THROWS_AS(cfg.validate_bhs20(), std::invalid_argument);
    cfg.pool_size = 4;
    CHECK_NOTHROW(cfg.validate_bhs20());
    cfg.weak_batch = 0;
    CHECK_THROWS_AS(cfg.validate_kk09(), std::invalid_argument);

    const Dataset data = separable(10);
    DatasetPoolSource small(data, 1);
    const StumpLearner learner;
    BaselineConfig big;
    big.rounds = 3;
    big.weak_batch = 5;
    big.branch_batch = 5;
    Rng rng(1);
    CHECK_THROWS_AS(boost_kk09(small, learner, big, rng), SourceExhausted);
}
