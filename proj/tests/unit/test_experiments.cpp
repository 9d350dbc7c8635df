#include "doctest.h"

#include <filesystem>

#include "agboost/data.hpp"
#include "agboost/experiments.hpp"

using namespace agboost;

namespace {

Dataset fixture(const char* name) {
    CsvOptions o;
    o.has_header = true;
    return load_csv(std::filesystem::path(AGBOOST_DATA_DIR) / "fixtures" / name, o);
}

}  // namespace

TEST_CASE("separable fixture: every algorithm reaches 0.99") {
    const auto d = fixture("separable_2d.csv");
    const BenchGrid grid;
    for (auto algo : {Algo::Ours, Algo::Kk09, Algo::Bhs20}) {
        const auto c = run_cell("separable_2d", d, 0.0, algo, grid, BenchParams{}, 1);
        INFO(to_string(algo));
        CHECK(c.mean_accuracy >= 0.99);
    }
}

TEST_CASE("pure-noise fixture: accuracies stay near chance") {
    const auto d = fixture("pure_noise.csv");
    const BenchGrid grid;
    for (auto algo : {Algo::Ours, Algo::Kk09, Algo::Bhs20}) {
        const auto c = run_cell("pure_noise", d, 0.0, algo, grid, BenchParams{}, 1);
        INFO(to_string(algo));
        CHECK(c.mean_accuracy >= 0.4);
        CHECK(c.mean_accuracy <= 0.6);
    }
}

TEST_CASE("cell selection prefers smaller T and sigma on ties") {
    const auto d = fixture("separable_2d.csv");
    BenchGrid grid;
    grid.folds = 3;
    grid.rounds = {10, 5};
    grid.sigmas = {0.5, 0.25};
    const auto c = run_cell("s", d, 0.0, Algo::Ours, grid, BenchParams{}, 2);
    REQUIRE(c.mean_accuracy == 1.0);
    CHECK(c.best_rounds == 5);
    CHECK(c.best_sigma == 0.25);
}

TEST_CASE("training budget accounting") {
    const auto d = fixture("separable_2d.csv");
    const auto ours = train_on_dataset(Algo::Ours, d, 10, 0.25, BenchParams{}, 3);
    // holdout = 10% of 600, per-round = 540 / 10
    CHECK(ours.samples == 10 * 54 + 60);
    const auto bhs = train_on_dataset(Algo::Bhs20, d, 10, 0.25, BenchParams{}, 3);
    CHECK(bhs.samples == 600);
    CHECK_THROWS_AS(train_on_dataset(Algo::Ours, d, 0, 0.25, BenchParams{}, 3), std::invalid_argument);
}

TEST_CASE("table rows") {
    CellResult c;
    c.dataset = "x";
    c.noise = 0.05;
    c.algo = Algo::Kk09;
    c.best_rounds = 25;
    c.mean_accuracy = 0.5;
    CHECK(cell_csv_header() == "dataset,noise,algo,best_T,best_sigma,accuracy,stderr,mean_samples");
    CHECK(cell_csv_row(c).rfind("x,0.05,kk09,25,", 0) == 0);
    CHECK(cell_markdown_row(c).front() == '|');
}

TEST_CASE("algo names and config hash") {
    for (auto a : {Algo::Ours, Algo::Kk09, Algo::Bhs20}) CHECK(parse_algo(to_string(a)) == a);
    CHECK_THROWS_AS(parse_algo("adaboost"), std::invalid_argument);
    CHECK(config_hash("") == 0xcbf29ce484222325ULL);
    CHECK(config_hash("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(config_hash("bench;seed=1") != config_hash("bench;seed=2"));
}

TEST_CASE("planted presets") {
    const auto ours = planted_config(0.1);
    const auto kk = planted_kk09_config(0.1);
    CHECK(ours.gamma == 1.0);
    CHECK(kk.rounds == ours.rounds);
    CHECK(kk.final_holdout == ours.final_holdout);
    CHECK(ours.rounds * ours.fresh_per_round < kk.rounds * (kk.weak_batch + kk.branch_batch));
}
