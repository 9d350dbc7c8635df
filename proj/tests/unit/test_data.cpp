#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "agboost/data.hpp"
#include "agboost/errors.hpp"
#include "agboost/oracles.hpp"

using namespace agboost;

TEST_CASE("csv parsing") {
    SUBCASE("auto encoding, header, CRLF") {
        std::istringstream in("a,b,c\r\n1.5,2,yes\r\n-1,0,no\r\n");
        CsvOptions o;
        o.has_header = true;
        const auto d = parse_csv(in, o);
        REQUIRE(d.size() == 2);
        CHECK(d.dim() == 2);
        CHECK(d.row(0)[0] == 1.5);
        CHECK(d.label(0) == 1);  // "no" < "yes"
        CHECK(d.label(1) == -1);
    }
    SUBCASE("label column and explicit encoding") {
        std::istringstream in("pos,3,4\nneg,5,6\n");
        CsvOptions o;
        o.label_column = 0;
        o.label_encoding = std::pair<std::string, std::string>{"neg", "pos"};
        const auto d = parse_csv(in, o);
        CHECK(d.label(0) == 1);
        CHECK(d.row(1)[1] == 6.0);
    }
    SUBCASE("errors") {
        std::istringstream ragged("1,2,0\n1,1\n");
        CHECK_THROWS_AS(parse_csv(ragged), DataError);
        std::istringstream three("1,a\n2,b\n3,c\n");
        CHECK_THROWS_AS(parse_csv(three), DataError);
        std::istringstream bad("x,0\n1,1\n");
        CHECK_THROWS_AS(parse_csv(bad), DataError);
        std::istringstream empty("");
        CHECK_THROWS_AS(parse_csv(empty), DataError);
        std::istringstream unknown("1,maybe\n");
        CsvOptions o;
        o.label_encoding = std::pair<std::string, std::string>{"no", "yes"};
        CHECK_THROWS_AS(parse_csv(unknown, o), DataError);
        CHECK_THROWS_AS(load_csv("/nonexistent/file.csv"), DataError);
    }
    SUBCASE("error names the line") {
        std::istringstream ragged("1,2,0\n1,2,1\n1,1\n");
        try {
            parse_csv(ragged);
            FAIL("expected DataError");
        } catch (const DataError& e) {
            CHECK(std::string(e.what()).find("3") != std::string::npos);
        }
    }
}

TEST_CASE("csv round trip") {
    Rng rng(1);
    Dataset d(3);
    for (int i = 0; i < 50; ++i)
        d.add(std::vector<double>{uniform01(rng), -uniform01(rng) * 1e-7, 1e12 * uniform01(rng)}, random_sign(rng));
    std::stringstream buf;
    write_csv(d, buf);
    CsvOptions o;
    o.label_encoding = std::pair<std::string, std::string>{"-1", "1"};
    CHECK(parse_csv(buf, o) == d);
}

TEST_CASE("fixtures load") {
    CsvOptions o;
    o.has_header = true;
    const auto sep = load_csv(std::filesystem::path(AGBOOST_DATA_DIR) / "fixtures/separable_2d.csv", o);
    CHECK(sep.size() == 600);
    for (std::size_t i = 0; i < sep.size(); ++i) CHECK(sep.label(i) == (sep.row(i)[0] > 0 ? 1 : -1));
    const auto noise = load_csv(std::filesystem::path(AGBOOST_DATA_DIR) / "fixtures/pure_noise.csv", o);
    CHECK(noise.size() == 300);
    CHECK(noise.dim() == 3);
}

TEST_CASE("label noise") {
    Dataset d(1);
    for (int i = 0; i < 20000; ++i) d.add(std::vector<double>{static_cast<double>(i)}, 1);
    const auto clean = inject_noise(d, {0.0, 1});
    CHECK(clean == d);
    const auto noisy = inject_noise(d, {0.2, 7});
    const auto flips = std::count(noisy.labels().begin(), noisy.labels().end(), -1);
    // binomial(20000, 0.2): sd ~ 57
    CHECK(std::abs(static_cast<double>(flips) - 4000.0) < 5 * 57.0);
    CHECK(inject_noise(d, {0.2, 7}) == noisy);
    CHECK_THROWS_AS(inject_noise(d, {0.6, 1}), std::invalid_argument);
}

TEST_CASE("k-fold partition") {
    for (std::size_t n : {10u, 31u, 100u})
        for (std::size_t k : {2u, 3u, 10u}) {
            const auto plan = kfold(n, k, 42);
            std::vector<int> seen(n, 0);
            std::size_t lo = n, hi = 0;
            for (std::size_t f = 0; f < k; ++f) {
                const auto test = plan.test_indices(f);
                const auto train = plan.train_indices(f);
                CHECK(test.size() + train.size() == n);
                lo = std::min(lo, test.size());
                hi = std::max(hi, test.size());
                for (auto i : test) ++seen[i];
            }
            CHECK(hi - lo <= 1);
            CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
            CHECK(kfold(n, k, 42).assignment == plan.assignment);
        }
    CHECK(kfold(100, 10, 1).assignment != kfold(100, 10, 2).assignment);
    CHECK_THROWS_AS(kfold(5, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(kfold(5, 6, 0), std::invalid_argument);
}

TEST_CASE("halfspace distribution") {
    const std::vector<double> w{1, 1, 1};
    const auto clean = gen_halfspace(3, w, 0.0, 0.0);
    CHECK(clean.size() == 8);
    const TableHypothesis dummy({1});
    (void)dummy;
    const FunctionHypothesis target([&](std::span<const double> x) { return x[0] + x[1] + x[2] >= 0 ? 1.0 : -1.0; });
    CHECK(exact_corr(clean, target) == doctest::Approx(1.0));
    const auto noisy = gen_halfspace(3, w, 0.0, 0.1);
    CHECK(noisy.size() == 16);
    CHECK(exact_corr(noisy, target) == doctest::Approx(0.8));
    CHECK_THROWS_AS(gen_halfspace(25, std::vector<double>(25, 1.0), 0.0, 0.0), std::invalid_argument);

    HalfspaceSource src(w, 0.0, 0.1);
    Rng rng(3);
    double agree = 0.0;
    const int n = 40000;
    for (int i = 0; i < n; ++i) {
        const auto e = src.draw(rng);
        agree += e.y * target.value(e.x);
    }
    CHECK(std::abs(agree / n - 0.8) < 5 * std::sqrt(0.36 / n));
}

TEST_CASE("planted instances") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto inst = gen_planted(16, 32, 0.7, seed);
        CHECK(inst.cls.size() == 32);
        CHECK(exact_corr(inst.dist, *inst.h_star) == doctest::Approx(0.7));
        CHECK(inst.cls[inst.best_index] == inst.h_star);
        for (std::size_t k = 0; k < inst.cls.size(); ++k)
            if (k != inst.best_index) CHECK(exact_corr(inst.dist, *inst.cls[k]) < 0.7 - 1e-9);
        const auto again = gen_planted(16, 32, 0.7, seed);
        CHECK(again.seed_used == inst.seed_used);
        CHECK(again.best_index == inst.best_index);
    }
}
