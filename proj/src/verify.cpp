#include "agboost/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "agboost/booster.hpp"
#include "agboost/data.hpp"
#include "agboost/finite.hpp"
#include "agboost/kernels.hpp"
#include "agboost/oracles.hpp"
#include "agboost/potential.hpp"
#include "agboost/resampler.hpp"
#include "agboost/rl_sim.hpp"

namespace agboost {
namespace {

const double kMinStochasticGamma = 2.0 / std::sqrt(std::exp(1.0)) - 1.0;

struct Outcome {
    bool passed;
    std::string detail;
};

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

Outcome potential_values() {
    const double e = std::exp(1.0);
    const struct {
        double got, want;
    } cases[] = {{phi(0), 2},           {phi(-1), 3},          {phi(1), 3 / e},
                 {phi_prime(-5), -1},   {phi_prime(0), -1},    {phi_prime(1), -2 / e},
                 {phi_second(-2), 0},   {phi_second(1), 1 / e}, {phi_second(2), 2 / (e * e)}};
    double worst = 0.0;
    for (const auto& c : cases) worst = std::max(worst, std::abs(c.got - c.want));
    return {worst <= 1e-12, "max error " + num(worst)};
}

Outcome potential_grid() {
    const int n = 10000;
    double prev = phi(-10.0);
    for (int i = 0; i < n; ++i) {
        const double z = -10.0 + 20.0 * i / (n - 1);
        const double v = phi(z), d = phi_prime(z), s = phi_second(z);
        if (v < 0.0) return {false, "phi < 0 at " + num(z)};
        if (d < -1.0 || d > 0.0) return {false, "phi' outside [-1, 0] at " + num(z)};
        if (s < 0.0 || s > 1.0) return {false, "phi'' outside [0, 1] at " + num(z)};
        if (v > prev) return {false, "phi increases at " + num(z)};
        prev = v;
    }
    return {true, "10000 points"};
}

Outcome potential_seam() {
    const double h = 1e-14;
    const double gaps[] = {std::abs(phi(-h) - phi(h)), std::abs(phi_prime(-h) - phi_prime(h)),
                           std::abs(phi_second(-h) - phi_second(h))};
    double worst = 0.0;
    for (double g : gaps) worst = std::max(worst, g);
    const double peak = std::abs(phi_second(1.0) - std::exp(-1.0));
    return {worst <= 1e-12 && peak <= 1e-12, "seam gap " + num(worst) + ", peak error " + num(peak)};
}

Outcome potential_finite_difference() {
    const double h = 1e-5;
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double z = -10.0 + 20.0 * i / 9999;
        worst = std::max(worst, std::abs((phi(z + h) - phi(z - h)) / (2 * h) - phi_prime(z)));
        worst = std::max(worst, std::abs((phi_prime(z + h) - phi_prime(z - h)) / (2 * h) - phi_second(z)));
    }
    return {worst <= 1e-6, "max error " + num(worst)};
}

Outcome oracle_consistency(std::size_t instances, Rng& rng) {
    double worst = 0.0;
    for (std::size_t i = 0; i < instances; ++i) {
        const std::size_t domain = 1 + uniform_index(rng, 6);
        const auto dist = random_finite_distribution(domain, 8, rng);
        const auto H = random_real_table(domain, 3.0, rng);
        const auto h_star = random_binary_table(domain, rng);
        worst = std::min(worst, check_consistency_gap(dist, *H, *h_star));
    }
    return {worst >= -1e-12, std::to_string(instances) + " instances, min slack " + num(worst)};
}

Outcome oracle_taylor(std::size_t instances, Rng& rng) {
    double worst = 0.0;
    for (std::size_t i = 0; i < instances; ++i) {
        const std::size_t domain = 1 + uniform_index(rng, 6);
        const auto dist = random_finite_distribution(domain, 6, rng);
        const auto H = random_real_table(domain, 3.0, rng);
        const auto g = random_real_table(domain, 2.0, rng);
        const auto h = random_binary_table(domain, rng);
        const double eta = 0.01 + uniform01(rng);
        worst = std::max(worst, std::abs(check_taylor_identity(dist, *H, *g, eta, *h)));
    }
    return {worst <= 1e-8, std::to_string(instances) + " instances, max residual " + num(worst)};
}

Outcome oracle_smoothness(std::size_t instances, Rng& rng) {
    for (std::size_t i = 0; i < instances; ++i) {
        const std::size_t domain = 1 + uniform_index(rng, 6);
        const auto dist = random_finite_distribution(domain, 8, rng);
        const auto H = random_real_table(domain, 3.0, rng);
        const auto h = random_real_table(domain, 1.5, rng);
        const double eta = uniform01(rng);
        LinearCombination moved;
        moved.add(1.0, H);
        moved.add(eta, h);
        double hmax = 0.0;
        for (std::size_t x = 0; x < domain; ++x) {
            const double xv = static_cast<double>(x);
            hmax = std::max(hmax, std::abs(h->value({&xv, 1})));
        }
        const double lhs = exact_potential(dist, moved);
        const double rhs = exact_potential(dist, *H) + eta * exact_phi_prime(dist, *H, *h) + eta * eta * hmax * hmax / 2;
        if (lhs > rhs + 1e-12) return {false, "descent inequality fails by " + num(lhs - rhs)};
        const double d1 = std::abs(exact_phi_prime(dist, *H, *h));
        const double d2 = std::abs(exact_phi_second(dist, *H, *h, *h));
        if (d1 > hmax + 1e-12 || d2 > hmax * hmax + 1e-12) return {false, "derivative bound violated"};
    }
    return {true, std::to_string(instances) + " instances"};
}

Outcome oracle_martingale(std::size_t configs, std::size_t replications, Rng& rng) {
    std::size_t passed = 0;
    double worst = 0.0;
    for (std::size_t c = 0; c < configs; ++c) {
        const std::size_t domain = 2 + uniform_index(rng, 4);
        const auto dist = random_finite_distribution(domain, 6, rng);
        std::vector<HypothesisPtr> hyps;
        for (int k = 0; k < 3; ++k) hyps.push_back(random_binary_table(domain, rng));
        const ErmLearner learner{FiniteClass(hyps)};
        BoostConfig cfg;
        cfg.rounds = 3 + uniform_index(rng, 3);
        cfg.step = 0.05 + 0.3 * uniform01(rng);
        cfg.mix = cfg.step * (1.0 + uniform01(rng));
        cfg.fresh_per_round = 2 + uniform_index(rng, 6);
        cfg.weak_batch = 20;
        cfg.final_holdout = 1;
        FiniteDistributionSource source(dist);
        Booster booster(source, learner, cfg);
        const std::size_t t = 2 + uniform_index(rng, cfg.rounds - 1);
        for (std::size_t r = 1; r < t; ++r) booster.run_round(rng);
        const auto h_test = random_binary_table(domain, rng);
        const auto m = check_martingale_recursion(dist, booster, *h_test, replications, rng);
        if (m.within(3.0)) ++passed;
        worst = std::max(worst, std::abs(m.estimate - m.expected) / std::max(m.stderr_, 1e-300));
    }
    // each configuration passes with probability ~0.997
    const bool ok = passed + (configs >= 20 ? 1 : 0) >= configs;
    return {ok, std::to_string(passed) + "/" + std::to_string(configs) + " within 3 stderr, worst z " + num(worst)};
}

Outcome resampler_weights() {
    double worst = 0.0;
    for (std::size_t t = 1; t <= 50; ++t)
        for (double sigma : {0.01, 0.1, 0.37, 0.5, 0.9, 1.0}) {
            CompensatedSum s;
            for (double w : round_selection_weights<double>(t, sigma)) s.add(w);
            worst = std::max(worst, std::abs(s.value() - 1.0));
        }
    return {worst <= 1e-12, "max deviation " + num(worst)};
}

Outcome resampler_label_expectation(Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        // below gamma = 2/sqrt(e) - 1 the preset sigma = eta/gamma no longer keeps p in [0, 1]
        const double gamma = kMinStochasticGamma + (1.0 - kMinStochasticGamma) * uniform01(rng);
        const double eta = 0.01 + 0.5 * uniform01(rng);
        const double sigma = eta / gamma;
        const int y = random_sign(rng);
        const double H = (2 * uniform01(rng) - 1) * 4;
        const double h = (random_sign(rng) > 0 ? 1.0 : -1.0) * (random_sign(rng) > 0 ? 1.0 : 1.0 / gamma);
        const double quad = average_phi_second(y, H, h, eta);
        const double via_quadrature = -(sigma * phi_prime(y * H) * y + eta * quad * h) / (eta + sigma);
        worst = std::max(worst, std::abs(via_quadrature - expected_pseudo_label(y, H, h, eta, sigma)));
        for (double ep : {0.0, 0.5 * eta, eta}) {
            const double p = pseudo_label_prob(y, H, h, {eta, sigma, ep});
            if (!(p >= 0.0 && p <= 1.0)) return {false, "pseudo label probability outside [0, 1]"};
        }
    }
    return {worst <= 1e-9, "max gap to closed form " + num(worst)};
}

Outcome booster_accounting(Rng& rng) {
    const auto dist = random_finite_distribution(6, 10, rng);
    std::vector<HypothesisPtr> hyps;
    for (int k = 0; k < 5; ++k) hyps.push_back(random_binary_table(6, rng));
    const ErmLearner learner{FiniteClass(hyps)};
    for (auto mode : {RelabelMode::Stochastic, RelabelMode::Fractional}) {
        BoostConfig cfg;
        cfg.rounds = 7;
        cfg.step = 0.2;
        cfg.mix = 0.3;
        cfg.fresh_per_round = 11;
        cfg.weak_batch = 30;
        cfg.final_holdout = 13;
        cfg.relabel_mode = mode;
        FiniteDistributionSource source(dist);
        Booster b(source, learner, cfg);
        for (std::size_t t = 0; t < cfg.rounds; ++t) b.run_round(rng);
        // cached margins against a from-scratch evaluation
        for (std::size_t s = 1; s <= b.reuse().rounds(); ++s) {
            const Dataset& batch = b.reuse().round(s).batch;
            for (std::size_t i = 0; i < batch.size(); ++i) {
                const double cached = b.stored_margins()[b.reuse().global_index(s, i)];
                if (std::abs(cached - b.ensemble().value(batch.row(i))) > 1e-12)
                    return {false, "cached margin disagrees with the ensemble"};
            }
        }
        const BoostResult r = b.finish(rng);
        if (r.samples_drawn != 7 * 11 + 13) return {false, "samples drawn " + std::to_string(r.samples_drawn)};
        for (double c : r.holdout_corr)
            if (c > r.holdout_corr[r.selected_prefix]) return {false, "post-selection is not the argmax"};
    }
    return {true, "budget T*S+S0, cached margins, argmax selection"};
}

Outcome kernel_equivalence(Rng& rng) {
    const auto& ref = kernels::scalar_table();
    std::vector<const kernels::KernelTable*> variants{&kernels::active()};
    if (auto* t = kernels::avx2_table()) variants.push_back(t);
    if (auto* t = kernels::neon_table()) variants.push_back(t);
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 33u, 1000u}) {
        std::vector<double> a(n), b(n), y1(n), y2(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = 2 * uniform01(rng) - 1;
            b[i] = i % 5 == 0 ? 0.0 : 2 * uniform01(rng) - 1;
        }
        for (auto* v : variants) {
            const double scale = static_cast<double>(n) + 1.0;
            if (std::abs(v->dot(a.data(), b.data(), n) - ref.dot(a.data(), b.data(), n)) > 1e-12 * scale)
                return {false, std::string(v->name) + ": dot"};
            if (std::abs(v->sign_dot(a.data(), b.data(), n) - ref.sign_dot(a.data(), b.data(), n)) > 1e-12 * scale)
                return {false, std::string(v->name) + ": sign_dot"};
            y1 = b;
            y2 = b;
            v->axpy(0.3, a.data(), y1.data(), n);
            ref.axpy(0.3, a.data(), y2.data(), n);
            if (y1 != y2) return {false, std::string(v->name) + ": axpy"};
            v->neg_sign(b.data(), y1.data(), n);
            ref.neg_sign(b.data(), y2.data(), n);
            if (y1 != y2) return {false, std::string(v->name) + ": neg_sign"};
        }
    }
    return {true, std::to_string(variants.size()) + " kernel table(s) against scalar, active " + kernels::active().name};
}

Outcome data_folds() {
    for (std::size_t n : {5u, 31u, 100u})
        for (std::size_t k : {2u, 5u}) {
            const FoldPlan p = kfold(n, k, n * 7 + k);
            std::vector<int> seen(n, 0);
            std::size_t lo = n, hi = 0;
            for (std::size_t f = 0; f < k; ++f) {
                const auto idx = p.test_indices(f);
                lo = std::min(lo, idx.size());
                hi = std::max(hi, idx.size());
                for (auto i : idx) ++seen[i];
            }
            for (int s : seen)
                if (s != 1) return {false, "folds do not partition the index set"};
            if (hi - lo > 1) return {false, "fold sizes differ by more than one"};
        }
    return {true, "exact partitions, balanced sizes"};
}

TabularMDP two_state_mdp() {
    TabularMDP m;
    m.n_states = 2;
    m.discount = 0.8;
    m.reward = {{0.9, 0.1}, {0.2, 0.7}};
    m.transition = {{std::vector<double>{0.3, 0.7}, std::vector<double>{0.8, 0.2}},
                    {std::vector<double>{0.5, 0.5}, std::vector<double>{0.1, 0.9}}};
    m.start = {0.6, 0.4};
    m.reset = {0.5, 0.5};
    m.validate();
    return m;
}

Outcome rl_bellman(Rng& rng) {
    const TabularMDP m = two_state_mdp();
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const MixturePolicy pi({{1.0, {uniform01(rng), uniform01(rng)}}});
        const auto v = exact_value(m, pi);
        const auto q = exact_q(m, pi);
        for (std::size_t s = 0; s < 2; ++s)
            worst = std::max(worst, std::abs(v[s] - (pi.prob_plus(s) * q[s][0] + (1 - pi.prob_plus(s)) * q[s][1])));
    }
    return {worst <= 1e-10, "max Bellman gap " + num(worst)};
}

Outcome rl_label_identity(std::size_t samples, Rng& rng) {
    const TabularMDP m = two_state_mdp();
    const MixturePolicy pi({{1.0, {0.3, 0.8}}});
    const auto q = exact_q(m, pi);
    std::vector<double> sum(2, 0.0), count(2, 0.0);
    for (std::size_t i = 0; i < samples; ++i) {
        const auto t = sample_trajectory(m, pi, m.start, rng);
        sum[t.state] += t.pseudo_action;
        count[t.state] += 1.0;
    }
    double worst_z = 0.0;
    for (std::size_t s = 0; s < 2; ++s) {
        const double mean = sum[s] / count[s];
        const double se = std::sqrt(std::max(1e-300, (1.0 - mean * mean) / count[s]));
        const double want = (1.0 - m.discount) * (q[s][0] - q[s][1]);
        worst_z = std::max(worst_z, std::abs(mean - want) / se);
    }
    return {worst_z <= 3.0, std::to_string(samples) + " trajectories, worst z " + num(worst_z)};
}

Outcome rl_mixture(Rng& rng) {
    const MixturePolicy pi({{0.2, {0.9, 0.1}}, {0.5, {0.4, 0.6}}, {0.3, {0.0, 1.0}}});
    const std::size_t n = 100000;
    for (std::size_t s = 0; s < 2; ++s) {
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            a += pi.sample_action(s, rng) > 0;
            b += pi.sample_action_by_component(s, rng) > 0;
        }
        // two-sample test on the +1 frequency
        const double p = (a + b) / (2.0 * n);
        const double se = std::sqrt(2.0 * p * (1 - p) / n);
        if (std::abs(a - b) / n > 4.0 * se) return {false, "component sampling disagrees with the aggregate"};
        if (std::abs(p - pi.prob_plus(s)) > 4.0 * std::sqrt(p * (1 - p) / (2.0 * n)))
            return {false, "aggregate probability mismatch"};
    }
    return {true, "aggregate and component-first sampling agree"};
}

}  // namespace

std::vector<GroupReport> run_verification(VerifyLevel level, std::uint64_t seed) {
    const bool full = level == VerifyLevel::Full;
    std::vector<std::pair<std::string, std::function<Outcome(Rng&)>>> groups = {
        {"potential.values", [](Rng&) { return potential_values(); }},
        {"potential.grid", [](Rng&) { return potential_grid(); }},
        {"potential.seam", [](Rng&) { return potential_seam(); }},
        {"potential.finite-difference", [](Rng&) { return potential_finite_difference(); }},
        {"oracles.consistency-gap", [&](Rng& r) { return oracle_consistency(full ? 1000 : 300, r); }},
        {"oracles.taylor-identity", [&](Rng& r) { return oracle_taylor(full ? 200 : 50, r); }},
        {"oracles.smoothness", [&](Rng& r) { return oracle_smoothness(full ? 1000 : 200, r); }},
        {"oracles.martingale", [&](Rng& r) { return oracle_martingale(full ? 10 : 4, full ? 100000 : 20000, r); }},
        {"resampler.selection-weights", [](Rng&) { return resampler_weights(); }},
        {"resampler.label-expectation", [](Rng& r) { return resampler_label_expectation(r); }},
        {"booster.accounting", [](Rng& r) { return booster_accounting(r); }},
        {"kernels.equivalence", [](Rng& r) { return kernel_equivalence(r); }},
        {"data.folds", [](Rng&) { return data_folds(); }},
        {"rl_sim.bellman", [](Rng& r) { return rl_bellman(r); }},
        {"rl_sim.label-identity", [&](Rng& r) { return rl_label_identity(full ? 1000000 : 100000, r); }},
        {"rl_sim.mixture", [](Rng& r) { return rl_mixture(r); }},
    };

    std::vector<GroupReport> out;
    std::uint64_t index = 0;
    for (auto& [name, fn] : groups) {
        Rng rng(derive_seed(seed, index++));
        const auto start = std::chrono::steady_clock::now();
        GroupReport rep{name, false, "", 0.0};
        try {
            const Outcome o = fn(rng);
            rep.passed = o.passed;
            rep.detail = o.detail;
        } catch (const std::exception& e) {
            rep.detail = std::string("exception: ") + e.what();
        }
        rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(rep));
    }
    return out;
}

}  // namespace agboost
