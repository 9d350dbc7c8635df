#include "agboost/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "agboost/finite.hpp"
#include "agboost/oracles.hpp"

namespace agboost {
namespace {

/// Pool source that switches to bootstrap draws once the pool is empty.
class PoolThenBootstrap final : public ExampleSource {
public:
    PoolThenBootstrap(const Dataset& data, std::uint64_t seed, bool pool) : pool_(data, seed), boot_(data), use_pool_(pool) {}
    LabeledExample draw(Rng& rng) override {
        if (use_pool_ && pool_.remaining() > 0) return pool_.draw(rng);
        return boot_.draw(rng);
    }
    std::size_t dim() const override { return boot_.dim(); }

private:
    DatasetPoolSource pool_;
    DatasetBootstrapSource boot_;
    bool use_pool_;
};

std::string fmt(double v, int digits = 4) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

}  // namespace

std::string to_string(Algo a) {
    switch (a) {
        case Algo::Ours: return "ours";
        case Algo::Kk09: return "kk09";
        case Algo::Bhs20: return "bhs20";
    }
    return "?";
}

Algo parse_algo(const std::string& s) {
    if (s == "ours") return Algo::Ours;
    if (s == "kk09") return Algo::Kk09;
    if (s == "bhs20") return Algo::Bhs20;
    throw std::invalid_argument("unknown algorithm '" + s + "'");
}

TrainOutcome train_on_dataset(Algo algo, const Dataset& train, std::size_t rounds, double sigma,
                              const BenchParams& params, std::uint64_t seed) {
    const std::size_t n = train.size();
    if (n < 2) throw std::invalid_argument("training split needs at least two examples");
    if (rounds == 0) throw std::invalid_argument("need at least one round");
    const std::size_t holdout =
        std::clamp<std::size_t>(static_cast<std::size_t>(std::lround(params.holdout_fraction * n)), 1, n - 1);
    const std::size_t per_round = std::max<std::size_t>(1, (n - holdout) / rounds);
    const StumpLearner learner;
    Rng rng(derive_seed(seed, 1));
    TrainOutcome out;

    switch (algo) {
        case Algo::Ours: {
            BoostConfig cfg;
            cfg.rounds = rounds;
            cfg.mix = sigma;
            cfg.step = params.base_step;
            cfg.fresh_per_round = per_round;
            cfg.weak_batch = per_round * rounds;
            cfg.final_holdout = holdout;
            cfg.relabel_mode = params.relabel;
            cfg.step_mode = params.step_mode;
            cfg.branch_mode = params.branch_mode;
            if (cfg.relabel_mode == RelabelMode::Stochastic) cfg.step = std::min(cfg.step, 1.0);
            PoolThenBootstrap source(train, seed, rounds * per_round + holdout <= n);
            out.result = boost(source, learner, cfg, rng);
            break;
        }
        case Algo::Kk09: {
            BaselineConfig cfg;
            cfg.rounds = rounds;
            cfg.step = params.base_step;
            cfg.step_mode = params.step_mode;
            cfg.branch_batch = std::max<std::size_t>(1, static_cast<std::size_t>(params.kk09_branch_share * per_round));
            cfg.weak_batch = std::max<std::size_t>(1, per_round - std::min(per_round - 1, cfg.branch_batch));
            cfg.final_holdout = holdout;
            PoolThenBootstrap source(train, seed, rounds * (cfg.weak_batch + cfg.branch_batch) + holdout <= n);
            out.result = boost_kk09(source, learner, cfg, rng);
            break;
        }
        case Algo::Bhs20: {
            BaselineConfig cfg;
            cfg.rounds = rounds;
            cfg.step = params.base_step;
            cfg.step_mode = params.step_mode;
            cfg.final_holdout = holdout;
            cfg.pool_size = n;
            PoolThenBootstrap source(train, seed, true);
            out.result = boost_bhs20(source, learner, cfg, rng);
            break;
        }
    }
    out.samples = out.result.samples_drawn;
    return out;
}

CellResult run_cell(const std::string& name, const Dataset& data, double noise, Algo algo, const BenchGrid& grid,
                    const BenchParams& params, std::uint64_t seed) {
    if (grid.rounds.empty() || grid.sigmas.empty()) throw std::invalid_argument("empty grid");
    const FoldPlan plan = kfold(data.size(), grid.folds, seed);
    std::vector<double> sigmas = grid.sigmas;
    if (algo != Algo::Ours) sigmas.resize(1);  // baselines have no mixing weight

    std::vector<Dataset> train(grid.folds), test(grid.folds);
    for (std::size_t f = 0; f < grid.folds; ++f) {
        const auto tr = plan.train_indices(f);
        const auto te = plan.test_indices(f);
        train[f] = inject_noise(data.subset(tr), {noise, derive_seed(seed, 1000 + f)});
        test[f] = data.subset(te);
    }

    CellResult best;
    best.dataset = name;
    best.noise = noise;
    best.algo = algo;
    best.mean_accuracy = -1.0;
    std::vector<std::size_t> rounds = grid.rounds;
    std::sort(rounds.begin(), rounds.end());
    std::sort(sigmas.begin(), sigmas.end());
    std::uint64_t cell = 0;
    for (std::size_t T : rounds) {
        for (double sigma : sigmas) {
            ++cell;
            CompensatedSum acc, acc_sq, samples;
            for (std::size_t f = 0; f < grid.folds; ++f) {
                const auto o = train_on_dataset(algo, train[f], T, sigma, params, derive_seed(derive_seed(seed, cell), f));
                const double a = accuracy(*o.result.final_hypothesis, test[f]);
                acc.add(a);
                acc_sq.add(a * a);
                samples.add(static_cast<double>(o.samples));
            }
            const double k = static_cast<double>(grid.folds);
            const double mean = acc.value() / k;
            if (mean > best.mean_accuracy) {
                const double var = std::max(0.0, (acc_sq.value() - k * mean * mean) / (k - 1.0));
                best.best_rounds = T;
                best.best_sigma = algo == Algo::Ours ? sigma : 0.0;
                best.mean_accuracy = mean;
                best.stderr_accuracy = std::sqrt(var / k);
                best.mean_samples = samples.value() / k;
            }
        }
    }
    return best;
}

std::string cell_csv_header() { return "dataset,noise,algo,best_T,best_sigma,accuracy,stderr,mean_samples"; }

std::string cell_csv_row(const CellResult& c) {
    return c.dataset + "," + fmt(c.noise, 2) + "," + to_string(c.algo) + "," + std::to_string(c.best_rounds) + "," +
           fmt(c.best_sigma, 2) + "," + fmt(c.mean_accuracy) + "," + fmt(c.stderr_accuracy) + "," +
           fmt(c.mean_samples, 1);
}

std::string cell_markdown_header() {
    return "| dataset | noise | algo | best_T | best_sigma | accuracy | stderr | mean_samples |\n"
           "|---|---|---|---|---|---|---|---|";
}

std::string cell_markdown_row(const CellResult& c) {
    std::string row = "| " + cell_csv_row(c) + " |";
    std::string out;
    for (char ch : row) out += ch == ',' ? std::string(" | ") : std::string(1, ch);
    return out;
}

HalfspaceOutcome run_halfspace(const HalfspaceParams& p) {
    std::vector<double> w = p.weights.empty() ? std::vector<double>(p.n, 1.0) : p.weights;
    const FiniteDistribution dist = gen_halfspace(p.n, w, p.theta, p.corrupt_rate);

    HalfspaceOutcome out;
    const double log_b = std::log(2.0 * static_cast<double>(parity_subset_count(p.n, p.degree)));
    BoostConfig cfg = default_config(p.gamma, p.epsilon, 0.05, log_b, false, p.constants);
    out.rounds = cfg.rounds;

    // best single parity by enumeration of its exact correlation
    double best_corr = -1.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << p.n); ++mask) {
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < p.n; ++i)
            if ((mask >> i) & 1) subset.push_back(i);
        if (subset.size() > p.degree) continue;
        best_corr = std::max(best_corr, std::abs(exact_corr(dist, Parity(subset, 1))));
    }
    out.best_parity_accuracy = (1.0 + best_corr) / 2.0;

    FiniteDistributionSource source(dist);
    const ParityLearner learner(p.degree);
    Rng rng(p.seed);
    const BoostResult r = boost(source, learner, cfg, rng);
    out.boosted_accuracy = 1.0 - exact_loss(dist, *r.final_hypothesis);
    out.target_accuracy = 1.0 - exact_loss(dist, FunctionHypothesis([&](std::span<const double> x) {
                                               double s = -p.theta;
                                               for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * x[i];
                                               return static_cast<double>(sign_of(s));
                                           }));
    out.samples = r.samples_drawn;
    return out;
}

BoostConfig planted_config(double epsilon) {
    ScheduleConstants c;
    c.rounds = 0.1;
    c.step = 5.0;
    c.threshold = 0.5;
    c.fresh = 3.0;
    c.holdout = 3.0;
    c.weak_batch = 4.0;
    return default_config(1.0, epsilon, 0.05, std::log(32.0), false, c);
}

BaselineConfig planted_kk09_config(double epsilon) {
    const BoostConfig ours = planted_config(epsilon);
    BaselineConfig cfg;
    cfg.gamma = 1.0;
    cfg.rounds = ours.rounds;
    cfg.step = ours.step;
    cfg.weak_batch = ours.weak_batch;
    cfg.branch_batch = ours.weak_batch;
    cfg.final_holdout = ours.final_holdout;
    return cfg;
}

PlantedRun run_planted_ours(const PlantedInstance& inst, const BoostConfig& cfg, std::uint64_t seed) {
    FiniteDistributionSource source(inst.dist);
    const ErmLearner learner(inst.cls);
    Rng rng(seed);
    const BoostResult r = boost(source, learner, cfg, rng);
    return {exact_corr(inst.dist, *r.final_hypothesis), r.samples_drawn};
}

PlantedRun run_planted_kk09(const PlantedInstance& inst, const BaselineConfig& cfg, std::uint64_t seed) {
    FiniteDistributionSource source(inst.dist);
    const ErmLearner learner(inst.cls);
    Rng rng(seed);
    const BoostResult r = boost_kk09(source, learner, cfg, rng);
    return {exact_corr(inst.dist, *r.final_hypothesis), r.samples_drawn};
}

PolicyBoostConfig rl_config(std::size_t rounds, std::size_t rollouts, AccessMode access) {
    PolicyBoostConfig cfg;
    cfg.rounds = rounds;
    cfg.selection_rollouts = rollouts;
    cfg.access = access;
    cfg.booster.gamma = 1.0;
    cfg.booster.rounds = 4;
    cfg.booster.step = 0.25;
    cfg.booster.mix = 0.25;
    cfg.booster.fresh_per_round = 500;
    cfg.booster.weak_batch = 1000;
    cfg.booster.final_holdout = 2000;
    cfg.booster.relabel_mode = RelabelMode::Stochastic;
    cfg.booster.branch_mode = BranchMode::EmpiricalBest;
    return cfg;
}

std::uint64_t config_hash(const std::string& canonical) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace agboost
