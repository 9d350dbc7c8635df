#include "agboost/booster.hpp"

#include <cmath>
#include <stdexcept>

#include "agboost/kernels.hpp"

namespace agboost {
namespace {

std::size_t round_up(double v) {
    const double r = std::round(v);
    const double c = std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v)) ? r : std::ceil(v);
    return static_cast<std::size_t>(std::max(1.0, c));
}

}  // namespace

void BoostConfig::validate() const {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in (0, 1]");
    if (rounds < 1 || fresh_per_round < 1 || final_holdout < 1 || weak_batch < 1)
        throw std::invalid_argument("T, S, S0 and m must be at least 1");
    if (!(mix > 0.0 && mix <= 1.0)) throw std::invalid_argument("sigma must lie in (0, 1]");
    if (!(step >= 0.0) || !std::isfinite(step)) throw std::invalid_argument("step must be finite and >= 0");
    if (!(branch_threshold >= 0.0)) throw std::invalid_argument("tau must be >= 0");
    if (relabel_mode == RelabelMode::Stochastic && step > 0.0) {
        if (!pseudo_labels_valid(step, mix, std::max(1.0, 1.0 / gamma)))
            throw std::invalid_argument("stochastic relabeling: sigma too small for eta and 1/gamma");
    }
}

BoostConfig default_config(double gamma, double epsilon, double delta, double log_base_size,
                           bool oracle_efficient, const ScheduleConstants& c) {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in (0, 1]");
    if (!(epsilon > 0.0) || !(delta > 0.0 && delta < 1.0) || !(log_base_size > 0.0))
        throw std::invalid_argument("epsilon, delta and log|B| must be positive (delta < 1)");
    const double g = gamma, e = epsilon, L = log_base_size;

    BoostConfig cfg;
    cfg.gamma = g;
    cfg.epsilon = e;
    cfg.delta = delta;
    cfg.constants = c;
    if (oracle_efficient) {
        cfg.rounds = round_up(c.rounds / (g * g * e * e));
        cfg.step = c.step * g * g * e;
        cfg.fresh_per_round = round_up(c.fresh * (L / (g * e) + L * L * L));
    } else {
        cfg.rounds = round_up(c.rounds * L / (g * g * e * e));
        cfg.step = c.step * g * g * e / L;
        cfg.fresh_per_round = round_up(c.fresh / (g * e));
    }
    cfg.mix = cfg.step / g;
    cfg.branch_threshold = c.threshold * g * e;
    cfg.final_holdout = round_up(c.holdout / (e * e));
    cfg.weak_batch = round_up(c.weak_batch / (g * g * e * e));
    return cfg;
}

EnsembleComponent::Kind branch(double weak_corr, const BoostConfig& cfg, double negsign_corr) {
    using Kind = EnsembleComponent::Kind;
    if (cfg.branch_mode == BranchMode::EmpiricalBest)
        return weak_corr > negsign_corr ? Kind::ScaledWeak : Kind::NegSign;
    return weak_corr > cfg.branch_threshold ? Kind::ScaledWeak : Kind::NegSign;
}

double adaptive_step(double corr_hat, double base, StepMode mode) {
    if (mode == StepMode::AdaptiveCorrelation) return base * std::max(corr_hat, 0.0);
    return base;
}

Booster::Booster(ExampleSource& source, const WeakLearner& learner, BoostConfig cfg)
    : source_(source), learner_(learner), cfg_(cfg), reuse_((cfg.validate(), cfg.mix)) {}

Dataset Booster::draw(std::size_t count, Rng& rng) {
    Dataset batch(source_.dim());
    batch.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        batch.add(source_.draw(rng));
        ++samples_drawn_;
    }
    return batch;
}

void Booster::run_round(Rng& rng) {
    const std::size_t t = completed_rounds() + 1;
    if (t > cfg_.rounds) throw std::logic_error("all configured rounds already ran");

    Dataset batch = draw(cfg_.fresh_per_round, rng);
    if (t == 1) {
        stored_margin_.insert(stored_margin_.end(), batch.size(), 0.0);
        reuse_.push_first(std::move(batch));
    } else {
        const double last_step = ensemble_.component(ensemble_.size() - 1).step;
        std::vector<double> prev(batch.size()), dir(batch.size());
        for (std::size_t i = 0; i < batch.size(); ++i) {
            const auto [before, d] = ensemble_.split_last(batch.row(i));
            prev[i] = before;
            dir[i] = d;
            stored_margin_.push_back(before + last_step * d);
        }
        reuse_.push_round(std::move(batch), std::move(prev), std::move(dir), last_step);
    }

    const WeightedSet input = cfg_.relabel_mode == RelabelMode::Stochastic
                                  ? reuse_.sample(cfg_.weak_batch, rng)
                                  : reuse_.fractional_expand();

    HypothesisPtr weak;
    try {
        weak = learner_.fit(input);
    } catch (const std::exception& e) {
        throw BoostError(t, std::string("weak learner failed: ") + e.what());
    }
    if (!weak) throw BoostError(t, "weak learner returned no hypothesis");

    const double total = input.total_weight();
    const auto wy = input.signed_weights();
    const double weak_corr = kernels::dot(wy, predictions(*weak, input)) / total;
    std::vector<double> margins(input.size());
    for (std::size_t i = 0; i < input.size(); ++i) margins[i] = stored_margin_[input.origin(i)];
    const double negsign_corr = -kernels::sign_dot(wy, margins) / total;

    const auto kind = branch(weak_corr, cfg_, negsign_corr);
    const bool take_weak = kind == EnsembleComponent::Kind::ScaledWeak;
    const double step = adaptive_step(take_weak ? weak_corr : negsign_corr, cfg_.step, cfg_.step_mode);
    ensemble_.append(take_weak ? EnsembleComponent::scaled_weak(weak, 1.0 / cfg_.gamma, step)
                               : EnsembleComponent::neg_sign(step));

    // keep H_{t+1}(x) current for every stored example
    const std::size_t k = ensemble_.size() - 1;
    for (std::size_t s = 1; s <= reuse_.rounds(); ++s) {
        const Dataset& b = reuse_.round(s).batch;
        std::span<double> slice(stored_margin_.data() + reuse_.global_index(s, 0), b.size());
        ensemble_.advance(k, b.features(), b.dim(), slice);
    }

    trace_.push_back({t, kind, weak_corr, negsign_corr, step});
}

BoostResult Booster::finish(Rng& rng) {
    if (completed_rounds() != cfg_.rounds) throw std::logic_error("finish called before all rounds ran");
    const Dataset holdout = draw(cfg_.final_holdout, rng);
    const PostSelection sel = post_select(ensemble_, holdout);

    BoostResult result;
    auto shared = std::make_shared<const Ensemble>(ensemble_);
    result.final_hypothesis = std::make_shared<EnsembleSign>(shared, sel.prefix);
    result.ensemble = shared;
    result.selected_prefix = sel.prefix;
    result.rounds = trace_;
    result.holdout_corr = sel.holdout_corr;
    result.samples_drawn = samples_drawn_;
    return result;
}

BoostResult boost(ExampleSource& source, const WeakLearner& learner, const BoostConfig& cfg, Rng& rng) {
    Booster booster(source, learner, cfg);
    for (std::size_t t = 0; t < cfg.rounds; ++t) booster.run_round(rng);
    return booster.finish(rng);
}

std::string to_string(RelabelMode m) { return m == RelabelMode::Stochastic ? "stochastic" : "fractional"; }
std::string to_string(StepMode m) { return m == StepMode::Fixed ? "fixed" : "adaptive"; }
std::string to_string(BranchMode m) { return m == BranchMode::Threshold ? "threshold" : "empirical-best"; }

}  // namespace agboost
