#include "agboost/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include "agboost/kernels.hpp"
#include "agboost/potential.hpp"

namespace agboost {
namespace {

void validate_common(const BaselineConfig& c) {
    if (!(c.gamma > 0.0 && c.gamma <= 1.0)) throw std::invalid_argument("gamma must lie in (0, 1]");
    if (c.rounds < 1 || c.final_holdout < 1) throw std::invalid_argument("T and S0 must be at least 1");
    if (!(c.step >= 0.0) || !std::isfinite(c.step)) throw std::invalid_argument("step must be finite and >= 0");
}

HypothesisPtr fit_tagged(const WeakLearner& learner, const WeightedSet& input, std::size_t t) {
    try {
        auto w = learner.fit(input);
        if (!w) throw std::runtime_error("no hypothesis returned");
        return w;
    } catch (const std::exception& e) {
        throw BoostError(t, std::string("weak learner failed: ") + e.what());
    }
}

std::vector<double> margins_on(const Ensemble& ens, const Dataset& data) {
    std::vector<double> m(data.size());
    ens.values(data.features(), data.dim(), m);
    return m;
}

BoostResult finish(const Ensemble& ensemble, const Dataset& holdout, std::vector<RoundTrace> trace,
                   std::size_t drawn) {
    const PostSelection sel = post_select(ensemble, holdout);
    BoostResult r;
    auto shared = std::make_shared<const Ensemble>(ensemble);
    r.final_hypothesis = std::make_shared<EnsembleSign>(shared, sel.prefix);
    r.ensemble = shared;
    r.selected_prefix = sel.prefix;
    r.rounds = std::move(trace);
    r.holdout_corr = sel.holdout_corr;
    r.samples_drawn = drawn;
    return r;
}

}  // namespace

void BaselineConfig::validate_kk09() const {
    validate_common(*this);
    if (weak_batch < 1 || branch_batch < 1) throw std::invalid_argument("m and s must be at least 1");
}

void BaselineConfig::validate_bhs20() const {
    validate_common(*this);
    if (pool_size <= final_holdout) throw std::invalid_argument("N must exceed the holdout size S0");
}

WeightedSet madaboost_relabel(const Dataset& data, std::span<const double> margins) {
    WeightedSet out(data.dim());
    out.reserve(2 * data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const int y = data.label(i);
        const double w = madaboost_weight(y * margins[i]);
        out.add(data.row(i), y, (1.0 + w) / 2.0, i);
        out.add(data.row(i), -y, (1.0 - w) / 2.0, i);
    }
    return out;
}

BoostResult boost_kk09(ExampleSource& source, const WeakLearner& learner, const BaselineConfig& cfg, Rng& rng) {
    cfg.validate_kk09();
    Ensemble ensemble;
    std::vector<RoundTrace> trace;
    std::size_t drawn = 0;

    for (std::size_t t = 1; t <= cfg.rounds; ++t) {
        const Dataset train = source.draw_batch(cfg.weak_batch, rng);
        drawn += train.size();
        const WeightedSet input = madaboost_relabel(train, margins_on(ensemble, train));
        const HypothesisPtr weak = fit_tagged(learner, input, t);

        // branch on a fresh batch, relabeled the same way
        const Dataset check = source.draw_batch(cfg.branch_batch, rng);
        drawn += check.size();
        const auto check_margins = margins_on(ensemble, check);
        const WeightedSet relabeled = madaboost_relabel(check, check_margins);
        const double total = relabeled.total_weight();
        const auto wy = relabeled.signed_weights();
        const double weak_corr = kernels::dot(wy, predictions(*weak, relabeled)) / total;
        std::vector<double> rel_margins(relabeled.size());
        for (std::size_t i = 0; i < relabeled.size(); ++i) rel_margins[i] = check_margins[relabeled.origin(i)];
        const double negsign_corr = -kernels::sign_dot(wy, rel_margins) / total;

        const bool take_weak = weak_corr >= negsign_corr;
        const double step = adaptive_step(take_weak ? weak_corr : negsign_corr, cfg.step, cfg.step_mode);
        ensemble.append(take_weak ? EnsembleComponent::scaled_weak(weak, 1.0 / cfg.gamma, step)
                                  : EnsembleComponent::neg_sign(step));
        trace.push_back({t, take_weak ? EnsembleComponent::Kind::ScaledWeak : EnsembleComponent::Kind::NegSign,
                         weak_corr, negsign_corr, step});
    }

    const Dataset holdout = source.draw_batch(cfg.final_holdout, rng);
    drawn += holdout.size();
    return finish(ensemble, holdout, std::move(trace), drawn);
}

BoostResult boost_bhs20(ExampleSource& source, const WeakLearner& learner, const BaselineConfig& cfg, Rng& rng) {
    cfg.validate_bhs20();
    const Dataset pool = source.draw_batch(cfg.pool_size, rng);
    const std::size_t n_train = cfg.pool_size - cfg.final_holdout;
    std::vector<std::size_t> train_idx(n_train), hold_idx(cfg.final_holdout);
    for (std::size_t i = 0; i < n_train; ++i) train_idx[i] = i;
    for (std::size_t i = 0; i < cfg.final_holdout; ++i) hold_idx[i] = n_train + i;
    const Dataset train = pool.subset(train_idx);
    const Dataset holdout = pool.subset(hold_idx);

    Ensemble ensemble;
    std::vector<RoundTrace> trace;
    std::vector<double> margins(train.size(), 0.0);
    for (std::size_t t = 1; t <= cfg.rounds; ++t) {
        const WeightedSet input = madaboost_relabel(train, margins);
        const HypothesisPtr weak = fit_tagged(learner, input, t);
        const auto wy = input.signed_weights();
        const double total = input.total_weight();
        const double weak_corr = kernels::dot(wy, predictions(*weak, input)) / total;
        std::vector<double> rel_margins(input.size());
        for (std::size_t i = 0; i < input.size(); ++i) rel_margins[i] = margins[input.origin(i)];
        const double negsign_corr = -kernels::sign_dot(wy, rel_margins) / total;

        const double step = adaptive_step(weak_corr, cfg.step, cfg.step_mode);
        ensemble.append(EnsembleComponent::scaled_weak(weak, 1.0 / cfg.gamma, step));
        ensemble.advance(ensemble.size() - 1, train.features(), train.dim(), margins);
        trace.push_back({t, EnsembleComponent::Kind::ScaledWeak, weak_corr, negsign_corr, step});
    }
    return finish(ensemble, holdout, std::move(trace), cfg.pool_size);
}

}  // namespace agboost
