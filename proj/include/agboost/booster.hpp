#pragma once

// Agnostic boosting with sample reuse. Each round draws S fresh examples,
// folds them into the reuse distribution D_t, trains the weak learner on
// m draws from D_t (or on its fractional expansion), and appends either
// W_t / gamma or -sign(H_t) to the ensemble. A fresh holdout of S0
// examples picks the best sign(H_t) at the end.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "agboost/ensemble.hpp"
#include "agboost/resampler.hpp"
#include "agboost/rng.hpp"
#include "agboost/source.hpp"
#include "agboost/weak_learners.hpp"

namespace agboost {

enum class RelabelMode { Stochastic, Fractional };
enum class StepMode { Fixed, AdaptiveCorrelation };
enum class BranchMode { Threshold, EmpiricalBest };

/// Multipliers for every O(.) in the parameter schedules. All default to 1.
struct ScheduleConstants {
    double rounds = 1.0;     ///< c_T
    double step = 1.0;       ///< c_eta
    double threshold = 1.0;  ///< c_tau
    double fresh = 1.0;      ///< c_S
    double holdout = 1.0;    ///< c_0
    double weak_batch = 1.0; ///< c_m
};

struct BoostConfig {
    double gamma = 1.0;
    double epsilon = 0.1;
    double delta = 0.05;
    std::size_t rounds = 1;           ///< T
    double step = 0.1;                ///< eta (base step in adaptive mode)
    double mix = 0.1;                 ///< sigma
    double branch_threshold = 0.0;    ///< tau
    std::size_t fresh_per_round = 1;  ///< S
    std::size_t weak_batch = 1;       ///< m
    std::size_t final_holdout = 1;    ///< S0
    RelabelMode relabel_mode = RelabelMode::Stochastic;
    StepMode step_mode = StepMode::Fixed;
    BranchMode branch_mode = BranchMode::Threshold;
    ScheduleConstants constants;

    void validate() const;
};

/// Parameter presets. The default follows the sample-optimal schedule
///   T = c_T L / (g^2 e^2), eta = c_eta g^2 e / L, sigma = eta / g,
///   tau = c_tau g e, S = c_S / (g e), S0 = c_0 / e^2, m = c_m / (g^2 e^2)
/// with L = log|B|. The oracle-efficient preset uses
///   T = c_T / (g^2 e^2), eta = c_eta g^2 e, S = c_S (L / (g e) + L^3).
/// Integer quantities are rounded up.
BoostConfig default_config(double gamma, double epsilon, double delta, double log_base_size,
                           bool oracle_efficient = false, const ScheduleConstants& constants = {});

/// Which component to append. `negsign_corr` is only consulted in EmpiricalBest mode.
EnsembleComponent::Kind branch(double weak_corr, const BoostConfig& cfg, double negsign_corr = 0.0);

/// base * max(corr, 0) in adaptive mode, base otherwise.
double adaptive_step(double corr_hat, double base, StepMode mode);

struct RoundTrace {
    std::size_t round = 0;
    EnsembleComponent::Kind branch = EnsembleComponent::Kind::ScaledWeak;
    double weak_corr = 0.0;     ///< corr of W_t on the learner's input
    double negsign_corr = 0.0;  ///< corr of -sign(H_t) on the same input
    double step = 0.0;
};

struct BoostResult {
    HypothesisPtr final_hypothesis;           ///< sign(H_t) chosen on the holdout
    std::shared_ptr<const Ensemble> ensemble; ///< H_{T+1}
    std::size_t selected_prefix = 0;          ///< components in the chosen sign(H_t), i.e. t - 1
    std::vector<RoundTrace> rounds;
    std::vector<double> holdout_corr;         ///< index k: holdout corr of sign(after k components)
    std::size_t samples_drawn = 0;
};

/// Round-by-round state machine; `boost` drives it to completion.
class Booster {
public:
    Booster(ExampleSource& source, const WeakLearner& learner, BoostConfig cfg);

    /// Runs round t = completed_rounds() + 1.
    void run_round(Rng& rng);
    /// Draws the holdout and post-selects. Call once after the last round.
    BoostResult finish(Rng& rng);

    std::size_t completed_rounds() const { return trace_.size(); }
    const BoostConfig& config() const { return cfg_; }
    const Ensemble& ensemble() const { return ensemble_; }
    const ReuseDistribution& reuse() const { return reuse_; }
    const std::vector<RoundTrace>& trace() const { return trace_; }
    std::size_t samples_drawn() const { return samples_drawn_; }
    /// H_t(x) for every stored example, indexed like ReuseDistribution::global_index.
    const std::vector<double>& stored_margins() const { return stored_margin_; }

private:
    Dataset draw(std::size_t count, Rng& rng);

    ExampleSource& source_;
    const WeakLearner& learner_;
    BoostConfig cfg_;
    ReuseDistribution reuse_;
    Ensemble ensemble_;
    std::vector<RoundTrace> trace_;
    std::vector<double> stored_margin_;
    std::size_t samples_drawn_ = 0;
};

BoostResult boost(ExampleSource& source, const WeakLearner& learner, const BoostConfig& cfg, Rng& rng);

/// Round-tagged learner failure.
class BoostError : public std::runtime_error {
public:
    BoostError(std::size_t round, const std::string& what)
        : std::runtime_error("round " + std::to_string(round) + ": " + what), round_(round) {}
    std::size_t round() const { return round_; }

private:
    std::size_t round_;
};

std::string to_string(RelabelMode m);
std::string to_string(StepMode m);
std::string to_string(BranchMode m);

}  // namespace agboost
