#pragma once

// Binary-action discounted tabular MDPs. Actions are +1 and -1; arrays
// indexed by action use slot 0 for +1 and slot 1 for -1.

#include <array>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "agboost/booster.hpp"
#include "agboost/rng.hpp"
#include "agboost/source.hpp"
#include "agboost/weak_learners.hpp"
#include "json.hpp"

namespace agboost {

inline std::size_t action_slot(int a) { return a > 0 ? 0 : 1; }

class RolloutCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kRolloutStepCap = 10'000'000;

struct TabularMDP {
    std::size_t n_states = 0;
    double discount = 0.0;                                      ///< beta in [0, 1)
    std::vector<std::array<double, 2>> reward;                  ///< r(s, a) in [0, 1]
    std::vector<std::array<std::vector<double>, 2>> transition; ///< P(. | s, a)
    std::vector<double> start;                                  ///< mu0
    std::vector<double> reset;                                  ///< nu

    /// Throws std::invalid_argument naming the violated field.
    void validate() const;

    static TabularMDP from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

TabularMDP load_mdp(const std::filesystem::path& path);

/// Convex combination of base policies, each given as P(action = +1 | s).
class MixturePolicy {
public:
    struct Component {
        double weight;
        std::vector<double> prob_plus;
    };

    MixturePolicy() = default;
    explicit MixturePolicy(std::vector<Component> components);

    static MixturePolicy uniform(std::size_t n_states);
    /// Deterministic policy a(s) = sign(h({s})).
    static MixturePolicy from_classifier(const Hypothesis& h, std::size_t n_states);

    /// (1 - eta) * this + eta * other.
    MixturePolicy mix(double eta, const MixturePolicy& other) const;

    std::size_t n_states() const { return aggregate_.size(); }
    const std::vector<Component>& components() const { return components_; }
    double prob_plus(std::size_t s) const { return aggregate_[s]; }

    int sample_action(std::size_t s, Rng& rng) const;
    /// Component by weight first, then its action. Same law as sample_action.
    int sample_action_by_component(std::size_t s, Rng& rng) const;

    nlohmann::json to_json() const;

private:
    std::vector<Component> components_;
    std::vector<double> aggregate_;
};

struct TrajectorySample {
    std::size_t state = 0;              ///< s_h
    std::array<double, 2> q_hat{0, 0};  ///< one nonzero entry, at the sampled action
    int sampled_action = 1;             ///< a'
    int pseudo_action = 1;              ///< y
    std::size_t accept_step = 0;        ///< h
    std::size_t episode_length = 0;     ///< transitions consumed
};

/// Walks under `policy` from `start_dist`, accepting the current state with
/// probability 1 - beta per step, then takes a uniform a' there and follows
/// `policy`, stopping with probability 1 - beta after every action. R is the
/// reward of the last action scaled by 1/(1 - beta), so E[R] = Q(s_h, a')
/// and 0 <= Q_hat <= 2/(1 - beta). y = a' with probability (1 - beta) R.
TrajectorySample sample_trajectory(const TabularMDP& mdp, const MixturePolicy& policy,
                                   const std::vector<double>& start_dist, Rng& rng);

std::vector<double> exact_value(const TabularMDP& mdp, const MixturePolicy& policy);
std::vector<std::array<double, 2>> exact_q(const TabularMDP& mdp, const MixturePolicy& policy);
/// sum_s dist(s) V(s)
double expected_value(const std::vector<double>& values, const std::vector<double>& dist);

struct RolloutEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t steps = 0;
};

/// Mean undiscounted reward sum over `episodes` runs from `start_dist`, each
/// continuing with probability beta after every action.
RolloutEstimate rollout_value(const TabularMDP& mdp, const MixturePolicy& policy,
                              const std::vector<double>& start_dist, std::size_t episodes, Rng& rng);

/// Example stream (x = {state}, y = pseudo action) for the booster.
class TrajectorySource final : public ExampleSource {
public:
    TrajectorySource(const TabularMDP& mdp, const MixturePolicy& policy, const std::vector<double>& start_dist)
        : mdp_(mdp), policy_(policy), start_(start_dist) {}
    LabeledExample draw(Rng& rng) override;
    std::size_t dim() const override { return 1; }
    std::size_t trajectories() const { return trajectories_; }
    std::size_t steps() const { return steps_; }

private:
    const TabularMDP& mdp_;
    const MixturePolicy& policy_;
    const std::vector<double>& start_;
    std::size_t trajectories_ = 0;
    std::size_t steps_ = 0;
};

enum class AccessMode { Episodic, Reset };

struct PolicyBoostConfig {
    std::size_t rounds = 10;                ///< outer T
    AccessMode access = AccessMode::Episodic;
    std::size_t selection_rollouts = 1000;  ///< P
    /// eta_t for t = 1..T; defaults to 2 / (t + 1).
    std::function<double(std::size_t)> step_schedule;
    BoostConfig booster;
    MixturePolicy initial;                  ///< pi_0; uniform when empty
};

struct PolicyBoostResult {
    MixturePolicy policy;
    std::size_t selected_round = 0;         ///< t of the returned pi_t
    std::vector<MixturePolicy> iterates;    ///< pi_0 .. pi_T
    std::vector<double> rollout_values;     ///< index t - 1: estimate for pi_t
    std::size_t trajectories = 0;
    std::size_t steps = 0;
};

PolicyBoostResult boost_policy(const TabularMDP& mdp, const WeakLearner& learner, const PolicyBoostConfig& cfg,
                               Rng& rng);

std::string to_string(AccessMode m);

}  // namespace agboost
