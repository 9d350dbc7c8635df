#include "agboost/rl_sim.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fstream>

#include "agboost/errors.hpp"
#include "agboost/finite.hpp"

namespace agboost {
namespace {

void check_distribution(const std::vector<double>& p, std::size_t n, const std::string& what) {
    if (p.size() != n) throw std::invalid_argument(what + ": expected " + std::to_string(n) + " entries");
    CompensatedSum total;
    for (double v : p) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument(what + ": negative or non-finite entry");
        total.add(v);
    }
    if (std::abs(total.value() - 1.0) > 1e-12) throw std::invalid_argument(what + ": does not sum to 1");
}

std::size_t draw_categorical(const std::vector<double>& p, Rng& rng) {
    const double u = uniform01(rng);
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        if (u < acc) return i;
    }
    // rounding slack: last index with positive mass
    for (std::size_t i = p.size(); i-- > 0;)
        if (p[i] > 0.0) return i;
    return p.size() - 1;
}

void bump(std::size_t& steps) {
    if (++steps > kRolloutStepCap) throw RolloutCapExceeded("rollout exceeded 10^7 steps");
}

}  // namespace

void TabularMDP::validate() const {
    if (n_states == 0) throw std::invalid_argument("n_states must be positive");
    if (!(discount >= 0.0 && discount < 1.0)) throw std::invalid_argument("discount must lie in [0, 1)");
    if (reward.size() != n_states) throw std::invalid_argument("reward: expected one row per state");
    if (transition.size() != n_states) throw std::invalid_argument("transition: expected one row per state");
    for (std::size_t s = 0; s < n_states; ++s)
        for (std::size_t a = 0; a < 2; ++a) {
            const double r = reward[s][a];
            if (!(r >= 0.0 && r <= 1.0))
                throw std::invalid_argument("reward[" + std::to_string(s) + "] outside [0, 1]");
            check_distribution(transition[s][a], n_states,
                               "transition[" + std::to_string(s) + "][" + std::to_string(a) + "]");
        }
    check_distribution(start, n_states, "start");
    check_distribution(reset, n_states, "reset");
}

TabularMDP TabularMDP::from_json(const nlohmann::json& j) {
    TabularMDP m;
    try {
        m.n_states = j.at("n_states").get<std::size_t>();
        m.discount = j.at("discount").get<double>();
        for (const auto& row : j.at("reward")) {
            if (row.size() != 2) throw std::invalid_argument("reward rows need two entries");
            m.reward.push_back({row[0].get<double>(), row[1].get<double>()});
        }
        for (const auto& row : j.at("transition")) {
            if (row.size() != 2) throw std::invalid_argument("transition rows need two actions");
            m.transition.push_back({row[0].get<std::vector<double>>(), row[1].get<std::vector<double>>()});
        }
        m.start = j.at("start").get<std::vector<double>>();
        m.reset = j.contains("reset") ? j.at("reset").get<std::vector<double>>() : m.start;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed MDP: ") + e.what());
    }
    m.validate();
    return m;
}

nlohmann::json TabularMDP::to_json() const {
    nlohmann::json j;
    j["n_states"] = n_states;
    j["discount"] = discount;
    j["start"] = start;
    j["reset"] = reset;
    j["reward"] = nlohmann::json::array();
    j["transition"] = nlohmann::json::array();
    for (std::size_t s = 0; s < n_states; ++s) {
        j["reward"].push_back({reward[s][0], reward[s][1]});
        j["transition"].push_back({transition[s][0], transition[s][1]});
    }
    return j;
}

TabularMDP load_mdp(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
    try {
        return TabularMDP::from_json(j);
    } catch (const std::invalid_argument& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

MixturePolicy::MixturePolicy(std::vector<Component> components) : components_(std::move(components)) {
    if (components_.empty()) throw std::invalid_argument("mixture needs at least one component");
    const std::size_t n = components_.front().prob_plus.size();
    CompensatedSum total;
    for (const auto& c : components_) {
        if (c.prob_plus.size() != n) throw std::invalid_argument("components disagree on the state count");
        if (!(c.weight >= 0.0)) throw std::invalid_argument("negative mixture weight");
        for (double p : c.prob_plus)
            if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("action probability outside [0, 1]");
        total.add(c.weight);
    }
    if (std::abs(total.value() - 1.0) > 1e-9) throw std::invalid_argument("mixture weights do not sum to 1");
    aggregate_.assign(n, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        CompensatedSum acc;
        for (const auto& c : components_) acc.add(c.weight * c.prob_plus[s]);
        aggregate_[s] = std::clamp(acc.value(), 0.0, 1.0);
    }
}

MixturePolicy MixturePolicy::uniform(std::size_t n_states) {
    return MixturePolicy({{1.0, std::vector<double>(n_states, 0.5)}});
}

MixturePolicy MixturePolicy::from_classifier(const Hypothesis& h, std::size_t n_states) {
    std::vector<double> p(n_states);
    for (std::size_t s = 0; s < n_states; ++s) {
        const double x = static_cast<double>(s);
        p[s] = sign_of(h.value({&x, 1})) > 0 ? 1.0 : 0.0;
    }
    return MixturePolicy({{1.0, std::move(p)}});
}

MixturePolicy MixturePolicy::mix(double eta, const MixturePolicy& other) const {
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("mixing step must lie in [0, 1]");
    if (other.n_states() != n_states()) throw std::invalid_argument("policies disagree on the state count");
    if (eta == 0.0) return *this;
    if (eta == 1.0) return other;
    std::vector<Component> parts;
    for (const auto& c : components_) parts.push_back({(1.0 - eta) * c.weight, c.prob_plus});
    for (const auto& c : other.components_) parts.push_back({eta * c.weight, c.prob_plus});
    return MixturePolicy(std::move(parts));
}

int MixturePolicy::sample_action(std::size_t s, Rng& rng) const {
    return uniform01(rng) < aggregate_[s] ? 1 : -1;
}

int MixturePolicy::sample_action_by_component(std::size_t s, Rng& rng) const {
    const double u = uniform01(rng);
    double acc = 0.0;
    std::size_t k = components_.size() - 1;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        acc += components_[i].weight;
        if (u < acc) {
            k = i;
            break;
        }
    }
    return uniform01(rng) < components_[k].prob_plus[s] ? 1 : -1;
}

nlohmann::json MixturePolicy::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : components_) j.push_back({{"weight", c.weight}, {"prob_plus", c.prob_plus}});
    return {{"components", j}, {"prob_plus", aggregate_}};
}

TrajectorySample sample_trajectory(const TabularMDP& mdp, const MixturePolicy& policy,
                                   const std::vector<double>& start_dist, Rng& rng) {
    const double beta = mdp.discount;
    TrajectorySample out;
    std::size_t s = draw_categorical(start_dist, rng);
    out.sampled_action = random_sign(rng);
    std::size_t steps = 0;
    while (uniform01(rng) < beta) {
        const int a = policy.sample_action(s, rng);
        s = draw_categorical(mdp.transition[s][action_slot(a)], rng);
        bump(steps);
    }
    out.state = s;
    out.accept_step = steps;

    int a = out.sampled_action;
    while (true) {
        if (!(uniform01(rng) < beta)) break;
        s = draw_categorical(mdp.transition[s][action_slot(a)], rng);
        bump(steps);
        a = policy.sample_action(s, rng);
    }
    const double R = mdp.reward[s][action_slot(a)] / (1.0 - beta);
    out.q_hat[action_slot(out.sampled_action)] = 2.0 * R;
    const double accept = (1.0 - beta) / 2.0 * 2.0 * R;
    out.pseudo_action = uniform01(rng) < accept ? out.sampled_action : -out.sampled_action;
    out.episode_length = steps;
    return out;
}

std::vector<double> exact_value(const TabularMDP& mdp, const MixturePolicy& policy) {
    const std::size_t n = mdp.n_states;
    if (policy.n_states() != n) throw std::invalid_argument("policy and MDP disagree on the state count");
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd r(n);
    for (std::size_t s = 0; s < n; ++s) {
        const double p = policy.prob_plus(s);
        r(s) = p * mdp.reward[s][0] + (1.0 - p) * mdp.reward[s][1];
        for (std::size_t t = 0; t < n; ++t)
            A(s, t) -= mdp.discount * (p * mdp.transition[s][0][t] + (1.0 - p) * mdp.transition[s][1][t]);
    }
    const Eigen::VectorXd v = A.partialPivLu().solve(r);
    if (!v.allFinite()) throw InvariantViolation("policy evaluation system is singular");
    return {v.data(), v.data() + n};
}

std::vector<std::array<double, 2>> exact_q(const TabularMDP& mdp, const MixturePolicy& policy) {
    const auto v = exact_value(mdp, policy);
    std::vector<std::array<double, 2>> q(mdp.n_states);
    for (std::size_t s = 0; s < mdp.n_states; ++s)
        for (std::size_t a = 0; a < 2; ++a) {
            CompensatedSum next;
            for (std::size_t t = 0; t < mdp.n_states; ++t) next.add(mdp.transition[s][a][t] * v[t]);
            q[s][a] = mdp.reward[s][a] + mdp.discount * next.value();
        }
    return q;
}

double expected_value(const std::vector<double>& values, const std::vector<double>& dist) {
    if (values.size() != dist.size()) throw std::invalid_argument("size mismatch");
    CompensatedSum acc;
    for (std::size_t s = 0; s < values.size(); ++s) acc.add(values[s] * dist[s]);
    return acc.value();
}

RolloutEstimate rollout_value(const TabularMDP& mdp, const MixturePolicy& policy,
                              const std::vector<double>& start_dist, std::size_t episodes, Rng& rng) {
    if (episodes == 0) throw std::invalid_argument("need at least one episode");
    RolloutEstimate est;
    CompensatedSum sum, sum_sq;
    for (std::size_t e = 0; e < episodes; ++e) {
        std::size_t s = draw_categorical(start_dist, rng);
        double ret = 0.0;
        std::size_t steps = 0;
        while (true) {
            const int a = policy.sample_action(s, rng);
            ret += mdp.reward[s][action_slot(a)];
            if (!(uniform01(rng) < mdp.discount)) break;
            s = draw_categorical(mdp.transition[s][action_slot(a)], rng);
            bump(steps);
        }
        est.steps += steps + 1;
        sum.add(ret);
        sum_sq.add(ret * ret);
    }
    const double n = static_cast<double>(episodes);
    est.mean = sum.value() / n;
    if (episodes > 1) {
        const double var = std::max(0.0, (sum_sq.value() - n * est.mean * est.mean) / (n - 1.0));
        est.stderr_ = std::sqrt(var / n);
    }
    return est;
}

LabeledExample TrajectorySource::draw(Rng& rng) {
    const auto t = sample_trajectory(mdp_, policy_, start_, rng);
    ++trajectories_;
    steps_ += t.episode_length;
    return {{static_cast<double>(t.state)}, t.pseudo_action};
}

PolicyBoostResult boost_policy(const TabularMDP& mdp, const WeakLearner& learner, const PolicyBoostConfig& cfg,
                               Rng& rng) {
    mdp.validate();
    if (cfg.rounds == 0) throw std::invalid_argument("need at least one outer round");
    if (cfg.selection_rollouts == 0) throw std::invalid_argument("need at least one selection rollout");
    const auto& start = cfg.access == AccessMode::Episodic ? mdp.start : mdp.reset;

    PolicyBoostResult out;
    out.iterates.push_back(cfg.initial.components().empty() ? MixturePolicy::uniform(mdp.n_states) : cfg.initial);
    for (std::size_t t = 1; t <= cfg.rounds; ++t) {
        const double eta = cfg.step_schedule ? cfg.step_schedule(t) : 2.0 / (static_cast<double>(t) + 1.0);
        const MixturePolicy& prev = out.iterates.back();
        MixturePolicy next = prev;
        if (eta > 0.0) {
            TrajectorySource source(mdp, prev, start);
            const BoostResult inner = boost(source, learner, cfg.booster, rng);
            out.trajectories += source.trajectories();
            out.steps += source.steps();
            next = prev.mix(eta, MixturePolicy::from_classifier(*inner.final_hypothesis, mdp.n_states));
        }
        out.iterates.push_back(std::move(next));
    }

    double best = -1.0;
    for (std::size_t t = 1; t <= cfg.rounds; ++t) {
        const auto est = rollout_value(mdp, out.iterates[t], mdp.start, cfg.selection_rollouts, rng);
        out.steps += est.steps;
        out.rollout_values.push_back(est.mean);
        if (est.mean > best) {
            best = est.mean;
            out.selected_round = t;
        }
    }
    out.policy = out.iterates[out.selected_round];
    return out;
}

std::string to_string(AccessMode m) { return m == AccessMode::Episodic ? "episodic" : "reset"; }

}  // namespace agboost
