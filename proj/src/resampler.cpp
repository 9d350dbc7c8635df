#include "agboost/resampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "agboost/ensemble.hpp"
#include "agboost/errors.hpp"
#include "agboost/potential.hpp"

namespace agboost {
namespace {

constexpr double kProbSlack = 1e-12;

}  // namespace

bool pseudo_labels_valid(double eta, double sigma, double max_dir) {
    if (eta <= 0.0) return true;
    const double push = eta * max_dir;
    return (sigma + push) * std::exp(-push / (sigma + push)) <= (eta + sigma) * (1.0 + 1e-12);
}

double pseudo_label_prob(int y, double prev_margin, double dir_value, const PseudoLabelParams& params) {
    const double eta = params.eta;
    const double sigma = params.sigma;
    const double yd = static_cast<double>(y);
    const double numer = sigma * phi_prime(yd * prev_margin) * yd +
                         eta * phi_second(yd * (prev_margin + params.eta_prime * dir_value)) * dir_value;
    const double p = 0.5 - numer / (2.0 * (eta + sigma));
    if (!(p >= -kProbSlack && p <= 1.0 + kProbSlack))
        throw InvariantViolation("pseudo-label probability " + std::to_string(p) +
                                 " outside [0,1]; check sigma, eta and |h|");
    return std::clamp(p, 0.0, 1.0);
}

double expected_pseudo_label(int y, double prev_margin, double dir_value, double eta, double sigma) {
    // (1/eta) int_0^eta phi''(y(H + e h)) h de = y (phi'(y(H + eta h)) - phi'(y H)) / eta
    const double yd = static_cast<double>(y);
    const double first = sigma * phi_prime(yd * prev_margin) * yd;
    const double second = yd * (phi_prime(yd * (prev_margin + eta * dir_value)) - phi_prime(yd * prev_margin));
    return -(first + second) / (eta + sigma);
}

double fractional_weight(int y, double prev_margin, double next_margin, double sigma) {
    const double yd = static_cast<double>(y);
    return (1.0 - sigma) * phi_prime(prev_margin * yd) - phi_prime(next_margin * yd);
}

ReuseDistribution::ReuseDistribution(double sigma) : sigma_(sigma) {
    if (!(sigma > 0.0 && sigma <= 1.0)) throw std::invalid_argument("mixing weight sigma must lie in (0, 1]");
}

void ReuseDistribution::push_first(Dataset batch) {
    if (!rounds_.empty()) throw std::logic_error("first round already pushed");
    if (batch.empty()) throw std::invalid_argument("fresh batch is empty");
    RoundRecord r;
    r.round_index = 1;
    r.prev_margin.assign(batch.size(), 0.0);
    r.dir_value.assign(batch.size(), 0.0);
    r.mix = sigma_;
    r.batch = std::move(batch);
    offsets_.push_back(offsets_.back() + r.batch.size());
    rounds_.push_back(std::move(r));
}

void ReuseDistribution::push_round(Dataset batch, std::vector<double> prev_margin,
                                   std::vector<double> dir_value, double step) {
    if (rounds_.empty()) throw std::logic_error("push_first must precede push_round");
    if (batch.empty()) throw std::invalid_argument("fresh batch is empty");
    if (prev_margin.size() != batch.size() || dir_value.size() != batch.size())
        throw std::invalid_argument("margin cache does not match batch size");
    if (!(step >= 0.0) || !std::isfinite(step)) throw std::invalid_argument("step must be finite and >= 0");
    for (std::size_t i = 0; i < batch.size(); ++i)
        if (!std::isfinite(prev_margin[i]) || !std::isfinite(dir_value[i]))
            throw std::invalid_argument("cached margins must be finite");
    RoundRecord r;
    r.round_index = rounds_.size() + 1;
    r.prev_margin = std::move(prev_margin);
    r.dir_value = std::move(dir_value);
    r.step = step;
    r.mix = sigma_;
    r.batch = std::move(batch);
    offsets_.push_back(offsets_.back() + r.batch.size());
    rounds_.push_back(std::move(r));
}

std::vector<double> ReuseDistribution::selection_weights() const {
    return round_selection_weights<double>(rounds_.size(), sigma_);
}

WeightedSet ReuseDistribution::sample(std::size_t count, Rng& rng) const {
    if (rounds_.empty()) throw std::logic_error("cannot sample from an empty reuse distribution");
    const auto weights = selection_weights();
    std::vector<double> cumulative(weights.size());
    double acc = 0.0;
    for (std::size_t s = 0; s < weights.size(); ++s) cumulative[s] = (acc += weights[s]);

    WeightedSet out(rounds_.front().batch.dim());
    out.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        const double u = uniform01(rng) * acc;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        std::size_t s = static_cast<std::size_t>(it - cumulative.begin());
        if (s >= rounds_.size()) s = rounds_.size() - 1;
        // zero-weight rounds can only be hit through rounding at the boundary
        while (weights[s] == 0.0 && s + 1 < rounds_.size()) ++s;

        const RoundRecord& r = rounds_[s];
        const std::size_t i = uniform_index(rng, r.batch.size());
        const int y = r.batch.label(i);
        int label = y;
        if (r.round_index > 1) {
            const double eta_prime = uniform01(rng) * r.step;
            const double p = pseudo_label_prob(y, r.prev_margin[i], r.dir_value[i], {r.step, sigma_, eta_prime});
            label = uniform01(rng) < p ? 1 : -1;
        }
        out.add(r.batch.row(i), label, 1.0, offsets_[s] + i);
    }
    return out;
}

WeightedSet ReuseDistribution::fractional_expand() const {
    if (rounds_.empty()) throw std::logic_error("cannot expand an empty reuse distribution");
    const auto weights = selection_weights();
    WeightedSet out(rounds_.front().batch.dim());
    out.reserve(2 * stored_size());
    for (std::size_t s = 0; s < rounds_.size(); ++s) {
        const RoundRecord& r = rounds_[s];
        const double per_example = weights[s] / static_cast<double>(r.batch.size());
        for (std::size_t i = 0; i < r.batch.size(); ++i) {
            const int y = r.batch.label(i);
            double w = 1.0;
            if (r.round_index > 1) {
                const double next = r.prev_margin[i] + r.step * r.dir_value[i];
                w = fractional_weight(y, r.prev_margin[i], next, sigma_);
            }
            out.add(r.batch.row(i), y, per_example * (1.0 + w) / 2.0, offsets_[s] + i);
            out.add(r.batch.row(i), -y, per_example * (1.0 - w) / 2.0, offsets_[s] + i);
        }
    }
    return out;
}

WeightedSet ReuseDistribution::fractional_expand(const Ensemble& current) const {
    if (!rounds_.empty() && rounds_.size() > 1) {
        const RoundRecord& r = rounds_.back();
        if (current.size() == 0) throw std::invalid_argument("ensemble has no prefix for the last round");
        for (std::size_t i = 0; i < r.batch.size(); ++i) {
            const auto [before, dir] = current.split_last(r.batch.row(i));
            const double tol = 1e-9 * (1.0 + std::abs(before));
            if (std::abs(before - r.prev_margin[i]) > tol || std::abs(dir - r.dir_value[i]) > 1e-9 * (1.0 + std::abs(dir)))
                throw std::invalid_argument("round snapshot inconsistent with the current ensemble");
        }
    }
    return fractional_expand();
}

}  // namespace agboost
