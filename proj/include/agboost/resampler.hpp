#pragma once

// The relabeled sampling distribution D_t built from all fresh batches seen
// so far. Round 1 is plain uniform resampling of its batch. Round s >= 2 is
// reached with the geometric selection weight sigma (1 - sigma)^{t - s}
// (round 1 keeps (1 - sigma)^{t - 1}); a draw from it picks a stored (x, y)
// uniformly and emits a pseudo label whose probability mixes the first and
// second derivative of the potential at the cached margins.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "agboost/dataset.hpp"
#include "agboost/rng.hpp"

namespace agboost {

class Ensemble;

struct PseudoLabelParams {
    double eta = 0.0;        ///< step of the direction being integrated over
    double sigma = 0.0;      ///< mixing weight
    double eta_prime = 0.0;  ///< in [0, eta]
};

/// Probability that the pseudo label is +1:
///   1/2 - [sigma phi'(y H) y + eta phi''(y (H + eta' h)) h] / (2 (eta + sigma)).
/// Throws InvariantViolation when the result is not a probability.
double pseudo_label_prob(int y, double prev_margin, double dir_value, const PseudoLabelParams& params);

/// Whether every pseudo-label probability is valid when |h| <= max_dir:
///   (sigma + eta a) exp(-eta a / (sigma + eta a)) <= eta + sigma,  a = max_dir.
/// The left side is the largest |sigma phi'(yH) y + eta phi''(.) h| can get.
bool pseudo_labels_valid(double eta, double sigma, double max_dir);

/// Expected pseudo label E[y_hat] with eta' integrated out analytically.
double expected_pseudo_label(int y, double prev_margin, double dir_value, double eta, double sigma);

/// Fractional relabel weight w = (1 - sigma) phi'(y H_prev) - phi'(y H_next).
double fractional_weight(int y, double prev_margin, double next_margin, double sigma);

/// Round-selection weights for a distribution with `rounds` rounds; entry
/// s - 1 is the probability of drawing from round s.
template <class T>
std::vector<T> round_selection_weights(std::size_t rounds, T sigma) {
    if (rounds == 0) throw std::invalid_argument("no rounds");
    std::vector<T> w(rounds);
    const T keep = T(1) - sigma;
    // suffix products: round s gets sigma * keep^{rounds - s}
    T power = T(1);
    for (std::size_t s = rounds; s >= 2; --s) {
        w[s - 1] = sigma * power;
        power = power * keep;
    }
    w[0] = power;  // keep^{rounds - 1}
    return w;
}

/// Fresh batch of one round with margins cached at push time.
struct RoundRecord {
    std::size_t round_index = 0;      ///< 1-based
    Dataset batch;
    std::vector<double> prev_margin;  ///< H_{t-1}(x) per stored example
    std::vector<double> dir_value;    ///< h_{t-1}(x) per stored example
    double step = 0.0;                ///< eta used for h_{t-1}
    double mix = 1.0;                 ///< sigma
};

class ReuseDistribution {
public:
    /// sigma must lie in (0, 1].
    explicit ReuseDistribution(double sigma);

    double sigma() const { return sigma_; }
    std::size_t rounds() const { return rounds_.size(); }
    const RoundRecord& round(std::size_t s) const { return rounds_.at(s - 1); }
    std::size_t stored_size() const { return offsets_.back(); }
    /// Global index of example i of round s (1-based s), counting across rounds.
    std::size_t global_index(std::size_t s, std::size_t i) const { return offsets_[s - 1] + i; }

    /// Round 1: only the batch. Later rounds: margins H_{t-1}(x), h_{t-1}(x)
    /// for every batch example and the step eta_{t-1} that produced H_t.
    void push_first(Dataset batch);
    void push_round(Dataset batch, std::vector<double> prev_margin, std::vector<double> dir_value,
                    double step);

    std::vector<double> selection_weights() const;

    /// `count` IID draws from D_t with unit weights. Row origins hold global indices.
    WeightedSet sample(std::size_t count, Rng& rng) const;

    /// Deterministic weighted dataset: every stored (x, y) emits (x, y) and
    /// (x, -y) with weights sel_s / S_s * (1 ± w) / 2. Round 1 uses w = 1.
    WeightedSet fractional_expand() const;
    /// Same, after checking that the last round's cached margins agree with
    /// the prefixes of `current` (the ensemble H_t).
    WeightedSet fractional_expand(const Ensemble& current) const;

private:
    double sigma_;
    std::vector<RoundRecord> rounds_;
    std::vector<std::size_t> offsets_{0};
};

}  // namespace agboost
