#pragma once

// Exact population functionals over finite distributions and empirical
// checks of the identities the booster relies on:
//
//   corr_D(h)        = E[y h(x)]
//   Phi_D(H)         = E[phi(y H(x))]
//   Phi'_D(H, h)     = E[phi'(y H(x)) y h(x)]
//   Phi''_D(H, h, g) = E[phi''(y H(x)) h(x) g(x)]
//
// Expectations over eta' ~ Unif[0, eta] are evaluated by adaptive
// Gauss-Kronrod quadrature, independently of the closed forms used by the
// resampler.

#include <cstddef>

#include "agboost/booster.hpp"
#include "agboost/finite.hpp"
#include "agboost/hypothesis.hpp"
#include "agboost/resampler.hpp"
#include "agboost/weak_learners.hpp"

namespace agboost {

double exact_corr(const FiniteDistribution& dist, const Hypothesis& h);
/// P(sign(h(x)) != y)
double exact_loss(const FiniteDistribution& dist, const Hypothesis& h);
double exact_potential(const FiniteDistribution& dist, const Hypothesis& H);
double exact_phi_prime(const FiniteDistribution& dist, const Hypothesis& H, const Hypothesis& h);
double exact_phi_second(const FiniteDistribution& dist, const Hypothesis& H, const Hypothesis& h,
                        const Hypothesis& g);

/// (1/eta) int_0^eta phi''(y (margin + e dir)) de, to absolute tolerance 1e-10.
/// Throws std::runtime_error if the quadrature does not converge.
double average_phi_second(int y, double margin, double dir, double eta);

/// Phi'(H, sign H) - Phi'(H, h*) - (corr(h*) - corr(sign H)); never below -1e-12.
double check_consistency_gap(const FiniteDistribution& dist, const Hypothesis& H, const Hypothesis& h_star);

/// Phi'(H + eta g, h) - [Phi'(H, h) + eta E_{eta'} Phi''(H + eta' g, h, g)].
double check_taylor_identity(const FiniteDistribution& dist, const Hypothesis& H_prev, const Hypothesis& h_dir,
                             double eta, const Hypothesis& h_test);

/// corr_{D_t}(h) of a realized reuse distribution, relabel expectations by quadrature.
double exact_reuse_corr(const ReuseDistribution& reuse, const Hypothesis& h);

struct MartingaleCheck {
    double estimate = 0.0;    ///< Monte Carlo mean of Delta_t
    double stderr_ = 0.0;     ///< standard error of that mean
    double expected = 0.0;    ///< (1 - sigma) Delta_{t-1}
    double delta_prev = 0.0;  ///< Delta_{t-1}
    std::size_t replications = 0;

    bool within(double k_sigma) const;
};

/// Replays round t = state.completed_rounds() + 1 `replications` times with
/// fresh batches from `dist`. Delta_t = Phi'(H_t, h) + (1 + eta/sigma) corr_{D_t}(h).
/// Requires a fixed-step booster that has completed at least one round.
MartingaleCheck check_martingale_recursion(const FiniteDistribution& dist, const Booster& state,
                                           const Hypothesis& h_test, std::size_t replications, Rng& rng);

/// argmax_h exact_corr over a finite class; ties to the lowest index.
ErmFit best_in_class(const FiniteDistribution& dist, const FiniteClass& cls);

/// Real-valued lookup table over domain indices x[0]; used for random test instances.
class RealTable final : public Hypothesis {
public:
    explicit RealTable(std::vector<double> values) : values_(std::move(values)) {}
    double value(std::span<const double> x) const override;
    nlohmann::json to_json() const override { return {{"type", "real_table"}, {"values", values_}}; }

private:
    std::vector<double> values_;
};

/// Random distribution over at most `max_atoms` distinct (index, label) atoms
/// on a domain of `domain_size` points (1-D feature = index).
FiniteDistribution random_finite_distribution(std::size_t domain_size, std::size_t max_atoms, Rng& rng);
/// Uniform random table with entries in [-bound, bound].
std::shared_ptr<RealTable> random_real_table(std::size_t domain_size, double bound, Rng& rng);
/// Uniform random ±1 table.
std::shared_ptr<TableHypothesis> random_binary_table(std::size_t domain_size, Rng& rng);

}  // namespace agboost
