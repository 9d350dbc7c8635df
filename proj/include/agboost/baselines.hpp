#pragma once

// Comparator boosters. Both relabel fractionally with the MadaBoost weight
// w = min(1, exp(-y H_t(x))), emitting (x, y) and (x, -y) with weights
// (1 + w)/2 and (1 - w)/2.
//
//  * boost_kk09: fresh m examples for the learner and fresh s examples for
//    the branch decision in every round; T (m + s) + S0 draws in total.
//  * boost_bhs20: one dataset of N examples drawn up front; N - S0 of them
//    are relabeled every round, the last S0 post-select.

#include <cstddef>

#include "agboost/booster.hpp"

namespace agboost {

struct BaselineConfig {
    double gamma = 1.0;
    std::size_t rounds = 1;         ///< T
    double step = 0.1;              ///< eta (base step in adaptive mode)
    StepMode step_mode = StepMode::Fixed;
    std::size_t weak_batch = 1;     ///< m (kk09)
    std::size_t branch_batch = 1;   ///< s (kk09)
    std::size_t final_holdout = 1;  ///< S0 (both; part of N for bhs20)
    std::size_t pool_size = 2;      ///< N (bhs20)

    void validate_kk09() const;
    void validate_bhs20() const;
};

/// MadaBoost-relabeled weighted copy of `data` against margins H(x).
WeightedSet madaboost_relabel(const Dataset& data, std::span<const double> margins);

BoostResult boost_kk09(ExampleSource& source, const WeakLearner& learner, const BaselineConfig& cfg, Rng& rng);
BoostResult boost_bhs20(ExampleSource& source, const WeakLearner& learner, const BaselineConfig& cfg, Rng& rng);

}  // namespace agboost
