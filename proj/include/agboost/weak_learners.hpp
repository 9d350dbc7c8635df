#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "agboost/dataset.hpp"
#include "agboost/hypothesis.hpp"

namespace agboost {

/// Weak learning oracle: maps a weighted sample to a base hypothesis.
/// Implementations must be deterministic functions of their input.
class WeakLearner {
public:
    virtual ~WeakLearner() = default;
    virtual HypothesisPtr fit(const WeightedSet& data) const = 0;
    virtual std::string name() const = 0;
};

/// polarity * sign(x[feature] - threshold), sign(0) = +1. Thresholds may be ±inf.
class Stump final : public Hypothesis {
public:
    Stump(std::size_t feature, double threshold, int polarity);
    std::size_t feature() const { return feature_; }
    double threshold() const { return threshold_; }
    int polarity() const { return polarity_; }

    double value(std::span<const double> x) const override;
    void values(std::span<const double> rows, std::size_t dim, std::span<double> out) const override;
    nlohmann::json to_json() const override;

private:
    std::size_t feature_;
    double threshold_;
    int polarity_;
};

struct StumpFit {
    Stump stump;
    double correlation;
};

/// Exact weighted-correlation maximizer over all stumps whose thresholds are
/// -inf, midpoints of consecutive distinct feature values, or +inf.
/// Ties resolve to the smallest (feature, threshold, polarity).
StumpFit fit_stump(const WeightedSet& data);

/// sign * prod_{i in subset} x_i on {±1}^n; the empty subset is a constant.
class Parity final : public Hypothesis {
public:
    Parity(std::vector<std::size_t> subset, int sign);
    const std::vector<std::size_t>& subset() const { return subset_; }
    int sign() const { return sign_; }

    double value(std::span<const double> x) const override;
    nlohmann::json to_json() const override;

private:
    std::vector<std::size_t> subset_;
    int sign_;
};

struct ParityFit {
    Parity parity;
    double correlation;
    std::size_t subsets_evaluated;  ///< sum_{k <= d} C(n, k)
};

/// ERM over ±chi_S with |S| <= max_degree. Ties resolve to the
/// lexicographically smallest subset, then sign +1.
ParityFit fit_parity(const WeightedSet& data, std::size_t max_degree);

/// Number of subsets of size <= d from n features.
std::size_t parity_subset_count(std::size_t n, std::size_t d);

/// Explicit finite hypothesis class.
class FiniteClass {
public:
    FiniteClass() = default;
    explicit FiniteClass(std::vector<HypothesisPtr> hypotheses);
    std::size_t size() const { return hypotheses_.size(); }
    const HypothesisPtr& operator[](std::size_t i) const { return hypotheses_[i]; }
    const std::vector<HypothesisPtr>& hypotheses() const { return hypotheses_; }

private:
    std::vector<HypothesisPtr> hypotheses_;
};

struct ErmFit {
    std::size_t index;
    double correlation;
};

/// Argmax of weighted correlation over the class; ties to the lowest index.
ErmFit fit_erm(const WeightedSet& data, const FiniteClass& cls);

class StumpLearner final : public WeakLearner {
public:
    HypothesisPtr fit(const WeightedSet& data) const override;
    std::string name() const override { return "stump"; }
};

class ParityLearner final : public WeakLearner {
public:
    explicit ParityLearner(std::size_t max_degree) : degree_(max_degree) {}
    HypothesisPtr fit(const WeightedSet& data) const override;
    std::string name() const override { return "parity-d" + std::to_string(degree_); }

private:
    std::size_t degree_;
};

class ErmLearner final : public WeakLearner {
public:
    explicit ErmLearner(FiniteClass cls);
    HypothesisPtr fit(const WeightedSet& data) const override;
    std::string name() const override { return "erm"; }
    const FiniteClass& hypothesis_class() const { return cls_; }

private:
    FiniteClass cls_;
};

}  // namespace agboost
