#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "agboost/dataset.hpp"
#include "json.hpp"

namespace agboost {

/// sign(v) with the convention sign(0) = +1.
inline int sign_of(double v) { return v >= 0.0 ? 1 : -1; }

/// A real-valued function over feature vectors. Binary classifiers return ±1.
class Hypothesis {
public:
    virtual ~Hypothesis() = default;

    virtual double value(std::span<const double> x) const = 0;

    /// Evaluate on `n` row-major rows of width `dim`.
    virtual void values(std::span<const double> rows, std::size_t dim, std::span<double> out) const;

    virtual nlohmann::json to_json() const = 0;
};

using HypothesisPtr = std::shared_ptr<const Hypothesis>;

/// Evaluate on every row of a weighted set / dataset.
std::vector<double> predictions(const Hypothesis& h, const WeightedSet& data);
std::vector<double> predictions(const Hypothesis& h, const Dataset& data);

/// sum w y h(x) / sum w
double weighted_correlation(const Hypothesis& h, const WeightedSet& data);
/// Unweighted empirical correlation (1/n) sum y h(x).
double empirical_correlation(const Hypothesis& h, const Dataset& data);
/// Fraction of rows with sign(h(x)) == y.
double accuracy(const Hypothesis& h, const Dataset& data);

class ConstantHypothesis final : public Hypothesis {
public:
    explicit ConstantHypothesis(double c) : c_(c) {}
    double value(std::span<const double>) const override { return c_; }
    nlohmann::json to_json() const override;

private:
    double c_;
};

/// Lookup table over a finite domain; the domain index is x[0].
class TableHypothesis final : public Hypothesis {
public:
    explicit TableHypothesis(std::vector<int> table);
    double value(std::span<const double> x) const override;
    const std::vector<int>& table() const { return table_; }
    nlohmann::json to_json() const override;

private:
    std::vector<int> table_;
};

/// Wraps an arbitrary callable; used for ad-hoc hypotheses in tests and oracles.
class FunctionHypothesis final : public Hypothesis {
public:
    using Fn = std::function<double(std::span<const double>)>;
    explicit FunctionHypothesis(Fn fn) : fn_(std::move(fn)) {}
    double value(std::span<const double> x) const override { return fn_(x); }
    nlohmann::json to_json() const override { return {{"type", "function"}}; }

private:
    Fn fn_;
};

/// Pointwise sum of scaled hypotheses: sum_k a_k h_k(x).
class LinearCombination final : public Hypothesis {
public:
    void add(double coefficient, HypothesisPtr h) { terms_.emplace_back(coefficient, std::move(h)); }
    double value(std::span<const double> x) const override;
    nlohmann::json to_json() const override;

private:
    std::vector<std::pair<double, HypothesisPtr>> terms_;
};

/// sign(H) for an arbitrary real-valued H.
class SignHypothesis final : public Hypothesis {
public:
    explicit SignHypothesis(HypothesisPtr inner) : inner_(std::move(inner)) {}
    double value(std::span<const double> x) const override { return sign_of(inner_->value(x)); }
    nlohmann::json to_json() const override { return {{"type", "sign"}, {"of", inner_->to_json()}}; }

private:
    HypothesisPtr inner_;
};

}  // namespace agboost
