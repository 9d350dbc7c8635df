#pragma once

#include <cstddef>
#include <vector>

#include "agboost/dataset.hpp"
#include "agboost/source.hpp"

namespace agboost {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double v);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct Atom {
    std::vector<double> x;
    int y = 1;
    double prob = 0.0;
};

/// Distribution over finitely many distinct (x, y) atoms.
/// Probabilities are non-negative and sum to 1 within 1e-12.
class FiniteDistribution {
public:
    FiniteDistribution() = default;
    explicit FiniteDistribution(std::vector<Atom> atoms);

    std::size_t size() const { return atoms_.size(); }
    std::size_t dim() const { return atoms_.empty() ? 0 : atoms_.front().x.size(); }
    const Atom& operator[](std::size_t i) const { return atoms_[i]; }
    const std::vector<Atom>& atoms() const { return atoms_; }

private:
    std::vector<Atom> atoms_;
};

/// IID sampling from a finite distribution.
class FiniteDistributionSource final : public ExampleSource {
public:
    explicit FiniteDistributionSource(const FiniteDistribution& dist);
    LabeledExample draw(Rng& rng) override;
    std::size_t dim() const override { return dist_.dim(); }
    /// Index of the next atom without materializing it.
    std::size_t draw_index(Rng& rng) const;

private:
    const FiniteDistribution& dist_;
    std::vector<double> cumulative_;
};

}  // namespace agboost
