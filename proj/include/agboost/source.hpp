#pragma once

#include <cstddef>
#include <vector>

#include "agboost/dataset.hpp"
#include "agboost/rng.hpp"

namespace agboost {

/// Sampling oracle for a population distribution over (x, y).
class ExampleSource {
public:
    virtual ~ExampleSource() = default;
    virtual LabeledExample draw(Rng& rng) = 0;
    virtual std::size_t dim() const = 0;

    Dataset draw_batch(std::size_t count, Rng& rng);
};

/// Draws a finite dataset without replacement in a seeded random order.
/// Throws SourceExhausted once every row has been handed out.
class DatasetPoolSource final : public ExampleSource {
public:
    DatasetPoolSource(const Dataset& data, std::uint64_t shuffle_seed);
    LabeledExample draw(Rng& rng) override;
    std::size_t dim() const override { return data_.dim(); }
    std::size_t remaining() const { return order_.size() - next_; }

private:
    const Dataset& data_;
    std::vector<std::size_t> order_;
    std::size_t next_ = 0;
};

/// Uniform draws with replacement from a finite dataset (the empirical distribution).
class DatasetBootstrapSource final : public ExampleSource {
public:
    explicit DatasetBootstrapSource(const Dataset& data);
    LabeledExample draw(Rng& rng) override;
    std::size_t dim() const override { return data_.dim(); }

private:
    const Dataset& data_;
};

}  // namespace agboost
