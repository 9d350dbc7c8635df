#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace agboost {

/// One feature vector with a ±1 label.
struct LabeledExample {
    std::vector<double> x;
    int y = 1;
};

/// Row-major labeled dataset with uniform dimensionality.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }

    std::span<const double> row(std::size_t i) const {
        return {features_.data() + i * dim_, dim_};
    }
    int label(std::size_t i) const { return labels_[i]; }
    LabeledExample example(std::size_t i) const;

    void add(std::span<const double> x, int y);
    void add(const LabeledExample& e) { add(e.x, e.y); }
    void set_label(std::size_t i, int y);
    void reserve(std::size_t n);

    const std::vector<double>& features() const { return features_; }
    const std::vector<int>& labels() const { return labels_; }

    Dataset subset(std::span<const std::size_t> indices) const;

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> features_;
    std::vector<int> labels_;
};

/// Weighted training set handed to weak learners. Labels are stored as ±1.0.
/// `origin` optionally records which stored example a row was drawn from.
class WeightedSet {
public:
    static constexpr std::size_t kNoOrigin = std::numeric_limits<std::size_t>::max();

    WeightedSet() = default;
    explicit WeightedSet(std::size_t dim) : dim_(dim) {}

    /// Uniform unit weights over a dataset.
    static WeightedSet uniform(const Dataset& data);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }

    std::span<const double> row(std::size_t i) const {
        return {features_.data() + i * dim_, dim_};
    }
    double label(std::size_t i) const { return labels_[i]; }
    double weight(std::size_t i) const { return weights_[i]; }
    std::size_t origin(std::size_t i) const { return origins_[i]; }

    void add(std::span<const double> x, int y, double w, std::size_t origin = kNoOrigin);
    void reserve(std::size_t n);

    const std::vector<double>& features() const { return features_; }
    const std::vector<double>& labels() const { return labels_; }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<std::size_t>& origins() const { return origins_; }

    double total_weight() const;
    /// w[i] * y[i]
    std::vector<double> signed_weights() const;
    /// Column-major copy of the features.
    std::vector<double> columns() const;

private:
    std::size_t dim_ = 0;
    std::vector<double> features_;
    std::vector<double> labels_;
    std::vector<double> weights_;
    std::vector<std::size_t> origins_;
};

}  // namespace agboost
