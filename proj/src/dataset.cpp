#include "agboost/dataset.hpp"

#include <stdexcept>

namespace agboost {
namespace {

void require_label(int y) {
    if (y != 1 && y != -1) throw std::invalid_argument("labels must be +1 or -1");
}

}  // namespace

LabeledExample Dataset::example(std::size_t i) const {
    auto r = row(i);
    return {std::vector<double>(r.begin(), r.end()), labels_[i]};
}

void Dataset::add(std::span<const double> x, int y) {
    if (x.size() != dim_) throw std::invalid_argument("example dimension mismatch");
    require_label(y);
    features_.insert(features_.end(), x.begin(), x.end());
    labels_.push_back(y);
}

void Dataset::set_label(std::size_t i, int y) {
    require_label(y);
    labels_.at(i) = y;
}

void Dataset::reserve(std::size_t n) {
    features_.reserve(n * dim_);
    labels_.reserve(n);
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
    Dataset out(dim_);
    out.reserve(indices.size());
    for (std::size_t i : indices) out.add(row(i), label(i));
    return out;
}

WeightedSet WeightedSet::uniform(const Dataset& data) {
    WeightedSet s(data.dim());
    s.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) s.add(data.row(i), data.label(i), 1.0);
    return s;
}

void WeightedSet::add(std::span<const double> x, int y, double w, std::size_t origin) {
    if (x.size() != dim_) throw std::invalid_argument("example dimension mismatch");
    require_label(y);
    if (!(w >= 0.0)) throw std::invalid_argument("weights must be non-negative");
    features_.insert(features_.end(), x.begin(), x.end());
    labels_.push_back(static_cast<double>(y));
    weights_.push_back(w);
    origins_.push_back(origin);
}

void WeightedSet::reserve(std::size_t n) {
    features_.reserve(n * dim_);
    labels_.reserve(n);
    weights_.reserve(n);
    origins_.reserve(n);
}

double WeightedSet::total_weight() const {
    double t = 0.0;
    for (double w : weights_) t += w;
    return t;
}

std::vector<double> WeightedSet::signed_weights() const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = weights_[i] * labels_[i];
    return out;
}

std::vector<double> WeightedSet::columns() const {
    const std::size_t n = size();
    std::vector<double> cols(n * dim_);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < dim_; ++j) cols[j * n + i] = features_[i * dim_ + j];
    return cols;
}

}  // namespace agboost
