#include "agboost/source.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "agboost/errors.hpp"

namespace agboost {

Dataset ExampleSource::draw_batch(std::size_t count, Rng& rng) {
    Dataset batch(dim());
    batch.reserve(count);
    for (std::size_t i = 0; i < count; ++i) batch.add(draw(rng));
    return batch;
}

DatasetPoolSource::DatasetPoolSource(const Dataset& data, std::uint64_t shuffle_seed) : data_(data) {
    order_.resize(data.size());
    std::iota(order_.begin(), order_.end(), 0);
    Rng rng(shuffle_seed);
    for (std::size_t i = order_.size(); i > 1; --i) std::swap(order_[i - 1], order_[uniform_index(rng, i)]);
}

LabeledExample DatasetPoolSource::draw(Rng&) {
    if (next_ >= order_.size()) throw SourceExhausted("dataset pool exhausted");
    return data_.example(order_[next_++]);
}

DatasetBootstrapSource::DatasetBootstrapSource(const Dataset& data) : data_(data) {
    if (data.empty()) throw std::invalid_argument("bootstrap source over empty dataset");
}

LabeledExample DatasetBootstrapSource::draw(Rng& rng) { return data_.example(uniform_index(rng, data_.size())); }

}  // namespace agboost
