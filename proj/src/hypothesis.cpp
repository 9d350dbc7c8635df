#include "agboost/hypothesis.hpp"

#include <stdexcept>

#include "agboost/kernels.hpp"

namespace agboost {

void Hypothesis::values(std::span<const double> rows, std::size_t dim, std::span<double> out) const {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = value(rows.subspan(i * dim, dim));
}

std::vector<double> predictions(const Hypothesis& h, const WeightedSet& data) {
    std::vector<double> out(data.size());
    h.values(data.features(), data.dim(), out);
    return out;
}

std::vector<double> predictions(const Hypothesis& h, const Dataset& data) {
    std::vector<double> out(data.size());
    h.values(data.features(), data.dim(), out);
    return out;
}

double weighted_correlation(const Hypothesis& h, const WeightedSet& data) {
    const double total = data.total_weight();
    if (!(total > 0.0)) throw std::invalid_argument("weighted set has no mass");
    const auto p = predictions(h, data);
    const auto wy = data.signed_weights();
    return kernels::dot(wy, p) / total;
}

double empirical_correlation(const Hypothesis& h, const Dataset& data) {
    if (data.empty()) throw std::invalid_argument("empty dataset");
    const auto p = predictions(h, data);
    double acc = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) acc += data.label(i) * p[i];
    return acc / static_cast<double>(data.size());
}

double accuracy(const Hypothesis& h, const Dataset& data) {
    if (data.empty()) throw std::invalid_argument("empty dataset");
    const auto p = predictions(h, data);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < data.size(); ++i) hits += sign_of(p[i]) == data.label(i);
    return static_cast<double>(hits) / static_cast<double>(data.size());
}

nlohmann::json ConstantHypothesis::to_json() const { return {{"type", "constant"}, {"value", c_}}; }

TableHypothesis::TableHypothesis(std::vector<int> table) : table_(std::move(table)) {
    if (table_.empty()) throw std::invalid_argument("empty hypothesis table");
    for (int v : table_)
        if (v != 1 && v != -1) throw std::invalid_argument("table entries must be ±1");
}

double TableHypothesis::value(std::span<const double> x) const {
    const auto idx = static_cast<std::size_t>(x[0]);
    if (x[0] < 0.0 || idx >= table_.size()) throw std::out_of_range("domain index outside table");
    return table_[idx];
}

nlohmann::json TableHypothesis::to_json() const { return {{"type", "table"}, {"table", table_}}; }

double LinearCombination::value(std::span<const double> x) const {
    double acc = 0.0;
    for (const auto& [a, h] : terms_) acc += a * h->value(x);
    return acc;
}

nlohmann::json LinearCombination::to_json() const {
    auto terms = nlohmann::json::array();
    for (const auto& [a, h] : terms_) terms.push_back({{"coefficient", a}, {"h", h->to_json()}});
    return {{"type", "linear"}, {"terms", terms}};
}

}  // namespace agboost
