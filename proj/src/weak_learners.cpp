#include "agboost/weak_learners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "agboost/kernels.hpp"

namespace agboost {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Candidate must beat the incumbent by more than rounding noise.
bool improves(double candidate, double incumbent) {
    if (std::isinf(incumbent)) return candidate > incumbent;
    return candidate > incumbent + 1e-12 * std::max(1.0, std::abs(incumbent));
}

double require_mass(const WeightedSet& data) {
    if (data.empty()) throw std::invalid_argument("weak learner given no data");
    const double total = data.total_weight();
    if (!(total > 0.0)) throw std::invalid_argument("weak learner given zero total weight");
    return total;
}

nlohmann::json threshold_json(double t) {
    if (t == kInf) return "inf";
    if (t == -kInf) return "-inf";
    return t;
}

}  // namespace

Stump::Stump(std::size_t feature, double threshold, int polarity)
    : feature_(feature), threshold_(threshold), polarity_(polarity) {
    if (polarity != 1 && polarity != -1) throw std::invalid_argument("stump polarity must be ±1");
    if (std::isnan(threshold)) throw std::invalid_argument("stump threshold is NaN");
}

double Stump::value(std::span<const double> x) const {
    return polarity_ * sign_of(x[feature_] - threshold_);
}

void Stump::values(std::span<const double> rows, std::size_t dim, std::span<double> out) const {
    const double pos = polarity_;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = rows[i * dim + feature_] - threshold_ >= 0.0 ? pos : -pos;
}

nlohmann::json Stump::to_json() const {
    return {{"type", "stump"}, {"feature", feature_}, {"threshold", threshold_json(threshold_)},
            {"polarity", polarity_}};
}

StumpFit fit_stump(const WeightedSet& data) {
    const double total_weight = require_mass(data);
    const std::size_t n = data.size();
    const std::size_t dim = data.dim();
    if (dim == 0) throw std::invalid_argument("stumps need at least one feature");
    const auto wy = data.signed_weights();
    const double total = std::accumulate(wy.begin(), wy.end(), 0.0);

    std::size_t best_feature = 0;
    double best_threshold = -kInf;
    int best_polarity = 1;
    double best = -kInf;
    auto consider = [&](std::size_t f, double thr, double corr_plus) {
        // polarity -1 precedes +1 at equal (feature, threshold)
        if (improves(-corr_plus, best)) {
            best = -corr_plus;
            best_feature = f, best_threshold = thr, best_polarity = -1;
        }
        if (improves(corr_plus, best)) {
            best = corr_plus;
            best_feature = f, best_threshold = thr, best_polarity = 1;
        }
    };

    const auto cols = data.columns();
    std::vector<std::size_t> order(n);
    for (std::size_t f = 0; f < dim; ++f) {
        const double* col = cols.data() + f * n;
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [col](std::size_t a, std::size_t b) { return col[a] < col[b]; });

        consider(f, -kInf, total / total_weight);
        double left = 0.0;  // sum of wy strictly below the threshold
        for (std::size_t k = 0; k < n; ++k) {
            left += wy[order[k]];
            if (k + 1 < n && col[order[k + 1]] == col[order[k]]) continue;
            if (k + 1 == n) break;
            const double lo = col[order[k]];
            const double hi = col[order[k + 1]];
            double thr = lo + (hi - lo) / 2.0;
            if (!(thr > lo)) thr = hi;
            consider(f, thr, (total - 2.0 * left) / total_weight);
        }
        consider(f, kInf, -total / total_weight);
    }
    return {Stump(best_feature, best_threshold, best_polarity), best};
}

Parity::Parity(std::vector<std::size_t> subset, int sign) : subset_(std::move(subset)), sign_(sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("parity sign must be ±1");
    if (!std::is_sorted(subset_.begin(), subset_.end()) ||
        std::adjacent_find(subset_.begin(), subset_.end()) != subset_.end())
        throw std::invalid_argument("parity subset must be strictly increasing");
}

double Parity::value(std::span<const double> x) const {
    double p = sign_;
    for (std::size_t i : subset_) p *= x[i];
    return p;
}

nlohmann::json Parity::to_json() const { return {{"type", "parity"}, {"subset", subset_}, {"sign", sign_}}; }

std::size_t parity_subset_count(std::size_t n, std::size_t d) {
    std::size_t total = 0;
    std::size_t binom = 1;  // C(n, k)
    for (std::size_t k = 0; k <= std::min(n, d); ++k) {
        total += binom;
        binom = binom * (n - k) / (k + 1);
    }
    return total;
}

ParityFit fit_parity(const WeightedSet& data, std::size_t max_degree) {
    const double total_weight = require_mass(data);
    const std::size_t n = data.size();
    const std::size_t dim = data.dim();
    if (max_degree > dim) throw std::invalid_argument("parity degree exceeds feature count");
    for (double v : data.features())
        if (v != 1.0 && v != -1.0) throw std::invalid_argument("parity learner needs ±1 features");

    const auto wy = data.signed_weights();
    const auto cols = data.columns();

    // products[k] holds chi_S on every row for the current depth-k prefix
    std::vector<std::vector<double>> products(max_degree + 1, std::vector<double>(n, 1.0));
    std::vector<std::size_t> current;
    std::vector<std::size_t> best_subset;
    int best_sign = 1;
    double best = -kInf;
    std::size_t evaluated = 0;

    auto visit = [&](auto&& self, std::size_t start) -> void {
        const double c = kernels::dot(wy, products[current.size()]) / total_weight;
        ++evaluated;
        if (improves(c, best)) best = c, best_subset = current, best_sign = 1;
        if (improves(-c, best)) best = -c, best_subset = current, best_sign = -1;
        if (current.size() == max_degree) return;
        for (std::size_t j = start; j < dim; ++j) {
            const std::size_t depth = current.size();
            kernels::mul(products[depth], std::span<const double>(cols.data() + j * n, n), products[depth + 1]);
            current.push_back(j);
            self(self, j + 1);
            current.pop_back();
        }
    };
    visit(visit, 0);
    return {Parity(best_subset, best_sign), best, evaluated};
}

FiniteClass::FiniteClass(std::vector<HypothesisPtr> hypotheses) : hypotheses_(std::move(hypotheses)) {
    if (hypotheses_.empty()) throw std::invalid_argument("finite class must be nonempty");
    for (const auto& h : hypotheses_)
        if (!h) throw std::invalid_argument("null hypothesis in class");
}

ErmFit fit_erm(const WeightedSet& data, const FiniteClass& cls) {
    if (cls.size() == 0) throw std::invalid_argument("ERM over an empty class");
    const double total_weight = require_mass(data);
    const auto wy = data.signed_weights();
    std::vector<double> preds(data.size());
    ErmFit best{0, -kInf};
    for (std::size_t k = 0; k < cls.size(); ++k) {
        cls[k]->values(data.features(), data.dim(), preds);
        const double c = kernels::dot(wy, preds) / total_weight;
        if (improves(c, best.correlation)) best = {k, c};
    }
    return best;
}

HypothesisPtr StumpLearner::fit(const WeightedSet& data) const {
    return std::make_shared<Stump>(fit_stump(data).stump);
}

HypothesisPtr ParityLearner::fit(const WeightedSet& data) const {
    return std::make_shared<Parity>(fit_parity(data, degree_).parity);
}

ErmLearner::ErmLearner(FiniteClass cls) : cls_(std::move(cls)) {
    if (cls_.size() == 0) throw std::invalid_argument("ERM over an empty class");
}

HypothesisPtr ErmLearner::fit(const WeightedSet& data) const { return cls_[fit_erm(data, cls_).index]; }

}  // namespace agboost
