#include "agboost/ensemble.hpp"

#include <stdexcept>

#include "agboost/kernels.hpp"

namespace agboost {

EnsembleComponent EnsembleComponent::scaled_weak(HypothesisPtr w, double scale, double step) {
    if (!w) throw std::invalid_argument("null weak hypothesis");
    if (!(scale > 0.0)) throw std::invalid_argument("component scale must be positive");
    return {Kind::ScaledWeak, std::move(w), scale, step};
}

EnsembleComponent EnsembleComponent::neg_sign(double step) { return {Kind::NegSign, nullptr, 1.0, step}; }

void Ensemble::append(EnsembleComponent c) {
    if (c.kind == EnsembleComponent::Kind::ScaledWeak && !c.weak)
        throw std::invalid_argument("scaled component without hypothesis");
    components_.push_back(std::move(c));
}

double Ensemble::direction(std::size_t k, std::span<const double> x, double prefix_margin) const {
    const auto& c = components_[k];
    if (c.kind == EnsembleComponent::Kind::NegSign) return -static_cast<double>(sign_of(prefix_margin));
    return c.scale * c.weak->value(x);
}

double Ensemble::value_prefix(std::span<const double> x, std::size_t k) const {
    double h = 0.0;
    for (std::size_t i = 0; i < k; ++i) h += components_[i].step * direction(i, x, h);
    return h;
}

double Ensemble::value(std::span<const double> x) const { return value_prefix(x, components_.size()); }

std::vector<double> Ensemble::prefix_values(std::span<const double> x) const {
    std::vector<double> out(components_.size() + 1, 0.0);
    double h = 0.0;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        h += components_[i].step * direction(i, x, h);
        out[i + 1] = h;
    }
    return out;
}

std::pair<double, double> Ensemble::split_last(std::span<const double> x) const {
    if (components_.empty()) return {0.0, 0.0};
    const std::size_t last = components_.size() - 1;
    const double before = value_prefix(x, last);
    return {before, direction(last, x, before)};
}

void Ensemble::directions(std::size_t k, std::span<const double> rows, std::size_t dim,
                          std::span<const double> margins, std::span<double> out) const {
    const auto& c = components_[k];
    if (c.kind == EnsembleComponent::Kind::NegSign) {
        kernels::neg_sign(margins, out);
        return;
    }
    c.weak->values(rows, dim, out);
    if (c.scale != 1.0)
        for (double& v : out) v *= c.scale;
}

void Ensemble::advance(std::size_t k, std::span<const double> rows, std::size_t dim,
                       std::span<double> margins) const {
    std::vector<double> dir(margins.size());
    directions(k, rows, dim, margins, dir);
    kernels::axpy(components_[k].step, dir, margins);
}

void Ensemble::values(std::span<const double> rows, std::size_t dim, std::span<double> out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t k = 0; k < components_.size(); ++k) advance(k, rows, dim, out);
}

nlohmann::json Ensemble::to_json() const {
    auto comps = nlohmann::json::array();
    for (const auto& c : components_) {
        if (c.kind == EnsembleComponent::Kind::NegSign)
            comps.push_back({{"kind", "neg_sign"}, {"step", c.step}});
        else
            comps.push_back({{"kind", "scaled_weak"}, {"step", c.step}, {"scale", c.scale},
                             {"weak", c.weak->to_json()}});
    }
    return {{"type", "ensemble"}, {"components", comps}};
}

EnsembleSign::EnsembleSign(std::shared_ptr<const Ensemble> ensemble, std::size_t prefix)
    : ensemble_(std::move(ensemble)), prefix_(prefix) {
    if (!ensemble_ || prefix_ > ensemble_->size()) throw std::invalid_argument("bad ensemble prefix");
}

double EnsembleSign::value(std::span<const double> x) const {
    return sign_of(ensemble_->value_prefix(x, prefix_));
}

nlohmann::json EnsembleSign::to_json() const {
    auto full = ensemble_->to_json();
    auto& comps = full["components"];
    comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(prefix_), comps.end());
    return {{"type", "sign"}, {"of", full}};
}

PostSelection post_select(const Ensemble& ensemble, const Dataset& holdout) {
    if (holdout.empty()) throw std::invalid_argument("post-selection needs a nonempty holdout");
    const std::size_t n = holdout.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = holdout.label(i);
    std::vector<double> margins(n, 0.0);

    PostSelection sel;
    sel.holdout_corr.reserve(ensemble.size() + 1);
    const double inv_n = 1.0 / static_cast<double>(n);
    sel.holdout_corr.push_back(kernels::sign_dot(y, margins) * inv_n);
    for (std::size_t k = 0; k < ensemble.size(); ++k) {
        ensemble.advance(k, holdout.features(), holdout.dim(), margins);
        sel.holdout_corr.push_back(kernels::sign_dot(y, margins) * inv_n);
    }
    for (std::size_t k = 1; k < sel.holdout_corr.size(); ++k)
        if (sel.holdout_corr[k] > sel.holdout_corr[sel.prefix]) sel.prefix = k;
    return sel;
}

}  // namespace agboost
