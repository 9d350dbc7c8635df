#include "agboost/finite.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace agboost {

void CompensatedSum::add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
        comp_ += (sum_ - t) + v;
    else
        comp_ += (v - t) + sum_;
    sum_ = t;
}

FiniteDistribution::FiniteDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw std::invalid_argument("finite distribution needs atoms");
    const std::size_t d = atoms_.front().x.size();
    CompensatedSum total;
    std::set<std::pair<std::vector<double>, int>> seen;
    for (const auto& a : atoms_) {
        if (a.x.size() != d) throw std::invalid_argument("atoms differ in dimension");
        if (a.y != 1 && a.y != -1) throw std::invalid_argument("atom labels must be ±1");
        if (!(a.prob >= 0.0)) throw std::invalid_argument("atom probabilities must be non-negative");
        if (!seen.emplace(a.x, a.y).second) throw std::invalid_argument("atoms must be distinct");
        total.add(a.prob);
    }
    if (std::abs(total.value() - 1.0) > 1e-12) throw std::invalid_argument("atom probabilities must sum to 1");
}

FiniteDistributionSource::FiniteDistributionSource(const FiniteDistribution& dist) : dist_(dist) {
    if (dist.size() == 0) throw std::invalid_argument("empty distribution");
    cumulative_.reserve(dist.size());
    double acc = 0.0;
    for (const auto& a : dist.atoms()) cumulative_.push_back(acc += a.prob);
}

std::size_t FiniteDistributionSource::draw_index(Rng& rng) const {
    const double u = uniform01(rng) * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    std::size_t i = static_cast<std::size_t>(it - cumulative_.begin());
    if (i >= cumulative_.size()) i = cumulative_.size() - 1;
    while (dist_[i].prob == 0.0 && i + 1 < cumulative_.size()) ++i;
    return i;
}

LabeledExample FiniteDistributionSource::draw(Rng& rng) {
    const Atom& a = dist_[draw_index(rng)];
    return {a.x, a.y};
}

}  // namespace agboost
