#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "agboost/dataset.hpp"
#include "agboost/hypothesis.hpp"

namespace agboost {

/// One additive term of the real-valued ensemble.
///
/// ScaledWeak contributes step * scale * W(x); NegSign contributes
/// step * (-sign(H_prefix(x))) where H_prefix is the ensemble strictly before it.
struct EnsembleComponent {
    enum class Kind { ScaledWeak, NegSign };

    Kind kind = Kind::ScaledWeak;
    HypothesisPtr weak;
    double scale = 1.0;
    double step = 0.0;

    static EnsembleComponent scaled_weak(HypothesisPtr w, double scale, double step);
    static EnsembleComponent neg_sign(double step);
};

/// H_t as an ordered list of components. With k components appended the
/// ensemble represents H_{k+1}; the empty ensemble is H_1 = 0.
class Ensemble final : public Hypothesis {
public:
    void append(EnsembleComponent c);
    std::size_t size() const { return components_.size(); }
    const EnsembleComponent& component(std::size_t k) const { return components_[k]; }

    double value(std::span<const double> x) const override;
    void values(std::span<const double> rows, std::size_t dim, std::span<double> out) const override;

    /// H after the first k components.
    double value_prefix(std::span<const double> x, std::size_t k) const;
    /// Margins after 0, 1, ..., size() components.
    std::vector<double> prefix_values(std::span<const double> x) const;
    /// (H before the last component, unscaled-by-step value of the last component).
    std::pair<double, double> split_last(std::span<const double> x) const;

    /// Direction value of component k (without its step) given the margin before it.
    double direction(std::size_t k, std::span<const double> x, double prefix_margin) const;
    /// Batch form: out[i] = direction(k, row i, margins[i]).
    void directions(std::size_t k, std::span<const double> rows, std::size_t dim,
                    std::span<const double> margins, std::span<double> out) const;
    /// margins += step_k * direction_k; margins must hold the prefix before component k.
    void advance(std::size_t k, std::span<const double> rows, std::size_t dim,
                 std::span<double> margins) const;

    nlohmann::json to_json() const override;

private:
    std::vector<EnsembleComponent> components_;
};

/// sign(H_{k+1}) of a shared ensemble, i.e. the sign after the first k components.
class EnsembleSign final : public Hypothesis {
public:
    EnsembleSign(std::shared_ptr<const Ensemble> ensemble, std::size_t prefix);
    double value(std::span<const double> x) const override;
    std::size_t prefix() const { return prefix_; }
    nlohmann::json to_json() const override;

private:
    std::shared_ptr<const Ensemble> ensemble_;
    std::size_t prefix_;
};

/// Outcome of choosing among {sign(H_1), ..., sign(H_{K+1})} on a holdout.
struct PostSelection {
    std::size_t prefix = 0;                ///< number of components of the winner
    std::vector<double> holdout_corr;      ///< index k: corr of sign(after k components)
};

/// Argmax of holdout correlation over all prefixes; ties go to the shortest prefix.
PostSelection post_select(const Ensemble& ensemble, const Dataset& holdout);

}  // namespace agboost
