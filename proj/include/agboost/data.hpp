#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "agboost/dataset.hpp"
#include "agboost/finite.hpp"
#include "agboost/source.hpp"
#include "agboost/weak_learners.hpp"

namespace agboost {

/// CSV layout: comma separated, LF or CRLF, optional header row.
struct CsvOptions {
    bool has_header = false;
    /// Column holding the label; nullopt means the last column.
    std::optional<std::size_t> label_column;
    /// (negative, positive) label strings. When absent the file must contain
    /// exactly two distinct labels; the lexicographically smaller maps to -1.
    std::optional<std::pair<std::string, std::string>> label_encoding;
};

Dataset parse_csv(std::istream& in, const CsvOptions& opts = {});
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& opts = {});
/// Features in shortest round-trip form, label last as 1 / -1.
void write_csv(const Dataset& data, std::ostream& out);

struct NoisePlan {
    double rate = 0.0;  ///< in [0, 0.5]
    std::uint64_t seed = 0;
};

/// Flips each label independently with probability plan.rate.
Dataset inject_noise(const Dataset& data, const NoisePlan& plan);

struct FoldPlan {
    std::size_t k = 0;
    std::uint64_t seed = 0;
    std::vector<std::size_t> assignment;  ///< example index -> fold

    std::vector<std::size_t> test_indices(std::size_t fold) const;
    std::vector<std::size_t> train_indices(std::size_t fold) const;
};

/// Seeded exact partition into k folds whose sizes differ by at most one.
FoldPlan kfold(std::size_t n, std::size_t k, std::uint64_t seed);

/// Uniform hypercube {±1}^n with label sign(w.x - theta) flipped with
/// probability corrupt_rate. Enumerates all 2^n points (n <= 24).
FiniteDistribution gen_halfspace(std::size_t n, std::span<const double> w, double theta, double corrupt_rate);

/// IID sampler for the same distribution without enumeration (any n).
class HalfspaceSource final : public ExampleSource {
public:
    HalfspaceSource(std::vector<double> w, double theta, double corrupt_rate);
    LabeledExample draw(Rng& rng) override;
    std::size_t dim() const override { return w_.size(); }

private:
    std::vector<double> w_;
    double theta_;
    double corrupt_;
};

struct PlantedInstance {
    FiniteDistribution dist;  ///< uniform over domain indices, 1-D feature x = index
    FiniteClass cls;
    std::size_t best_index = 0;  ///< position of h* in cls
    HypothesisPtr h_star;
    std::uint64_t seed_used = 0;  ///< seed of the accepted draw
};

/// Random class of ±1 tables over {0..domain_size-1}; labels are h*(x)
/// flipped with probability (1 - best_corr)/2 so that corr(h*) = best_corr.
/// The draw is rejected and repeated (next derived seed) if another member
/// would match or beat h*.
PlantedInstance gen_planted(std::size_t domain_size, std::size_t class_size, double best_corr, std::uint64_t seed);

}  // namespace agboost
