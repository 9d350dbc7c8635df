#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "agboost/baselines.hpp"
#include "agboost/booster.hpp"
#include "agboost/data.hpp"
#include "agboost/rl_sim.hpp"
#include "agboost/weak_learners.hpp"

namespace agboost {

enum class Algo { Ours, Kk09, Bhs20 };
std::string to_string(Algo a);
Algo parse_algo(const std::string& s);

/// Knobs shared by every grid cell of a dataset benchmark.
struct BenchParams {
    RelabelMode relabel = RelabelMode::Fractional;
    StepMode step_mode = StepMode::AdaptiveCorrelation;
    BranchMode branch_mode = BranchMode::EmpiricalBest;
    double base_step = 1.0;
    double holdout_fraction = 0.1;  ///< share of the training split used for post-selection
    double kk09_branch_share = 1.0 / 3.0;
};

struct TrainOutcome {
    BoostResult result;
    std::size_t samples = 0;
};

/// Trains `algo` with T rounds (and mixing weight sigma for ours) on a fixed
/// training set. Per-round fresh batches are carved out of the set without
/// replacement; if the set is too small for the schedule, draws fall back to
/// sampling it with replacement.
TrainOutcome train_on_dataset(Algo algo, const Dataset& train, std::size_t rounds, double sigma,
                              const BenchParams& params, std::uint64_t seed);

struct CellResult {
    std::string dataset;
    double noise = 0.0;
    Algo algo = Algo::Ours;
    std::size_t best_rounds = 0;
    double best_sigma = 0.0;
    double mean_accuracy = 0.0;
    double stderr_accuracy = 0.0;
    double mean_samples = 0.0;
};

struct BenchGrid {
    std::vector<std::size_t> rounds{25, 50, 100};
    std::vector<double> sigmas{0.1, 0.25, 0.5};
    std::size_t folds = 30;
};

/// k-fold CV accuracy for every grid point; the best mean wins, ties to
/// smaller T then smaller sigma. Noise touches training folds only.
CellResult run_cell(const std::string& name, const Dataset& data, double noise, Algo algo, const BenchGrid& grid,
                    const BenchParams& params, std::uint64_t seed);

std::string cell_csv_header();
std::string cell_csv_row(const CellResult& c);
std::string cell_markdown_header();
std::string cell_markdown_row(const CellResult& c);

/// Majority-style halfspace study on the enumerated hypercube.
struct HalfspaceParams {
    std::size_t n = 7;
    std::size_t degree = 1;
    double epsilon = 0.1;
    double corrupt_rate = 0.1;
    std::vector<double> weights;  ///< empty means all ones (majority)
    double theta = 0.0;
    ScheduleConstants constants;
    double gamma = 0.25;
    std::uint64_t seed = 1;
};

struct HalfspaceOutcome {
    double boosted_accuracy = 0.0;
    double best_parity_accuracy = 0.0;
    double target_accuracy = 0.0;  ///< accuracy of sign(w.x - theta) itself
    std::size_t samples = 0;
    std::size_t rounds = 0;
};

HalfspaceOutcome run_halfspace(const HalfspaceParams& p);

/// Booster and kk09 presets for the planted instance, shared by tests,
/// the acceptance binary and the CLI. Constants are fixed.
BoostConfig planted_config(double epsilon);
BaselineConfig planted_kk09_config(double epsilon);

struct PlantedRun {
    double population_corr = 0.0;
    std::size_t samples = 0;
};

PlantedRun run_planted_ours(const PlantedInstance& inst, const BoostConfig& cfg, std::uint64_t seed);
PlantedRun run_planted_kk09(const PlantedInstance& inst, const BaselineConfig& cfg, std::uint64_t seed);

/// Outer-loop and inner booster settings used for policy boosting runs.
PolicyBoostConfig rl_config(std::size_t rounds, std::size_t rollouts, AccessMode access);

/// FNV-1a over a canonical config string.
std::uint64_t config_hash(const std::string& canonical);

}  // namespace agboost
