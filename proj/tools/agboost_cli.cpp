// agboost command-line front end.
//
// Exit codes: 0 success, 1 usage, 2 verification failure, 3 data error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "agboost/data.hpp"
#include "agboost/errors.hpp"
#include "agboost/experiments.hpp"
#include "agboost/rl_sim.hpp"
#include "agboost/verify.hpp"

using namespace agboost;

namespace {

constexpr int kUsage = 1;
constexpr int kVerifyFailed = 2;
constexpr int kDataError = 3;

struct Common {
    std::uint64_t seed = 1;
    std::string out;
    bool markdown = false;
};

/// Writes to --out when given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw DataError("cannot write " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

void log_run(const std::string& command, std::uint64_t seed, const std::string& canonical) {
    std::cerr << "[agboost] command=" << command << " seed=" << seed << " config_hash=" << std::hex << std::setw(16)
              << std::setfill('0') << config_hash(canonical) << std::dec << std::setfill(' ') << '\n';
}

std::string fmt(double v, int digits = 6) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

template <class T>
std::string join(const std::vector<T>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ";" : "") << v[i];
    return os.str();
}

/// Table printer for CSV or markdown output.
void emit_table(std::ostream& os, const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows,
                bool markdown) {
    auto line = [&](const std::vector<std::string>& cells) {
        if (markdown) {
            os << '|';
            for (const auto& c : cells) os << ' ' << c << " |";
        } else {
            for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
        }
        os << '\n';
    };
    line(header);
    if (markdown) {
        os << '|';
        for (std::size_t i = 0; i < header.size(); ++i) os << "---|";
        os << '\n';
    }
    for (const auto& r : rows) line(r);
}

struct BoostFlags {
    std::string relabel = "fractional";
    std::string branch = "empirical-best";
    std::string step = "adaptive";
    double base_step = 1.0;
};

BenchParams bench_params(const BoostFlags& f) {
    BenchParams p;
    p.relabel = f.relabel == "stochastic" ? RelabelMode::Stochastic : RelabelMode::Fractional;
    p.branch_mode = f.branch == "threshold" ? BranchMode::Threshold : BranchMode::EmpiricalBest;
    p.step_mode = f.step == "fixed" ? StepMode::Fixed : StepMode::AdaptiveCorrelation;
    p.base_step = f.base_step;
    return p;
}

void add_boost_flags(CLI::App* app, BoostFlags& f) {
    app->add_option("--relabel", f.relabel, "Relabeling scheme")->check(CLI::IsMember({"stochastic", "fractional"}));
    app->add_option("--branch", f.branch, "Branch rule")->check(CLI::IsMember({"threshold", "empirical-best"}));
    app->add_option("--step", f.step, "Step-size rule")->check(CLI::IsMember({"fixed", "adaptive"}));
    app->add_option("--base-step", f.base_step, "Step (fixed) or step multiplier (adaptive)")->check(CLI::PositiveNumber);
}

std::string canonical(const BoostFlags& f) {
    return "relabel=" + f.relabel + ";branch=" + f.branch + ";step=" + f.step + ";base_step=" + fmt(f.base_step);
}

struct CsvFlags {
    bool header = false;
    int label_column = -1;
    std::vector<std::string> encoding;
};

void add_csv_flags(CLI::App* app, CsvFlags& f) {
    app->add_flag("--header", f.header, "CSV files have a header row");
    app->add_option("--label-column", f.label_column, "Zero-based label column (default: last)");
    app->add_option("--label-encoding", f.encoding, "Negative and positive label strings")->expected(2);
}

CsvOptions csv_options(const CsvFlags& f) {
    CsvOptions o;
    o.has_header = f.header;
    if (f.label_column >= 0) o.label_column = static_cast<std::size_t>(f.label_column);
    if (f.encoding.size() == 2) o.label_encoding = std::make_pair(f.encoding[0], f.encoding[1]);
    return o;
}

int run_bench(const Common& c, const std::vector<std::string>& datasets, const std::vector<std::string>& algos,
              const std::vector<double>& noise, const BenchGrid& grid, const BoostFlags& bf, const CsvFlags& cf) {
    std::ostringstream canon;
    canon << "bench;datasets=" << join(datasets) << ";algos=" << join(algos) << ";noise=" << join(noise)
          << ";folds=" << grid.folds << ";grid_t=" << join(grid.rounds) << ";grid_sigma=" << join(grid.sigmas) << ';'
          << canonical(bf);
    log_run("bench", c.seed, canon.str());

    std::vector<std::vector<std::string>> rows;
    std::size_t loaded = 0;
    std::uint64_t dataset_index = 0;
    for (const auto& path : datasets) {
        ++dataset_index;
        Dataset data;
        try {
            data = load_csv(path, csv_options(cf));
        } catch (const DataError& e) {
            std::cerr << "[agboost] warning: skipping dataset: " << e.what() << '\n';
            continue;
        }
        ++loaded;
        const std::string name = std::filesystem::path(path).stem().string();
        for (double rate : noise)
            for (const auto& a : algos) {
                const Algo algo = parse_algo(a);
                const std::uint64_t cell_seed = derive_seed(c.seed, dataset_index);
                const CellResult r = run_cell(name, data, rate, algo, grid, bench_params(bf), cell_seed);
                std::cerr << "[agboost] " << name << " noise=" << fmt(rate, 2) << " algo=" << a
                          << " samples_per_fit=" << fmt(r.mean_samples, 1) << '\n';
                rows.push_back({r.dataset, fmt(r.noise, 2), to_string(r.algo), std::to_string(r.best_rounds),
                                fmt(r.best_sigma, 2), fmt(r.mean_accuracy, 4), fmt(r.stderr_accuracy, 4),
                                fmt(r.mean_samples, 1)});
            }
    }
    if (loaded == 0) {
        std::cerr << "[agboost] error: no dataset could be loaded\n";
        return kDataError;
    }
    Sink sink(c.out);
    emit_table(sink.os(), {"dataset", "noise", "algo", "best_T", "best_sigma", "accuracy", "stderr", "mean_samples"},
               rows, c.markdown);
    return 0;
}

int run_boost(const Common& c, const std::string& dataset, const std::string& algo_name, std::size_t rounds,
              double sigma, double noise, const std::string& model_path, const BoostFlags& bf, const CsvFlags& cf) {
    std::ostringstream canon;
    canon << "boost;dataset=" << dataset << ";algo=" << algo_name << ";rounds=" << rounds << ";sigma=" << fmt(sigma)
          << ";noise=" << fmt(noise) << ';' << canonical(bf);
    log_run("boost", c.seed, canon.str());

    const Dataset data = load_csv(dataset, csv_options(cf));
    const Algo algo = parse_algo(algo_name);
    const Dataset train = inject_noise(data, {noise, derive_seed(c.seed, 7)});
    const TrainOutcome o = train_on_dataset(algo, train, rounds, sigma, bench_params(bf), c.seed);
    std::cerr << "[agboost] samples_drawn=" << o.samples << '\n';

    if (!model_path.empty()) {
        std::ofstream m(model_path, std::ios::binary);
        if (!m) throw DataError("cannot write " + model_path);
        m << o.result.final_hypothesis->to_json().dump(2) << '\n';
    }
    std::size_t weak = 0;
    for (const auto& r : o.result.rounds) weak += r.branch == EnsembleComponent::Kind::ScaledWeak;
    Sink sink(c.out);
    emit_table(sink.os(),
               {"algo", "rounds", "sigma", "noise", "train_accuracy", "selected_prefix", "weak_rounds", "samples_drawn"},
               {{algo_name, std::to_string(rounds), fmt(sigma, 4), fmt(noise, 4),
                 fmt(accuracy(*o.result.final_hypothesis, data), 6), std::to_string(o.result.selected_prefix),
                 std::to_string(weak), std::to_string(o.samples)}},
               c.markdown);
    return 0;
}

int run_verify(const Common& c, const std::string& level) {
    log_run("verify", c.seed, "verify;level=" + level);
    const auto reports = run_verification(level == "full" ? VerifyLevel::Full : VerifyLevel::Fast, c.seed);
    std::vector<std::vector<std::string>> rows;
    bool ok = true;
    for (const auto& r : reports) {
        ok = ok && r.passed;
        rows.push_back({r.name, r.passed ? "pass" : "FAIL", "\"" + r.detail + "\""});
        std::cerr << "[agboost] " << r.name << " " << fmt(r.seconds, 3) << "s\n";
    }
    Sink sink(c.out);
    emit_table(sink.os(), {"group", "status", "detail"}, rows, c.markdown);
    std::cerr << "[agboost] " << reports.size() << " groups, " << (ok ? "all passed" : "FAILURES") << '\n';
    return ok ? 0 : kVerifyFailed;
}

int run_halfspace_cmd(const Common& c, HalfspaceParams p) {
    p.seed = c.seed;
    std::ostringstream canon;
    canon << "halfspace;n=" << p.n << ";d=" << p.degree << ";eps=" << fmt(p.epsilon) << ";rho=" << fmt(p.corrupt_rate)
          << ";gamma=" << fmt(p.gamma);
    log_run("halfspace", c.seed, canon.str());
    const HalfspaceOutcome o = run_halfspace(p);
    std::cerr << "[agboost] samples_drawn=" << o.samples << '\n';
    Sink sink(c.out);
    emit_table(sink.os(),
               {"n", "degree", "epsilon", "corruption", "rounds", "boosted_accuracy", "best_parity_accuracy",
                "halfspace_accuracy", "samples_drawn"},
               {{std::to_string(p.n), std::to_string(p.degree), fmt(p.epsilon, 4), fmt(p.corrupt_rate, 4),
                 std::to_string(o.rounds), fmt(o.boosted_accuracy), fmt(o.best_parity_accuracy),
                 fmt(o.target_accuracy), std::to_string(o.samples)}},
               c.markdown);
    return 0;
}

int run_rl(const Common& c, const std::string& mdp_path, std::size_t rounds, std::size_t rollouts,
           const std::string& access) {
    std::ostringstream canon;
    canon << "rl;mdp=" << mdp_path << ";rounds=" << rounds << ";rollouts=" << rollouts << ";access=" << access;
    log_run("rl", c.seed, canon.str());
    const TabularMDP mdp = load_mdp(mdp_path);
    const auto cfg = rl_config(rounds, rollouts, access == "reset" ? AccessMode::Reset : AccessMode::Episodic);
    const StumpLearner learner;
    Rng rng(c.seed);
    const PolicyBoostResult r = boost_policy(mdp, learner, cfg, rng);
    std::cerr << "[agboost] trajectories=" << r.trajectories << " steps=" << r.steps << '\n';

    std::vector<std::vector<std::string>> rows;
    for (std::size_t t = 0; t <= rounds; ++t) {
        const double exact = expected_value(exact_value(mdp, r.iterates[t]), mdp.start);
        rows.push_back({std::to_string(t), t == 0 ? "" : fmt(r.rollout_values[t - 1]), fmt(exact),
                        t == r.selected_round ? "1" : "0"});
    }
    Sink sink(c.out);
    emit_table(sink.os(), {"round", "rollout_value", "exact_value", "selected"}, rows, c.markdown);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Agnostic boosting with sample reuse"};
    app.set_config("--config", "", "Flat key=value file; sections name subcommands");
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", common.seed, "Master seed");
        sub->add_option("--out", common.out, "Write the table here instead of stdout");
        sub->add_flag("--markdown", common.markdown, "Render a markdown table instead of CSV");
    };

    // bench
    auto* bench = app.add_subcommand("bench", "Cross-validated accuracy grid over datasets, noise levels and algorithms");
    std::vector<std::string> datasets;
    std::vector<std::string> algos{"ours", "kk09", "bhs20"};
    std::vector<double> noise{0.0, 0.05, 0.10, 0.20};
    BenchGrid grid;
    BoostFlags bench_flags;
    CsvFlags bench_csv;
    bench->add_option("--dataset", datasets, "CSV dataset (repeatable)")->required();
    bench->add_option("--algo", algos, "Algorithms")->check(CLI::IsMember({"ours", "kk09", "bhs20"}));
    bench->add_option("--noise", noise, "Training label-noise rates")->check(CLI::Range(0.0, 0.5));
    bench->add_option("--folds", grid.folds, "Cross-validation folds")->check(CLI::Range(2, 1000000));
    bench->add_option("--grid-t", grid.rounds, "Round counts to search")->check(CLI::PositiveNumber);
    bench->add_option("--grid-sigma", grid.sigmas, "Mixing weights to search")->check(CLI::Range(1e-9, 1.0));
    add_boost_flags(bench, bench_flags);
    add_csv_flags(bench, bench_csv);
    add_common(bench);

    // boost
    auto* boost_cmd = app.add_subcommand("boost", "Train one booster on a dataset");
    std::string boost_dataset, boost_algo = "ours", model_path;
    std::size_t boost_rounds = 50;
    double boost_sigma = 0.25, boost_noise = 0.0;
    BoostFlags boost_flags;
    CsvFlags boost_csv;
    boost_cmd->add_option("--dataset", boost_dataset, "CSV dataset")->required();
    boost_cmd->add_option("--algo", boost_algo, "Algorithm")->check(CLI::IsMember({"ours", "kk09", "bhs20"}));
    boost_cmd->add_option("--rounds", boost_rounds, "Boosting rounds T")->check(CLI::PositiveNumber);
    boost_cmd->add_option("--sigma", boost_sigma, "Mixing weight")->check(CLI::Range(1e-9, 1.0));
    boost_cmd->add_option("--noise", boost_noise, "Training label-noise rate")->check(CLI::Range(0.0, 0.5));
    boost_cmd->add_option("--model", model_path, "Write the selected classifier as JSON");
    add_boost_flags(boost_cmd, boost_flags);
    add_csv_flags(boost_cmd, boost_csv);
    add_common(boost_cmd);

    // verify
    auto* verify = app.add_subcommand("verify", "Run the invariant suite");
    std::string level = "fast";
    verify->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    add_common(verify);

    // halfspace
    auto* half = app.add_subcommand("halfspace", "Boost low-degree parities on a noisy halfspace over the hypercube");
    HalfspaceParams hp;
    half->add_option("--n", hp.n, "Dimension (<= 24)")->check(CLI::Range(1, 24));
    half->add_option("--degree", hp.degree, "Maximum parity degree");
    half->add_option("--epsilon", hp.epsilon, "Target excess error")->check(CLI::PositiveNumber);
    half->add_option("--noise", hp.corrupt_rate, "Label corruption rate")->check(CLI::Range(0.0, 0.5));
    half->add_option("--gamma", hp.gamma, "Weak-learner edge")->check(CLI::Range(1e-9, 1.0));
    add_common(half);

    // rl
    auto* rl = app.add_subcommand("rl", "Boost a policy on a tabular MDP");
    std::string mdp_path, access = "episodic";
    std::size_t rl_rounds = 10, rollouts = 2000;
    rl->add_option("--mdp", mdp_path, "MDP JSON file")->required();
    rl->add_option("--rounds", rl_rounds, "Outer rounds")->check(CLI::PositiveNumber);
    rl->add_option("--rollouts", rollouts, "Selection rollouts per iterate")->check(CLI::PositiveNumber);
    rl->add_option("--access", access, "Start-state access")->check(CLI::IsMember({"episodic", "reset"}));
    add_common(rl);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    try {
        if (*bench) return run_bench(common, datasets, algos, noise, grid, bench_flags, bench_csv);
        if (*boost_cmd)
            return run_boost(common, boost_dataset, boost_algo, boost_rounds, boost_sigma, boost_noise, model_path,
                             boost_flags, boost_csv);
        if (*verify) return run_verify(common, level);
        if (*half) return run_halfspace_cmd(common, hp);
        if (*rl) return run_rl(common, mdp_path, rl_rounds, rollouts, access);
    } catch (const DataError& e) {
        std::cerr << "[agboost] data error: " << e.what() << '\n';
        return kDataError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "[agboost] invalid argument: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "[agboost] error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
