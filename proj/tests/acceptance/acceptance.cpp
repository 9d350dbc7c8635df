// Prints one PASS/FAIL/SKIP line per acceptance criterion and exits nonzero
// if any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "agboost/data.hpp"
#include "agboost/experiments.hpp"
#include "agboost/rl_sim.hpp"
#include "agboost/verify.hpp"

namespace fs = std::filesystem;
using namespace agboost;

namespace {

enum class Status { Pass, Fail, Skip };

struct Line {
    Status status;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(double v, int prec = 4) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

const GroupReport& group(const std::vector<GroupReport>& reps, const std::string& name) {
    for (const auto& r : reps)
        if (r.name == name) return r;
    throw std::runtime_error("missing verification group " + name);
}

Line ac1(const std::vector<GroupReport>& v) {
    bool ok = true;
    double secs = 0.0;
    std::string detail;
    for (const char* g : {"potential.values", "potential.grid", "potential.seam", "potential.finite-difference"}) {
        const auto& r = group(v, g);
        ok = ok && r.passed;
        secs += r.seconds;
        detail += std::string(g) + " [" + r.detail + "]; ";
    }
    ok = ok && secs < 1.0;
    return {ok ? Status::Pass : Status::Fail, detail + fmt(secs) + " s"};
}

Line from_group(const std::vector<GroupReport>& v, const std::string& name, double budget) {
    const auto& r = group(v, name);
    const bool ok = r.passed && r.seconds < budget;
    return {ok ? Status::Pass : Status::Fail, name + " [" + r.detail + "] " + fmt(r.seconds) + " s"};
}

Line ac5() {
    const auto t0 = Clock::now();
    const BoostConfig cfg = planted_config(0.1);
    int good = 0;
    double worst = 1.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto inst = gen_planted(16, 32, 0.7, s);
        const auto r = run_planted_ours(inst, cfg, derive_seed(500, s));
        good += r.population_corr >= 0.6;
        worst = std::min(worst, r.population_corr);
    }
    const double secs = since(t0);
    const bool ok = good >= 18 && secs < 120.0;
    return {ok ? Status::Pass : Status::Fail, std::to_string(good) + "/20 seeds with corr >= 0.6, worst " +
                                                  fmt(worst) + ", " + fmt(secs) + " s"};
}

// Smallest per-round fresh batch on a shared ladder that reaches the target
// correlation; returns the total fresh-sample count, or 0 if none does.
std::size_t min_budget(const std::function<PlantedRun(std::size_t)>& run, double target) {
    static const std::array<std::size_t, 18> ladder{1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64, 96, 128, 192, 256, 384, 512};
    for (auto b : ladder) {
        const auto r = run(b);
        if (r.population_corr >= target) return r.samples;
    }
    return 0;
}

Line ac6() {
    const auto t0 = Clock::now();
    const double target = 0.6;
    int wins = 0;
    std::string detail;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto inst = gen_planted(16, 32, 0.7, 100 + s);
        const std::uint64_t seed = derive_seed(600, s);
        const auto ours = min_budget(
            [&](std::size_t b) {
                auto c = planted_config(0.1);
                c.fresh_per_round = b;
                return run_planted_ours(inst, c, seed);
            },
            target);
        const auto kk = min_budget(
            [&](std::size_t b) {
                auto c = planted_kk09_config(0.1);
                c.weak_batch = b;
                c.branch_batch = b;
                return run_planted_kk09(inst, c, seed);
            },
            target);
        wins += ours > 0 && (kk == 0 || ours < kk);
        detail += std::to_string(ours) + "/" + std::to_string(kk) + " ";
    }
    const double secs = since(t0);
    const bool ok = wins >= 8 && secs < 300.0;
    return {ok ? Status::Pass : Status::Fail, std::to_string(wins) + "/10 seeds strictly fewer samples (ours/kk09: " +
                                                  detail + "), " + fmt(secs) + " s"};
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

Line ac7() {
    const char* dir = std::getenv("AGBOOST_UCI_DIR");
    if (!dir || !fs::is_directory(dir)) return {Status::Skip, "set AGBOOST_UCI_DIR to a directory of label-last CSV files"};
    const auto t0 = Clock::now();
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".csv") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    const BenchGrid grid;
    const BenchParams params;
    const double noises[] = {0.0, 0.05, 0.10, 0.20};
    std::map<std::string, double> clean_ours;
    int cells = 0, dominant = 0;
    std::uint64_t cell_index = 0;
    for (const auto& f : files) {
        const Dataset data = load_csv(f);
        const std::string name = lower(f.stem().string());
        for (double noise : noises) {
            std::array<double, 3> acc{};
            for (int a = 0; a < 3; ++a)
                acc[a] = run_cell(name, data, noise, static_cast<Algo>(a), grid, params, derive_seed(700, cell_index++))
                             .mean_accuracy;
            ++cells;
            dominant += acc[0] >= acc[1] && acc[0] >= acc[2];
            if (noise == 0.0) clean_ours[name] = acc[0];
        }
    }
    const bool iono = clean_ours.count("ionosphere") && std::abs(clean_ours["ionosphere"] - 0.97) <= 0.05;
    const bool diab = clean_ours.count("diabetes") && std::abs(clean_ours["diabetes"] - 0.87) <= 0.05;
    const bool ok = iono && diab && dominant >= 14 && since(t0) < 1800.0;
    std::string detail = "ours >= both baselines in " + std::to_string(dominant) + "/" + std::to_string(cells) + " cells";
    for (const char* k : {"ionosphere", "diabetes"})
        detail += std::string(", ") + k + " " + (clean_ours.count(k) ? fmt(clean_ours[k]) : std::string("missing"));
    return {ok ? Status::Pass : Status::Fail, detail + ", " + fmt(since(t0)) + " s"};
}

Line ac8() {
    const auto t0 = Clock::now();
    const auto r = run_halfspace(HalfspaceParams{});
    const double secs = since(t0);
    const bool ok = r.boosted_accuracy >= r.best_parity_accuracy + 0.05 && secs < 120.0;
    return {ok ? Status::Pass : Status::Fail, "boosted " + fmt(r.boosted_accuracy) + " vs best parity " +
                                                  fmt(r.best_parity_accuracy) + ", " + fmt(secs) + " s"};
}

Line ac9(const std::vector<GroupReport>& v) {
    const auto t0 = Clock::now();
    const auto& ident = group(v, "rl_sim.label-identity");
    const auto& bell = group(v, "rl_sim.bellman");
    const fs::path mdp_dir = fs::path(AGBOOST_DATA_DIR) / "mdp";
    const StumpLearner learner;

    const auto single = load_mdp(mdp_dir / "single_state.json");
    Rng r1(derive_seed(900, 0));
    const auto a = boost_policy(single, learner, rl_config(10, 2000, AccessMode::Episodic), r1);
    const double v_single = expected_value(exact_value(single, a.policy), single.start);

    const auto chain = load_mdp(mdp_dir / "chain5.json");
    Rng r2(derive_seed(900, 1));
    const auto b = boost_policy(chain, learner, rl_config(10, 2000, AccessMode::Episodic), r2);
    const double v_chain = expected_value(exact_value(chain, b.policy), chain.start);
    const double v_uniform = expected_value(exact_value(chain, MixturePolicy::uniform(chain.n_states)), chain.start);

    const double secs = since(t0) + ident.seconds + bell.seconds;
    const bool ok = ident.passed && bell.passed && v_single >= 9.0 && v_chain >= v_uniform + 0.5 && secs < 300.0;
    return {ok ? Status::Pass : Status::Fail, "identity [" + ident.detail + "], bellman [" + bell.detail +
                                                  "], single-state " + fmt(v_single) + ", chain " + fmt(v_chain) +
                                                  " vs uniform " + fmt(v_uniform) + ", " + fmt(secs) + " s"};
}

struct Capture {
    int code;
    std::string out;
};

Capture capture(const std::string& cmd) {
    Capture c{-1, ""};
    FILE* p = ::popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!p) return c;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) c.out.append(buf.data(), n);
    const int status = ::pclose(p);
    c.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return c;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Line ac10() {
    const std::string cli = AGBOOST_CLI_PATH;
    const std::string data = AGBOOST_DATA_DIR;
    const fs::path tmp = fs::temp_directory_path() / ("agboost_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(tmp);
    const std::string sep = data + "/fixtures/separable_2d.csv --header";
    const std::vector<std::pair<std::string, std::string>> cmds = {
        {"bench", "bench --dataset " + sep + " --dataset " + data +
                      "/fixtures/pure_noise.csv --folds 3 --grid-t 5 10 --grid-sigma 0.25 0.5 --seed 1"},
        {"boost", "boost --dataset " + sep + " --seed 1"},
        {"verify", "verify --level fast --seed 1"},
        {"halfspace", "halfspace --n 5 --seed 1"},
        {"rl", "rl --mdp " + data + "/mdp/chain5.json --rounds 4 --rollouts 500 --seed 1"},
    };
    std::vector<std::string> bad;
    for (const auto& [name, args] : cmds) {
        std::string outs[2], files[2];
        bool ran = true;
        for (int k = 0; k < 2; ++k) {
            const fs::path out = tmp / (name + std::to_string(k) + ".txt");
            const bool file_mode = name == "bench" || name == "boost";
            const auto c = capture(cli + " " + args + (file_mode ? " --out " + out.string() : ""));
            ran = ran && c.code == 0;
            outs[k] = c.out;
            files[k] = file_mode ? slurp(out) : "";
        }
        if (!ran || outs[0] != outs[1] || files[0] != files[1] || (outs[0].empty() && files[0].empty()))
            bad.push_back(name);
    }
    fs::remove_all(tmp);
    if (!bad.empty()) {
        std::string list;
        for (const auto& b : bad) list += b + " ";
        return {Status::Fail, "outputs differ or command failed: " + list};
    }
    return {Status::Pass, std::to_string(cmds.size()) + " commands byte-identical across two runs"};
}

}  // namespace

int main() {
    const auto t0 = Clock::now();
    std::vector<GroupReport> verify;
    try {
        verify = run_verification(VerifyLevel::Full, 2024);
    } catch (const std::exception& e) {
        std::cerr << "verification suite threw: " << e.what() << "\n";
        return 1;
    }

    const std::vector<std::pair<std::string, std::function<Line()>>> criteria = {
        {"AC1 potential suite", [&] { return ac1(verify); }},
        {"AC2 consistency-gap audit", [&] { return from_group(verify, "oracles.consistency-gap", 5.0); }},
        {"AC3 taylor identity", [&] { return from_group(verify, "oracles.taylor-identity", 30.0); }},
        {"AC4 martingale recursion", [&] { return from_group(verify, "oracles.martingale", 120.0); }},
        {"AC5 planted agnostic guarantee", ac5},
        {"AC6 sample-efficiency direction", ac6},
        {"AC7 dataset benchmark", ac7},
        {"AC8 halfspace pipeline", ac8},
        {"AC9 rl suite", [&] { return ac9(verify); }},
        {"AC10 cli determinism", ac10},
    };

    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Line l{Status::Fail, ""};
        try {
            l = fn();
        } catch (const std::exception& e) {
            l = {Status::Fail, std::string("exception: ") + e.what()};
        }
        const char* tag = l.status == Status::Pass ? "PASS" : l.status == Status::Skip ? "SKIP" : "FAIL";
        failed += l.status == Status::Fail;
        std::cout << tag << "  " << name << ": " << l.detail << std::endl;
    }
    std::cout << "total " << fmt(since(t0)) << " s, " << failed << " failed" << std::endl;
    return failed == 0 ? 0 : 1;
}
