#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    static int counter = 0;
    const fs::path out = fs::temp_directory_path() / ("agboost_cli_test_" + std::to_string(::getpid()) + "_" +
                                                      std::to_string(counter++));
    const std::string cmd = std::string(AGBOOST_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    fs::remove(out);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

const std::string data_dir = AGBOOST_DATA_DIR;

}  // namespace

TEST_CASE("boost is deterministic and separates the fixture") {
    const std::string args = "boost --dataset " + data_dir + "/fixtures/separable_2d.csv --header --rounds 5 --sigma 0.5 --seed 3";
    const auto a = run(args);
    const auto b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
    const auto c = run("boost --dataset " + data_dir + "/fixtures/separable_2d.csv --header --rounds 5 --sigma 0.5 --seed 4");
    CHECK(c.code == 0);
}

TEST_CASE("bench output is byte-identical across runs") {
    const std::string args = "bench --dataset " + data_dir +
                             "/fixtures/separable_2d.csv --header --folds 3 --grid-t 5 --grid-sigma 0.5 --noise 0 0.1 --seed 11";
    const auto a = run(args);
    const auto b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("separable_2d") != std::string::npos);
    const auto md = run(args + " --markdown");
    CHECK(md.code == 0);
    CHECK(md.out.find('|') != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run("").code == 1);
    CHECK(run("nonsense").code == 1);
    CHECK(run("boost").code == 1);
    CHECK(run("boost --dataset /nonexistent.csv").code == 3);
    CHECK(run("boost --dataset " + data_dir + "/fixtures/separable_2d.csv --header --sigma 2").code == 1);
    CHECK(run("rl --mdp /nonexistent.json").code == 3);
    CHECK(run("verify --level fast").code == 0);
    CHECK(run("--help").code == 0);
}

TEST_CASE("config file sections feed subcommands") {
    const fs::path cfg = fs::temp_directory_path() / ("agboost_cfg_" + std::to_string(::getpid()) + ".ini");
    {
        std::ofstream f(cfg);
        f << "[boost]\nrounds=5\nsigma=0.5\nseed=3\nheader=true\n";
    }
    const auto a = run("--config " + cfg.string() + " boost --dataset " + data_dir + "/fixtures/separable_2d.csv");
    const auto b = run("boost --dataset " + data_dir + "/fixtures/separable_2d.csv --header --rounds 5 --sigma 0.5 --seed 3");
    fs::remove(cfg);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}
