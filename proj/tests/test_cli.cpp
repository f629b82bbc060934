#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mpcorner/experiments.hpp"
#include "mpcorner/io.hpp"

using namespace mpcorner;
namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "mpcorner_cli_test";

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::string& args) {
    fs::create_directories(kDir);
    const auto out = kDir / "stdout.txt";
    const auto err = kDir / "stderr.txt";
    const std::string command = std::string(MPCORNER_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(command.c_str());
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    };
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string write(const std::string& name, const std::string& text) {
    fs::create_directories(kDir);
    const auto path = kDir / name;
    std::ofstream(path) << text;
    return path.string();
}

}  // namespace

TEST_CASE("decompose") {
    const auto cloud = kDir / "annulus.csv";
    fs::create_directories(kDir);
    save_pointcloud(annulus_nonuniform(400, 4), cloud);
    const auto out = (kDir / "annulus.json").string();
    const auto r = run("decompose " + cloud.string() + " -o " + out);
    REQUIRE(r.code == 0);
    const auto d = load_decomposition(out);
    CHECK(d.degree == 1);
    CHECK(d.size() >= 1);

    const auto missing = run("decompose /nonexistent/cloud.csv");
    CHECK(missing.code == 1);
    CHECK(missing.err.rfind("mpcorner: error[input]: ", 0) == 0);
    CHECK(std::count(missing.err.begin(), missing.err.end(), '\n') == 1);

    const auto one_line = run("decompose " + cloud.string() + " --lines 1");
    CHECK(one_line.code == 2);
    CHECK(one_line.err.rfind("mpcorner: error[config]: ", 0) == 0);

    CHECK(run("decompose " + write("bad.csv", "0,0\nx,1\n")).code == 1);
    CHECK(run("decompose " + cloud.string() + " --lines many").code == 2);
    CHECK(run("frobnicate").code == 2);
}

TEST_CASE("config file with flag overrides") {
    const auto cloud = kDir / "small.csv";
    fs::create_directories(kDir);
    save_pointcloud(circle_with_outliers(100, 2, 1), cloud);
    const auto config = write("bad.conf", "lines=1\nbandwidth=0.1\n");
    CHECK(run("decompose " + cloud.string() + " --config " + config).code == 2);
    const auto fixed = run("decompose " + cloud.string() + " --config " + config + " --lines 6 --resolution 12");
    CHECK(fixed.code == 0);
}

TEST_CASE("represent") {
    const auto json = write("rect.json", R"({"dim": 2, "degree": 0, "intervals": [{"births": [[0,0]], "deaths": [[4,4]]}]})");
    const auto csv = (kDir / "rect.csv").string();
    const auto sup = run("represent " + json + " --sup --phi b --delta 1 --grid 6x6 --bounds 0,0,4,4 -o " + csv);
    REQUIRE(sup.code == 0);
    CHECK(sup.out == "max=1\n");
    const auto p = run("represent " + json + " --p 1 --phi b --delta 1 --grid 6x6 --bounds 0,0,4,4 -o " + csv);
    CHECK(p.out == sup.out);

    const auto pgm = (kDir / "rect.pgm").string();
    CHECK(run("represent " + json + " --p 0 --phi a --delta 0.5 -o " + pgm).code == 0);
    CHECK(fs::exists(pgm + ".txt"));

    CHECK(run("represent " + write("broken.json", "{\"dim\": 2, \"intervals\": [") + " --sup -o " + csv).code == 1);
    CHECK(run("represent " + json + " --sup --p 1 -o " + csv).code == 2);
    CHECK(run("represent " + json + " --sup --phi q -o " + csv).code == 2);
    CHECK(run("represent " + json + " --sup --grid 10 -o " + csv).code == 2);
    CHECK(run("represent " + json + " --sup --delta 0 -o " + csv).code == 2);
}

TEST_CASE("distance") {
    const auto a = write("a.json", R"({"dim": 2, "intervals": [{"births": [[0,0]], "deaths": [[2,2]]}]})");
    const auto b = write("b.json", R"({"dim": 2, "intervals": [{"births": [[0.5,0.5]], "deaths": [[2.5,2.5]]}]})");
    const auto r = run("distance " + a + " " + b);
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("bottleneck=0.5\n", 0) == 0);
    const auto stair = write("stair.json", R"({"dim": 2, "intervals": [{"births": [[0,1],[1,0]], "deaths": [[3,3]]}]})");
    CHECK(run("distance " + a + " " + stair).code == 1);
}

TEST_CASE("experiments") {
    const auto conv = run("convergence --generator constant --base-size 200 --sizes 25,50,100,200 --reps 1 "
                          "--resolution 8 --lines 4 --grid 8x8 --degree 0");
    REQUIRE(conv.code == 0);
    CHECK(conv.out.rfind("n,metric,value,repetition,seed\n", 0) == 0);
    CHECK(conv.err.find("not-a-fit") != std::string::npos);
    CHECK(run("convergence --sizes 100,50,200,400").code == 2);
    CHECK(run("convergence --sizes 100,200,400").code == 2);

    const auto bench_csv = (kDir / "bench.csv").string();
    CHECK(run("bench --summands 0,3 --grids 2,4 -o " + bench_csv).code == 0);
    CHECK(fs::file_size(bench_csv) > 0);

    const auto inst = run("instability --epsilons 0.1,0.01 --grid 10x10");
    REQUIRE(inst.code == 0);
    CHECK(inst.out.find("mpi_proxy") != std::string::npos);
}
