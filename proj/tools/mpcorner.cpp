// mpcorner: command-line front end.
//
// Exit codes: 0 ok, 1 bad input data, 2 bad configuration, 3 internal error.
// Errors go to stderr as a single line "mpcorner: error[<tag>]: <message>".

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mpcorner/distances.hpp"
#include "mpcorner/experiments.hpp"
#include "mpcorner/io.hpp"

namespace fs = std::filesystem;
using namespace mpcorner;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum ExitCode { kOk = 0, kInput = 1, kConfig = 2, kInternal = 3 };

int fail(const char* tag, const std::string& message, int code) {
    std::cerr << "mpcorner: error[" << tag << "]: " << message << '\n';
    return code;
}

struct Options {
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    double delta = 0.1;
    std::string phi = "b";
    std::optional<double> p;
    bool sup = false;
    std::optional<std::size_t> landscape;
    std::string grid = "50x50";
    std::string bounds;
    double bandwidth = PipelineConfig{}.bandwidth;
    std::size_t lines = PipelineConfig{}.lines;
    std::size_t degree = PipelineConfig{}.degree;
    std::size_t resolution = PipelineConfig{}.resolution;
    double margin = PipelineConfig{}.margin;
    std::string output;

    // Experiment settings.
    std::string generator = "annulus";
    std::vector<std::size_t> sizes = ConvergenceConfig{}.sizes;
    std::size_t repetitions = ConvergenceConfig{}.repetitions;
    std::size_t base_size = ConvergenceConfig{}.base_size;
    std::vector<std::size_t> summands = BenchConfig{}.summands;
    std::vector<std::size_t> grids = BenchConfig{}.grids;
    std::size_t brute_samples = BenchConfig{}.brute_samples;
    std::vector<double> epsilons = InstabilityConfig{}.epsilons;
};

std::pair<std::size_t, std::size_t> parse_grid(const std::string& text) {
    const auto x = text.find_first_of("xX");
    try {
        if (x == std::string::npos) throw std::invalid_argument(text);
        std::size_t used = 0;
        const long w = std::stol(text.substr(0, x), &used);
        if (used != x) throw std::invalid_argument(text);
        const std::string rest = text.substr(x + 1);
        const long h = std::stol(rest, &used);
        if (used != rest.size() || w <= 0 || h <= 0) throw std::invalid_argument(text);
        return {static_cast<std::size_t>(w), static_cast<std::size_t>(h)};
    } catch (const std::logic_error&) {
        throw ConfigError("--grid expects WxH with positive integers, got '" + text + "'");
    }
}

std::vector<double> parse_bounds(const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::logic_error&) {
            throw ConfigError("--bounds expects x0,y0,x1,y1");
        }
    }
    if (out.size() != 4 || !(out[0] < out[2]) || !(out[1] < out[3])) {
        throw ConfigError("--bounds expects x0,y0,x1,y1 with x0 < x1 and y0 < y1");
    }
    return out;
}

PhiParams phi_params(const Options& o) {
    if (o.phi.size() != 1) throw ConfigError("--phi must be one of a, b, c");
    if (!(o.delta > 0.0)) throw ConfigError("--delta must be positive");
    try {
        return PhiParams{parse_phi_kind(o.phi[0]), o.delta};
    } catch (const std::invalid_argument&) {
        throw ConfigError("--phi must be one of a, b, c");
    }
}

PipelineConfig pipeline_config(const Options& o) {
    if (o.lines < 2) throw ConfigError("--lines must be at least 2");
    if (o.resolution < 2) throw ConfigError("--resolution must be at least 2");
    if (!(o.bandwidth > 0.0)) throw ConfigError("--bandwidth must be positive");
    if (!(o.margin >= 0.0)) throw ConfigError("--margin must be nonnegative");
    if (o.workers == 0) throw ConfigError("--workers must be positive");
    PipelineConfig c;
    c.resolution = o.resolution;
    c.margin = o.margin;
    c.bandwidth = o.bandwidth;
    c.lines = o.lines;
    c.degree = o.degree;
    c.workers = o.workers;
    return c;
}

void write_report(const ExperimentReport& report, const Options& o) {
    if (o.output.empty()) {
        std::cout << report.to_csv();
    } else {
        report.write_csv(o.output);
    }
}

// Grid over the union of bounding boxes, padded by delta.
GridSpec default_image_grid(const Decomposition& d, double delta, std::size_t w, std::size_t h) {
    Point lo{0.0, 0.0}, hi{1.0, 1.0};
    bool first = true;
    for (const auto& m : d.intervals) {
        const Box b = m.bounding_box();
        for (std::size_t i = 0; i < 2; ++i) {
            lo[i] = first ? b.lower[i] : std::min(lo[i], b.lower[i]);
            hi[i] = first ? b.upper[i] : std::max(hi[i], b.upper[i]);
        }
        first = false;
    }
    for (std::size_t i = 0; i < 2; ++i) {
        lo[i] -= delta;
        hi[i] += delta;
        if (!(hi[i] > lo[i])) hi[i] = lo[i] + 1.0;
    }
    return GridSpec::planar(lo[0], lo[1], hi[0], hi[1], w, h);
}

int cmd_decompose(const std::string& input, const Options& o) {
    const PipelineConfig config = pipeline_config(o);
    const PointCloud cloud = load_pointcloud(input);
    if (cloud.dim() != 2) throw InputError("the pipeline needs 2-dimensional points, got " + std::to_string(cloud.dim()));
    const Decomposition d = decompose_cloud(cloud, config);
    if (o.output.empty()) {
        std::cout << decomposition_to_json(d) << '\n';
    } else {
        save_decomposition(d, o.output);
        std::cerr << "mpcorner: " << d.size() << " summands in degree " << d.degree << '\n';
    }
    return kOk;
}

int cmd_represent(const std::string& input, const Options& o) {
    const int modes = (o.p ? 1 : 0) + (o.sup ? 1 : 0) + (o.landscape ? 1 : 0);
    if (modes != 1) throw ConfigError("choose exactly one of --p, --sup, --landscape");
    if (o.p && !(*o.p >= 0.0)) throw ConfigError("--p must be nonnegative");
    if (o.landscape && *o.landscape == 0) throw ConfigError("--landscape must be at least 1");
    const PhiParams params = phi_params(o);
    const auto [w, h] = parse_grid(o.grid);
    const Decomposition d = load_decomposition(input);
    if (d.ambient_dim != 2) throw InputError("image export needs a 2-parameter decomposition");

    GridSpec grid;
    if (o.bounds.empty()) {
        grid = default_image_grid(d, params.delta, w, h);
    } else {
        const auto b = parse_bounds(o.bounds);
        grid = GridSpec::planar(b[0], b[1], b[2], b[3], w, h);
    }

    GridImage image;
    if (o.landscape) {
        image = mpl(d, *o.landscape, grid, o.workers);
    } else if (o.sup) {
        image = scdr_sup(d, params, grid, o.workers);
    } else {
        image = scdr_p(d, *o.p, params, grid, o.workers);
    }
    image.metadata["degree"] = std::to_string(d.degree);
    image.metadata["y_axis"] = "codensity";

    if (o.output.empty()) throw ConfigError("represent needs -o <file.csv|file.pgm>");
    const fs::path out(o.output);
    if (out.extension() == ".pgm") {
        write_image_pgm(image, out);
    } else {
        write_image_csv(image, out);
    }
    std::cout.precision(17);
    std::cout << "max=" << image.max_value() << '\n';
    return kOk;
}

int cmd_distance(const std::string& left, const std::string& right, const Options&) {
    const Decomposition a = load_decomposition(left);
    const Decomposition b = load_decomposition(right);
    const MatchingResult r = bottleneck(a, b);
    std::cout.precision(17);
    std::cout << "bottleneck=" << r.cost << '\n';
    for (const auto& [i, j] : r.pairs) std::cout << "pair " << i << ' ' << j << '\n';
    for (std::size_t i : r.unmatched_left) std::cout << "unmatched_left " << i << '\n';
    for (std::size_t j : r.unmatched_right) std::cout << "unmatched_right " << j << '\n';
    return kOk;
}

int cmd_convergence(const Options& o) {
    ConvergenceConfig c;
    c.generator = o.generator;
    if (c.generator != "annulus" && c.generator != "circle" && c.generator != "constant") {
        throw ConfigError("--generator must be annulus, circle or constant");
    }
    c.sizes = o.sizes;
    if (c.sizes.size() < 4) throw ConfigError("--sizes needs at least 4 values");
    for (std::size_t i = 1; i < c.sizes.size(); ++i) {
        if (c.sizes[i] <= c.sizes[i - 1]) throw ConfigError("--sizes must be strictly ascending");
    }
    c.base_size = o.base_size;
    if (c.sizes.back() > c.base_size) throw ConfigError("--sizes exceed --base-size");
    c.repetitions = o.repetitions;
    if (c.repetitions == 0) throw ConfigError("--reps must be positive");
    c.seed = o.seed;
    c.phi = phi_params(o);
    c.image_resolution = parse_grid(o.grid).first;
    c.pipeline = pipeline_config(o);
    const ExperimentReport report = run_convergence(c);
    write_report(report, o);
    const double slope = report.find("fit", "slope_linf").value_or(std::nan(""));
    std::cerr << "mpcorner: slope_linf=" << (std::isnan(slope) ? std::string("not-a-fit") : std::to_string(slope))
              << '\n';
    return kOk;
}

int cmd_bench(const Options& o) {
    BenchConfig c;
    c.summands = o.summands;
    c.grids = o.grids;
    for (std::size_t g : c.grids) {
        if (g == 0) throw ConfigError("--grids entries must be positive");
    }
    if (o.brute_samples == 0) throw ConfigError("--brute-samples must be positive");
    c.brute_samples = o.brute_samples;
    c.seed = o.seed;
    c.delta = o.delta;
    if (!(c.delta > 0.0)) throw ConfigError("--delta must be positive");
    c.workers = o.workers;
    write_report(run_bench(c), o);
    return kOk;
}

int cmd_instability(const Options& o) {
    InstabilityConfig c;
    c.epsilons = o.epsilons;
    for (double e : c.epsilons) {
        if (!(e >= 0.0)) throw ConfigError("--epsilons must be nonnegative");
    }
    c.delta = o.delta;
    if (!(c.delta > 0.0)) throw ConfigError("--delta must be positive");
    c.image_resolution = parse_grid(o.grid).first;
    c.workers = o.workers;
    write_report(run_instability(c), o);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stable image representations of multiparameter persistence decompositions"};
    app.set_config("--config", "", "key=value file; command-line flags take precedence");
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--seed", o.seed, "random seed");
    app.add_option("--workers", o.workers, "worker threads");
    app.add_option("--delta", o.delta, "half side of the local box");
    app.add_option("--phi", o.phi, "local representation: a (diagonal), b (volume), c (largest rectangle)");
    app.add_option("--p", o.p, "weight exponent of the normalized sum representation");
    app.add_flag("--sup", o.sup, "supremum representation");
    app.add_option("--landscape", o.landscape, "k-th multiparameter landscape");
    app.add_option("--grid", o.grid, "image grid WxH");
    app.add_option("--bounds", o.bounds, "image bounds x0,y0,x1,y1");
    app.add_option("--bandwidth", o.bandwidth, "KDE bandwidth");
    app.add_option("--lines", o.lines, "number of slicing lines");
    app.add_option("--degree", o.degree, "homology degree");
    app.add_option("--resolution", o.resolution, "bifiltration grid vertices per axis");
    app.add_option("--margin", o.margin, "bifiltration grid padding, fraction of the cloud extent");
    app.add_option("-o,--output", o.output, "output file");
    app.add_option("--generator", o.generator, "annulus | circle | constant");
    app.add_option("--sizes", o.sizes, "subsample sizes")->delimiter(',');
    app.add_option("--reps", o.repetitions, "repetitions per size");
    app.add_option("--base-size", o.base_size, "base cloud size");
    app.add_option("--summands", o.summands, "decomposition sizes")->delimiter(',');
    app.add_option("--grids", o.grids, "grid sides")->delimiter(',');
    app.add_option("--brute-samples", o.brute_samples, "baseline samples per axis and cell");
    app.add_option("--epsilons", o.epsilons, "bridge widths")->delimiter(',');

    std::string input, second;
    auto* decompose = app.add_subcommand("decompose", "point cloud CSV -> decomposition JSON");
    decompose->add_option("input", input, "point cloud CSV")->required();
    auto* represent = app.add_subcommand("represent", "decomposition JSON -> image CSV or PGM");
    represent->add_option("input", input, "decomposition JSON")->required();
    auto* distance = app.add_subcommand("distance", "bottleneck distance of two rectangle decompositions");
    distance->add_option("left", input, "decomposition JSON")->required();
    distance->add_option("right", second, "decomposition JSON")->required();
    auto* convergence = app.add_subcommand("convergence", "convergence-rate experiment");
    auto* bench = app.add_subcommand("bench", "runtime benchmark");
    auto* instability = app.add_subcommand("instability", "bridged-squares instability contrast");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("config", e.what(), kConfig);
    }

    try {
        if (*decompose) return cmd_decompose(input, o);
        if (*represent) return cmd_represent(input, o);
        if (*distance) return cmd_distance(input, second, o);
        if (*convergence) return cmd_convergence(o);
        if (*bench) return cmd_bench(o);
        if (*instability) return cmd_instability(o);
        return fail("config", "no command given", kConfig);
    } catch (const ConfigError& e) {
        return fail("config", e.what(), kConfig);
    } catch (const InputError& e) {
        return fail("input", e.what(), kInput);
    } catch (const DimensionError& e) {
        return fail("input", e.what(), kInput);
    } catch (const NotRectangleError& e) {
        return fail("input", e.what(), kInput);
    } catch (const DegenerateInputError& e) {
        return fail("input", e.what(), kInput);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), kInternal);
    }
}
