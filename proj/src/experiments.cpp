#include "mpcorner/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "mpcorner/filtration.hpp"
#include "mpcorner/parallel.hpp"
#include "mpcorner/vineyard.hpp"

namespace mpcorner {

GridSpec pipeline_grid(const PointCloud& cloud, const PipelineConfig& config) {
    if (cloud.dim() != 2) throw std::invalid_argument("the pipeline needs a planar point cloud");
    Point lo = cloud.points.front();
    Point hi = lo;
    for (const auto& p : cloud.points) {
        for (std::size_t i = 0; i < 2; ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    }
    double extent = std::max(hi[0] - lo[0], hi[1] - lo[1]);
    if (!(extent > 0.0)) extent = 1.0;
    const double pad = config.margin * extent;
    return GridSpec::planar(lo[0] - pad, lo[1] - pad, hi[0] + pad, hi[1] + pad, config.resolution, config.resolution);
}

Decomposition decompose_cloud(const PointCloud& cloud, const PipelineConfig& config, const GridSpec& grid) {
    const BiFiltration bif = build_bifiltration(cloud, grid, config.bandwidth);
    return vineyard_decompose(bif, VineyardOptions{config.degree, config.lines, config.workers});
}

Decomposition decompose_cloud(const PointCloud& cloud, const PipelineConfig& config) {
    return decompose_cloud(cloud, config, pipeline_grid(cloud, config));
}

Decomposition bridged_squares(double epsilon) {
    if (!(epsilon >= 0.0)) throw std::invalid_argument("bridge width must be nonnegative");
    Decomposition d;
    d.ambient_dim = 2;
    d.degree = 0;
    if (epsilon == 0.0) {
        d.intervals.push_back(IntervalModule::rectangle({0.0, 1.0}, {1.0, 2.0}));
        d.intervals.push_back(IntervalModule::rectangle({1.0, 0.0}, {2.0, 1.0}));
        return d;
    }
    const double h = 0.5 * epsilon;
    d.intervals.emplace_back(std::vector<Point>{{0.0, 1.0}, {1.0 - h, 1.0 - h}, {1.0, 0.0}},
                             std::vector<Point>{{1.0, 2.0}, {1.0 + h, 1.0 + h}, {2.0, 1.0}});
    return d;
}

namespace {

// Uniform point of the standard simplex {u >= 0, sum u = 1}.
Point simplex_point(std::mt19937_64& rng, std::size_t dim) {
    std::exponential_distribution<double> expo(1.0);
    Point u(dim);
    double total = 0.0;
    for (auto& c : u) total += (c = expo(rng));
    for (auto& c : u) c /= total;
    return u;
}

}  // namespace

IntervalModule random_staircase(std::mt19937_64& rng, std::size_t dim, std::size_t max_corners, double extent) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(1, max_corners));
    while (true) {
        Point lo(dim), hi(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            lo[j] = 0.5 * extent * unit(rng);
            hi[j] = std::min(extent, lo[j] + extent * (0.1 + 0.4 * unit(rng)));
        }
        const double birth_spread = 0.25 * extent * unit(rng);
        const double death_spread = 0.25 * extent * unit(rng);
        // Points on a hyperplane sum = const are pairwise incomparable.
        std::vector<Point> births, deaths;
        for (std::size_t k = count(rng); k > 0; --k) {
            Point u = simplex_point(rng, dim);
            for (std::size_t j = 0; j < dim; ++j) u[j] = lo[j] + birth_spread * u[j];
            births.push_back(std::move(u));
        }
        for (std::size_t k = count(rng); k > 0; --k) {
            Point v = simplex_point(rng, dim);
            for (std::size_t j = 0; j < dim; ++j) v[j] = hi[j] - death_spread * v[j];
            deaths.push_back(std::move(v));
        }
        IntervalModule m(std::move(births), std::move(deaths));
        if (!m.is_zero() && weight(m) > 1e-6 * extent) return m;
    }
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    auto splitmix = [](std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    };
    return splitmix(splitmix(splitmix(seed) ^ a) ^ b);
}

void ExperimentReport::add(std::string key, std::string metric, double value, std::size_t repetition,
                           std::uint64_t seed) {
    rows.push_back(ReportRow{std::move(key), std::move(metric), value, repetition, seed});
}

std::string ExperimentReport::to_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << key_name << ",metric,value,repetition,seed\n";
    for (const auto& r : rows) {
        out << r.key << ',' << r.metric << ',' << r.value << ',' << r.repetition << ',' << r.seed << '\n';
    }
    return out.str();
}

void ExperimentReport::write_csv(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << to_csv();
}

std::optional<double> ExperimentReport::find(const std::string& key, const std::string& metric) const {
    for (const auto& r : rows) {
        if (r.key == key && r.metric == metric) return r.value;
    }
    return std::nullopt;
}

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) return std::nullopt;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) return std::nullopt;
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    if (std::all_of(y.begin(), y.end(), [&](double v) { return v == y.front(); })) return std::nullopt;
    const double n = static_cast<double>(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) return std::nullopt;
    return sxy / sxx;
}

namespace {

PointCloud generate_base(const ConvergenceConfig& config) {
    if (config.generator == "annulus") return annulus_nonuniform(config.base_size, config.seed);
    if (config.generator == "circle") {
        return circle_with_outliers(config.base_size, config.base_size / 50, config.seed);
    }
    if (config.generator == "constant") {
        // Every point at the origin: every subsample yields the same representation.
        PointCloud cloud;
        cloud.points.assign(config.base_size, Point{0.0, 0.0});
        return cloud;
    }
    throw std::invalid_argument("unknown generator '" + config.generator + "'");
}

GridSpec representation_grid(const Decomposition& target, const BiFiltration& bif, double delta,
                             std::size_t resolution) {
    Box bounds = bif.value_bounds();
    for (const auto& m : target.intervals) {
        const Box b = m.bounding_box();
        for (std::size_t i = 0; i < 2; ++i) {
            bounds.lower[i] = std::min(bounds.lower[i], b.lower[i]);
            bounds.upper[i] = std::max(bounds.upper[i], b.upper[i]);
        }
    }
    Box box = bounds;
    for (std::size_t i = 0; i < 2; ++i) {
        box.lower[i] -= delta;
        box.upper[i] += delta;
    }
    return GridSpec::planar(box.lower[0], box.lower[1], box.upper[0], box.upper[1], resolution, resolution);
}

std::string size_key(std::size_t n) { return std::to_string(n); }

}  // namespace

ExperimentReport run_convergence(const ConvergenceConfig& config) {
    if (config.sizes.size() < 2) throw std::invalid_argument("convergence needs at least two sizes");
    if (!std::is_sorted(config.sizes.begin(), config.sizes.end())) {
        throw std::invalid_argument("convergence sizes must be ascending");
    }
    if (config.sizes.back() > config.base_size) throw std::invalid_argument("sizes exceed the base cloud");
    if (config.repetitions == 0) throw std::invalid_argument("at least one repetition is required");

    const PointCloud base = generate_base(config);
    const GridSpec bif_grid = pipeline_grid(base, config.pipeline);
    PipelineConfig serial = config.pipeline;
    serial.workers = 1;

    const std::size_t n_max = config.sizes.back();
    const std::uint64_t target_seed = mix_seed(config.seed, n_max, std::numeric_limits<std::uint32_t>::max());
    const PointCloud target_cloud = subsample(base, n_max, target_seed);
    const BiFiltration target_bif = build_bifiltration(target_cloud, bif_grid, serial.bandwidth);
    const Decomposition target_decomp =
        vineyard_decompose(target_bif, VineyardOptions{serial.degree, serial.lines, config.pipeline.workers});
    const GridSpec image_grid =
        representation_grid(target_decomp, target_bif, config.phi.delta, config.image_resolution);
    const GridImage target = scdr_sup(target_decomp, config.phi, image_grid, config.pipeline.workers);

    struct Cell {
        std::size_t n;
        std::size_t rep;
        std::uint64_t seed;
        double linf = 0.0;
        double l2sq = 0.0;
    };
    std::vector<Cell> cells;
    for (std::size_t n : config.sizes) {
        for (std::size_t rep = 0; rep < config.repetitions; ++rep) cells.push_back({n, rep, mix_seed(config.seed, n, rep)});
    }
    parallel_for(cells.size(), config.pipeline.workers, [&](std::size_t i) {
        Cell& cell = cells[i];
        const PointCloud sample = subsample(base, cell.n, cell.seed);
        const Decomposition decomp = decompose_cloud(sample, serial, bif_grid);
        const GridImage image = scdr_sup(decomp, config.phi, image_grid, 1);
        cell.linf = image_distance(image, target, ImageNorm::LInf);
        cell.l2sq = image_distance(image, target, ImageNorm::L2Squared);
    });

    ExperimentReport report;
    report.key_name = "n";
    std::vector<double> fit_n, fit_linf, fit_l2;
    for (std::size_t n : config.sizes) {
        double sum_linf = 0.0, sum_l2 = 0.0;
        for (const auto& cell : cells) {
            if (cell.n != n) continue;
            report.add(size_key(n), "linf", cell.linf, cell.rep, cell.seed);
            report.add(size_key(n), "l2sq", cell.l2sq, cell.rep, cell.seed);
            sum_linf += cell.linf;
            sum_l2 += cell.l2sq;
        }
        const double reps = static_cast<double>(config.repetitions);
        report.add(size_key(n), "mean_linf", sum_linf / reps, 0, config.seed);
        report.add(size_key(n), "mean_l2sq", sum_l2 / reps, 0, config.seed);
        if (n < n_max) {
            fit_n.push_back(static_cast<double>(n));
            fit_linf.push_back(sum_linf / reps);
            fit_l2.push_back(sum_l2 / reps);
        }
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    // Images equal up to summation order (a constant generator) differ by
    // rounding only; such curves are not a fit.
    double scale = 0.0;
    for (double v : target.values) scale = std::max(scale, std::abs(v));
    const double floor_linf = 1e-9 * std::max(scale, 1.0);
    const double floor_l2 =
        floor_linf * floor_linf * static_cast<double>(target.values.size()) * target.grid.cell_volume();
    auto noise = [](const std::vector<double>& y, double floor) {
        return std::all_of(y.begin(), y.end(), [&](double v) { return v <= floor; });
    };
    const auto slope_linf = noise(fit_linf, floor_linf) ? std::nullopt : loglog_slope(fit_n, fit_linf);
    const auto slope_l2 = noise(fit_l2, floor_l2) ? std::nullopt : loglog_slope(fit_n, fit_l2);
    report.add("fit", "slope_linf", slope_linf.value_or(nan), 0, config.seed);
    report.add("fit", "slope_l2sq", slope_l2.value_or(nan), 0, config.seed);
    report.add("target", "summands", static_cast<double>(target_decomp.size()), 0, target_seed);
    return report;
}

GridImage brute_force_sup_volume(const Decomposition& decomposition, double delta, const GridSpec& grid,
                                 std::size_t samples_per_axis) {
    grid.validate();
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (samples_per_axis == 0) throw std::invalid_argument("at least one sample per axis");
    const std::size_t n = grid.dim();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= samples_per_axis;

    GridImage image;
    image.grid = grid;
    image.values.assign(grid.size(), 0.0);
    Point y(n);
    for (std::size_t index = 0; index < grid.size(); ++index) {
        const Point x = grid.point(index);
        double best = 0.0;
        for (const auto& m : decomposition.intervals) {
            std::size_t inside = 0;
            for (std::size_t s = 0; s < total; ++s) {
                std::size_t rem = s;
                for (std::size_t j = 0; j < n; ++j) {
                    const double frac = (static_cast<double>(rem % samples_per_axis) + 0.5) /
                                        static_cast<double>(samples_per_axis);
                    rem /= samples_per_axis;
                    y[j] = x[j] - delta + 2.0 * delta * frac;
                }
                inside += m.contains(y) ? 1 : 0;
            }
            best = std::max(best, static_cast<double>(inside) / static_cast<double>(total));
        }
        image.values[index] = best;
    }
    return image;
}

namespace {

// Mean wall time of `body`, repeated until at least `floor_seconds` elapsed
// so that microsecond cases are not dominated by clock noise.
template <class Body>
double time_it(Body&& body, double floor_seconds = 0.02) {
    std::size_t runs = 0;
    const auto start = std::chrono::steady_clock::now();
    double elapsed = 0.0;
    do {
        body();
        ++runs;
        elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    } while (elapsed < floor_seconds);
    return elapsed / static_cast<double>(runs);
}

}  // namespace

ExperimentReport run_bench(const BenchConfig& config) {
    ExperimentReport report;
    report.key_name = "case";
    const double extent = 10.0;
    for (std::size_t summands : config.summands) {
        std::mt19937_64 rng(mix_seed(config.seed, summands));
        Decomposition d;
        d.ambient_dim = 2;
        for (std::size_t i = 0; i < summands; ++i) d.intervals.push_back(random_staircase(rng, 2, 3, extent));
        for (std::size_t side : config.grids) {
            const std::string key = std::to_string(summands) + "x" + std::to_string(side);
            const GridSpec grid = GridSpec::planar(0.0, 0.0, extent, extent, side, side);
            double corner_total = 0.0;
            double corner_sup_volume = 0.0;
            for (PhiKind kind : {PhiKind::DiagonalLength, PhiKind::Volume, PhiKind::LargestRectangle}) {
                const PhiParams params{kind, config.delta};
                const std::string letter(1, phi_kind_letter(kind));
                double slowest = 0.0;
                if (!d.empty()) {
                    for (double p : {0.0, 1.0}) {
                        slowest = std::max(slowest, time_it([&] { (void)scdr_p(d, p, params, grid, config.workers); }));
                    }
                }
                const double sup_time = time_it([&] { (void)scdr_sup(d, params, grid, config.workers); });
                slowest = std::max(slowest, sup_time);
                if (kind == PhiKind::Volume) corner_sup_volume = sup_time;
                corner_total += slowest;
                report.add(key, "scdr_" + letter + "_seconds", slowest, 0, config.seed);
            }
            report.add(key, "mpl_seconds", time_it([&] { (void)mpl(d, 1, grid, config.workers); }), 0, config.seed);
            const double brute =
                time_it([&] { (void)brute_force_sup_volume(d, config.delta, grid, config.brute_samples); });
            report.add(key, "brute_b_seconds", brute, 0, config.seed);
            report.add(key, "corner_b_sup_seconds", corner_sup_volume, 0, config.seed);
            const double floor = 1e-9;
            report.add(key, "speedup_b", std::max(brute, floor) / std::max(corner_sup_volume, floor), 0, config.seed);
            report.add(key, "corner_all_seconds", corner_total, 0, config.seed);
        }
    }
    return report;
}

ExperimentReport run_instability(const InstabilityConfig& config) {
    ExperimentReport report;
    report.key_name = "epsilon";
    const Decomposition limit = bridged_squares(0.0);
    const GridSpec grid = GridSpec::planar(-0.5, -0.5, 2.5, 2.5, config.image_resolution, config.image_resolution);
    auto max_volume = [](const Decomposition& d) {
        double best = 0.0;
        for (const auto& m : d.intervals) {
            if (!m.is_zero()) best = std::max(best, support_volume(m, m.bounding_box()));
        }
        return best;
    };
    const double limit_volume = max_volume(limit);
    for (double eps : config.epsilons) {
        const Decomposition bridged = bridged_squares(eps);
        std::ostringstream key;
        key.precision(17);
        key << eps;
        report.add(key.str(), "mpi_proxy", std::abs(max_volume(bridged) - limit_volume), 0, 0);
        for (PhiKind kind : {PhiKind::DiagonalLength, PhiKind::Volume, PhiKind::LargestRectangle}) {
            const PhiParams params{kind, config.delta};
            const double dist = image_distance(scdr_sup(bridged, params, grid, config.workers),
                                               scdr_sup(limit, params, grid, config.workers), ImageNorm::LInf);
            report.add(key.str(), std::string("scdr_linf_") + phi_kind_letter(kind), dist, 0, 0);
        }
    }
    return report;
}

}  // namespace mpcorner
