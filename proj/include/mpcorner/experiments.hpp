#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mpcorner/core_model.hpp"
#include "mpcorner/invariants.hpp"
#include "mpcorner/pointcloud.hpp"
#include "mpcorner/representations.hpp"

namespace mpcorner {

/// Settings of the point cloud -> decomposition pipeline.
struct PipelineConfig {
    std::size_t resolution = 40;  // bifiltration grid vertices per axis
    double margin = 0.1;          // grid padding, as a fraction of the cloud's extent
    double bandwidth = 0.1;
    std::size_t lines = 40;
    std::size_t degree = 1;
    std::size_t workers = 1;
};

/// Square-ish grid over the cloud's bounding box, padded by `margin`.
GridSpec pipeline_grid(const PointCloud& cloud, const PipelineConfig& config);

/// load -> kde -> bifiltration -> vineyard decomposition, on `grid`.
Decomposition decompose_cloud(const PointCloud& cloud, const PipelineConfig& config, const GridSpec& grid);
Decomposition decompose_cloud(const PointCloud& cloud, const PipelineConfig& config);

/// Decomposition made of two unit squares meeting at (1,1), joined by a
/// square bridge of side epsilon into one interval when epsilon > 0. With
/// epsilon = 0 the squares are two separate summands.
Decomposition bridged_squares(double epsilon);

/// Random staircase interval in [0, extent]^dim with up to `max_corners`
/// birth and death corners.
IntervalModule random_staircase(std::mt19937_64& rng, std::size_t dim, std::size_t max_corners, double extent);

/// Mixes seeds for (seed, a, b) so that each experiment cell has its own stream.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

struct ReportRow {
    std::string key;
    std::string metric;
    double value = 0.0;
    std::size_t repetition = 0;
    std::uint64_t seed = 0;
};

struct ExperimentReport {
    std::string key_name;
    std::vector<ReportRow> rows;

    void add(std::string key, std::string metric, double value, std::size_t repetition, std::uint64_t seed);
    std::string to_csv() const;
    void write_csv(const std::filesystem::path& path) const;
    /// First value with the given key and metric.
    std::optional<double> find(const std::string& key, const std::string& metric) const;
};

/// Least-squares slope of log(y) against log(x). Empty when fewer than two
/// points, any value is nonpositive, or the fit is flat because every y is
/// equal (the not-a-fit case).
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct ConvergenceConfig {
    std::string generator = "annulus";  // annulus | circle | constant
    std::size_t base_size = 5000;
    std::vector<std::size_t> sizes{125, 250, 500, 1000, 2000};
    std::size_t repetitions = 5;
    std::uint64_t seed = 1;
    PhiParams phi{PhiKind::Volume, 0.1};
    std::size_t image_resolution = 50;
    PipelineConfig pipeline;
};

/// Distances of subsample representations to the largest-size target.
/// Rows: per (n, repetition) "linf" and "l2sq"; per n "mean_linf" and
/// "mean_l2sq"; key "fit" rows "slope_linf" and "slope_l2sq" (NaN when
/// not a fit). The slope uses every size below the largest.
ExperimentReport run_convergence(const ConvergenceConfig& config);

struct BenchConfig {
    std::vector<std::size_t> summands{1, 500};
    std::vector<std::size_t> grids{2, 50};
    std::uint64_t seed = 1;
    double delta = 0.5;
    std::size_t brute_samples = 8;  // membership samples per axis and cell
    std::size_t workers = 1;
};

/// Wall-clock seconds for corner-based representations versus the dense
/// membership-sampling baseline. Keys are "<summands>x<grid>".
ExperimentReport run_bench(const BenchConfig& config);

/// Volume-based phi (b) supremum representation computed by counting
/// membership of s^n sample points per box. Dense baseline for the benchmark.
GridImage brute_force_sup_volume(const Decomposition& decomposition, double delta, const GridSpec& grid,
                                 std::size_t samples_per_axis);

struct InstabilityConfig {
    std::vector<double> epsilons{0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001};
    double delta = 0.1;
    std::size_t image_resolution = 50;
    std::size_t workers = 1;
};

/// Per epsilon: "mpi_proxy" = |max_i vol(M_i^eps) - max_i vol(M_i^0)| and
/// "scdr_linf_<phi>" = sup-norm distance of the supremum representations.
ExperimentReport run_instability(const InstabilityConfig& config);

}  // namespace mpcorner
