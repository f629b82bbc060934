#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpcorner/core_model.hpp"

namespace mpcorner {

/// Malformed or unreadable input data. The message names the offending line
/// when there is one.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PointCloud {
    std::vector<Point> points;
    std::vector<std::string> labels;  // empty, or one per point

    std::size_t size() const { return points.size(); }
    std::size_t dim() const { return points.empty() ? 0 : points.front().size(); }
};

/// Reads one point per CSV row. A first row that is not numeric is taken as a
/// header; a header column named "label" is read as per-point labels.
PointCloud load_pointcloud(const std::filesystem::path& path);
PointCloud parse_pointcloud(const std::string& text);
void save_pointcloud(const PointCloud& cloud, const std::filesystem::path& path);

/// Gaussian kernel density estimate with bandwidth h at each query point.
std::vector<double> kde(const PointCloud& cloud, double bandwidth, const std::vector<Point>& queries);

/// Euclidean distance from each query to its nearest cloud point.
std::vector<double> distance_to_cloud(const PointCloud& cloud, const std::vector<Point>& queries);

/// Annulus whose angular density varies as 1 + contrast*cos(theta).
struct AnnulusShape {
    double inner_radius = 0.5;
    double outer_radius = 1.0;
    double contrast = 0.8;
};

PointCloud annulus_nonuniform(std::size_t n, std::uint64_t seed, const AnnulusShape& shape = {});

/// n points near the unit circle (radial Gaussian noise) plus n_outliers
/// uniform points in [-1.5, 1.5]^2.
PointCloud circle_with_outliers(std::size_t n, std::size_t n_outliers, std::uint64_t seed, double noise = 0.05);

/// Deterministic subsample of `count` points without replacement.
PointCloud subsample(const PointCloud& cloud, std::size_t count, std::uint64_t seed);

}  // namespace mpcorner
