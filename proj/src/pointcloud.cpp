#include "mpcorner/pointcloud.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace mpcorner {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        const auto first = field.find_first_not_of(" \t\r");
        const auto last = field.find_last_not_of(" \t\r");
        fields.push_back(first == std::string::npos ? std::string{} : field.substr(first, last - first + 1));
    }
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::optional<double> parse_number(const std::string& token) {
    if (token.empty()) return std::nullopt;
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || errno == ERANGE) return std::nullopt;
    return value;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

}  // namespace

PointCloud parse_pointcloud(const std::string& text) {
    PointCloud cloud;
    std::istringstream in(text);
    std::string line;
    std::size_t line_number = 0;
    bool first_content = true;
    std::optional<std::size_t> label_column;
    std::size_t columns = 0;

    while (std::getline(in, line)) {
        ++line_number;
        if (blank(line) || line.front() == '#') continue;
        const auto fields = split_csv_line(line);
        if (first_content) {
            first_content = false;
            const bool numeric = std::all_of(fields.begin(), fields.end(),
                                             [](const std::string& f) { return parse_number(f).has_value(); });
            if (!numeric) {
                for (std::size_t i = 0; i < fields.size(); ++i) {
                    if (fields[i] == "label") label_column = i;
                }
                columns = fields.size();
                continue;
            }
        }
        if (columns == 0) columns = fields.size();
        if (fields.size() != columns) {
            throw InputError("line " + std::to_string(line_number) + ": expected " + std::to_string(columns) +
                             " fields, found " + std::to_string(fields.size()));
        }
        Point p;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (label_column && i == *label_column) {
                cloud.labels.push_back(fields[i]);
                continue;
            }
            const auto value = parse_number(fields[i]);
            if (!value) {
                throw InputError("line " + std::to_string(line_number) + ": cannot parse '" + fields[i] +
                                 "' as a number");
            }
            if (!std::isfinite(*value)) {
                throw InputError("line " + std::to_string(line_number) + ": non-finite coordinate");
            }
            p.push_back(*value);
        }
        if (p.empty()) throw InputError("line " + std::to_string(line_number) + ": no coordinates");
        cloud.points.push_back(std::move(p));
    }
    if (cloud.points.empty()) throw InputError("point cloud is empty");
    return cloud;
}

PointCloud load_pointcloud(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_pointcloud(buffer.str());
}

void save_pointcloud(const PointCloud& cloud, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out.precision(17);
    for (const auto& p : cloud.points) {
        for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "," : "") << p[i];
        out << '\n';
    }
}

std::vector<double> kde(const PointCloud& cloud, double bandwidth, const std::vector<Point>& queries) {
    if (!(bandwidth > 0.0)) throw std::invalid_argument("kde bandwidth must be positive");
    if (cloud.points.empty()) throw std::invalid_argument("kde of an empty cloud");
    const std::size_t dim = cloud.dim();
    const double norm = 1.0 / (static_cast<double>(cloud.size()) *
                               std::pow(2.0 * std::numbers::pi, 0.5 * static_cast<double>(dim)) *
                               std::pow(bandwidth, static_cast<double>(dim)));
    const double scale = 1.0 / (2.0 * bandwidth * bandwidth);
    std::vector<double> density(queries.size(), 0.0);
    for (std::size_t q = 0; q < queries.size(); ++q) {
        require_same_dim(queries[q], cloud.points.front());
        double sum = 0.0;
        for (const auto& x : cloud.points) {
            double sq = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                const double d = queries[q][i] - x[i];
                sq += d * d;
            }
            sum += std::exp(-sq * scale);
        }
        density[q] = norm * sum;
    }
    return density;
}

std::vector<double> distance_to_cloud(const PointCloud& cloud, const std::vector<Point>& queries) {
    if (cloud.points.empty()) throw std::invalid_argument("distance to an empty cloud");
    std::vector<double> result(queries.size());
    for (std::size_t q = 0; q < queries.size(); ++q) {
        require_same_dim(queries[q], cloud.points.front());
        double best = kInfinity;
        for (const auto& x : cloud.points) {
            double sq = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double d = queries[q][i] - x[i];
                sq += d * d;
            }
            best = std::min(best, sq);
        }
        result[q] = std::sqrt(best);
    }
    return result;
}

PointCloud annulus_nonuniform(std::size_t n, std::uint64_t seed, const AnnulusShape& shape) {
    if (n == 0) throw std::invalid_argument("annulus_nonuniform: n must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r0 = shape.inner_radius * shape.inner_radius;
    const double r1 = shape.outer_radius * shape.outer_radius;
    PointCloud cloud;
    cloud.points.reserve(n);
    while (cloud.points.size() < n) {
        const double theta = 2.0 * std::numbers::pi * unit(rng);
        const double accept = unit(rng) * (1.0 + std::abs(shape.contrast));
        const double radius = std::sqrt(r0 + (r1 - r0) * unit(rng));
        if (accept > 1.0 + shape.contrast * std::cos(theta)) continue;
        cloud.points.push_back({radius * std::cos(theta), radius * std::sin(theta)});
    }
    return cloud;
}

PointCloud circle_with_outliers(std::size_t n, std::size_t n_outliers, std::uint64_t seed, double noise) {
    if (n == 0) throw std::invalid_argument("circle_with_outliers: n must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> radial(0.0, noise);
    PointCloud cloud;
    for (std::size_t i = 0; i < n; ++i) {
        const double theta = 2.0 * std::numbers::pi * unit(rng);
        const double r = 1.0 + radial(rng);
        cloud.points.push_back({r * std::cos(theta), r * std::sin(theta)});
    }
    for (std::size_t i = 0; i < n_outliers; ++i) {
        cloud.points.push_back({-1.5 + 3.0 * unit(rng), -1.5 + 3.0 * unit(rng)});
    }
    return cloud;
}

PointCloud subsample(const PointCloud& cloud, std::size_t count, std::uint64_t seed) {
    if (count > cloud.size()) throw std::invalid_argument("subsample larger than the cloud");
    std::vector<std::size_t> order(cloud.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    // Partial Fisher-Yates; std::shuffle's draw pattern is not pinned down.
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (cloud.size() - i));
        std::swap(order[i], order[j]);
    }
    PointCloud out;
    for (std::size_t i = 0; i < count; ++i) {
        out.points.push_back(cloud.points[order[i]]);
        if (!cloud.labels.empty()) out.labels.push_back(cloud.labels[order[i]]);
    }
    return out;
}

}  // namespace mpcorner
