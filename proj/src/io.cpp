#include "mpcorner/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mpcorner {

using nlohmann::json;

namespace {

json corners_to_json(const std::vector<Point>& corners) {
    json out = json::array();
    for (const auto& c : corners) {
        json point = json::array();
        for (double v : c) point.push_back(std::isinf(v) ? std::copysign(kInfinitySentinel, v) : v);
        out.push_back(std::move(point));
    }
    return out;
}

std::vector<Point> corners_from_json(const json& value, std::size_t dim, const char* what) {
    if (!value.is_array()) throw InputError(std::string(what) + " must be an array of points");
    std::vector<Point> corners;
    for (const auto& p : value) {
        if (!p.is_array() || p.size() != dim) {
            throw InputError(std::string(what) + ": every corner needs " + std::to_string(dim) + " coordinates");
        }
        Point point;
        for (const auto& c : p) {
            if (!c.is_number()) throw InputError(std::string(what) + ": coordinates must be numbers");
            point.push_back(c.get<double>());
        }
        corners.push_back(std::move(point));
    }
    return corners;
}

}  // namespace

std::string decomposition_to_json(const Decomposition& decomposition) {
    json out;
    out["dim"] = decomposition.ambient_dim;
    out["degree"] = decomposition.degree;
    json intervals = json::array();
    for (const auto& m : decomposition.intervals) {
        intervals.push_back({{"births", corners_to_json(m.births())}, {"deaths", corners_to_json(m.deaths())}});
    }
    out["intervals"] = std::move(intervals);
    out["metadata"] = {{"infinite_sentinel", kInfinitySentinel}};
    return out.dump(2);
}

Decomposition decomposition_from_json(const std::string& text) {
    json in;
    try {
        in = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    if (!in.is_object()) throw InputError("decomposition JSON must be an object");
    if (!in.contains("dim") || !in["dim"].is_number_unsigned() || in["dim"].get<std::size_t>() == 0) {
        throw InputError("decomposition JSON: \"dim\" must be a positive integer");
    }
    if (!in.contains("intervals") || !in["intervals"].is_array()) {
        throw InputError("decomposition JSON: \"intervals\" must be an array");
    }
    Decomposition d;
    d.ambient_dim = in["dim"].get<std::size_t>();
    if (in.contains("degree")) {
        if (!in["degree"].is_number_unsigned()) throw InputError("decomposition JSON: bad \"degree\"");
        d.degree = in["degree"].get<int>();
    }
    for (const auto& item : in["intervals"]) {
        if (!item.is_object() || !item.contains("births") || !item.contains("deaths")) {
            throw InputError("decomposition JSON: each interval needs \"births\" and \"deaths\"");
        }
        auto births = corners_from_json(item["births"], d.ambient_dim, "births");
        auto deaths = corners_from_json(item["deaths"], d.ambient_dim, "deaths");
        try {
            d.intervals.emplace_back(std::move(births), std::move(deaths));
        } catch (const std::invalid_argument& e) {
            throw InputError(std::string("decomposition JSON: ") + e.what());
        }
    }
    return d;
}

Decomposition load_decomposition(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return decomposition_from_json(buffer.str());
}

void save_decomposition(const Decomposition& decomposition, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << decomposition_to_json(decomposition) << '\n';
}

void write_image_csv(const GridImage& image, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    const std::size_t n = image.grid.dim();
    if (n == 2) {
        out << "x,y,value\n";
    } else {
        for (std::size_t i = 0; i < n; ++i) out << 'x' << i << ',';
        out << "value\n";
    }
    out.precision(17);
    for (std::size_t i = 0; i < image.values.size(); ++i) {
        const Point x = image.grid.point(i);
        for (double c : x) out << c << ',';
        out << image.values[i] << '\n';
    }
}

void write_image_pgm(const GridImage& image, const std::filesystem::path& path) {
    if (image.grid.dim() != 2) throw std::invalid_argument("PGM export needs a planar image");
    const std::size_t width = image.grid.resolution[0];
    const std::size_t height = image.grid.resolution[1];
    double lo = 0.0, hi = 0.0;
    if (!image.values.empty()) {
        const auto [mn, mx] = std::minmax_element(image.values.begin(), image.values.end());
        lo = *mn;
        hi = *mx;
    }
    const double range = hi - lo;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << "P5\n" << width << ' ' << height << "\n65535\n";
    for (std::size_t row = 0; row < height; ++row) {
        const std::size_t j = height - 1 - row;
        for (std::size_t i = 0; i < width; ++i) {
            const double v = image.values[j * width + i];
            const double scaled = range > 0.0 ? (v - lo) / range : 0.0;
            const auto level = static_cast<std::uint16_t>(std::lround(std::clamp(scaled, 0.0, 1.0) * 65535.0));
            const char bytes[2] = {static_cast<char>(level >> 8), static_cast<char>(level & 0xff)};
            out.write(bytes, 2);
        }
    }

    std::ofstream side(path.string() + ".txt");
    if (!side) throw InputError("cannot write " + path.string() + ".txt");
    side.precision(17);
    side << "min=" << lo << "\nmax=" << hi << "\nscale=value = min + level/65535 * (max - min)\n";
    side << "x_range=" << image.grid.lower[0] << ',' << image.grid.upper[0] << '\n';
    side << "y_range=" << image.grid.lower[1] << ',' << image.grid.upper[1] << '\n';
    side << "orientation=top row is largest y\n";
    for (const auto& [key, value] : image.metadata) side << key << '=' << value << '\n';
}

}  // namespace mpcorner
