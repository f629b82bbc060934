#include "mpcorner/filtration.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace mpcorner {

SimplicialComplex SimplicialComplex::from_vertex_lists(std::vector<std::vector<std::size_t>> simplices) {
    SimplicialComplex complex;
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (auto& s : simplices) {
        if (s.empty()) throw std::invalid_argument("empty simplex");
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw std::invalid_argument("repeated vertex");
        std::vector<std::size_t> faces;
        if (s.size() > 1) {
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                std::vector<std::size_t> face;
                for (std::size_t i = 0; i < s.size(); ++i) {
                    if (i != drop) face.push_back(s[i]);
                }
                const auto it = index.find(face);
                if (it == index.end()) throw std::invalid_argument("face missing or listed after its coface");
                faces.push_back(it->second);
            }
        }
        if (!index.emplace(s, complex.vertices.size()).second) throw std::invalid_argument("duplicate simplex");
        complex.vertices.push_back(s);
        complex.faces.push_back(std::move(faces));
    }
    return complex;
}

Box BiFiltration::value_bounds() const {
    if (values.empty()) throw std::logic_error("bounds of an empty bifiltration");
    Box box{{values[0][0], values[0][1]}, {values[0][0], values[0][1]}};
    for (const auto& v : values) {
        for (std::size_t i = 0; i < 2; ++i) {
            box.lower[i] = std::min(box.lower[i], v[i]);
            box.upper[i] = std::max(box.upper[i], v[i]);
        }
    }
    return box;
}

FilteredComplex1D FilteredComplex1D::sorted(const SimplicialComplex& complex, const std::vector<double>& values) {
    if (values.size() != complex.size()) throw std::invalid_argument("one value per simplex required");
    std::vector<std::size_t> order(complex.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (values[a] != values[b]) return values[a] < values[b];
        if (complex.dim(a) != complex.dim(b)) return complex.dim(a) < complex.dim(b);
        return a < b;
    });
    std::vector<std::size_t> position(complex.size());
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;

    FilteredComplex1D out;
    out.dims.reserve(order.size());
    out.faces.reserve(order.size());
    out.values.reserve(order.size());
    for (std::size_t s : order) {
        out.dims.push_back(complex.dim(s));
        std::vector<std::size_t> faces;
        faces.reserve(complex.faces[s].size());
        for (std::size_t f : complex.faces[s]) faces.push_back(position[f]);
        std::sort(faces.begin(), faces.end());
        out.faces.push_back(std::move(faces));
        out.values.push_back(values[s]);
    }
    return out;
}

BiFiltration grid_bifiltration(const GridSpec& grid, const std::vector<std::array<double, 2>>& vertex_values) {
    grid.validate();
    if (grid.dim() != 2) throw std::invalid_argument("bifiltration grid must be 2-dimensional");
    const std::size_t width = grid.resolution[0];
    const std::size_t height = grid.resolution[1];
    if (width < 2 || height < 2) throw std::invalid_argument("bifiltration grid needs at least 2x2 vertices");
    if (vertex_values.size() != width * height) throw std::invalid_argument("one value pair per grid vertex");

    BiFiltration bif;
    bif.grid = grid;
    auto& cx = bif.complex;
    auto vertex = [width](std::size_t i, std::size_t j) { return j * width + i; };
    auto add = [&](std::vector<std::size_t> verts, std::vector<std::size_t> faces) {
        std::array<double, 2> value{-kInfinity, -kInfinity};
        for (std::size_t v : verts) {
            value[0] = std::max(value[0], vertex_values[v][0]);
            value[1] = std::max(value[1], vertex_values[v][1]);
        }
        cx.vertices.push_back(std::move(verts));
        cx.faces.push_back(std::move(faces));
        bif.values.push_back(value);
        return cx.vertices.size() - 1;
    };

    for (std::size_t v = 0; v < width * height; ++v) add({v}, {});

    // Edge indices: horizontal (i,j)-(i+1,j), vertical (i,j)-(i,j+1),
    // diagonal (i,j)-(i+1,j+1).
    std::vector<std::size_t> horizontal(width * height), vertical(width * height), diagonal(width * height);
    for (std::size_t j = 0; j < height; ++j) {
        for (std::size_t i = 0; i < width; ++i) {
            const std::size_t a = vertex(i, j);
            if (i + 1 < width) horizontal[a] = add({a, vertex(i + 1, j)}, {a, vertex(i + 1, j)});
            if (j + 1 < height) vertical[a] = add({a, vertex(i, j + 1)}, {a, vertex(i, j + 1)});
            if (i + 1 < width && j + 1 < height) {
                diagonal[a] = add({a, vertex(i + 1, j + 1)}, {a, vertex(i + 1, j + 1)});
            }
        }
    }
    for (std::size_t j = 0; j + 1 < height; ++j) {
        for (std::size_t i = 0; i + 1 < width; ++i) {
            const std::size_t a = vertex(i, j);
            const std::size_t right = vertex(i + 1, j);
            const std::size_t up = vertex(i, j + 1);
            const std::size_t corner = vertex(i + 1, j + 1);
            add({a, right, corner}, {horizontal[a], vertical[right], diagonal[a]});
            add({a, up, corner}, {vertical[a], horizontal[up], diagonal[a]});
        }
    }
    // Vertex lists are kept sorted, matching from_vertex_lists.
    for (auto& verts : cx.vertices) std::sort(verts.begin(), verts.end());
    return bif;
}

BiFiltration build_bifiltration(const PointCloud& cloud, const GridSpec& grid, double bandwidth) {
    grid.validate();
    if (cloud.dim() != 2) throw std::invalid_argument("bifiltration requires a planar point cloud");
    std::vector<Point> nodes(grid.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = grid.point(i);
    const auto dist = distance_to_cloud(cloud, nodes);
    const auto density = kde(cloud, bandwidth, nodes);
    std::vector<std::array<double, 2>> values(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) values[i] = {dist[i], -density[i]};
    return grid_bifiltration(grid, values);
}

FilteredComplex1D slice_to_1d(const BiFiltration& bifiltration, const Point& basepoint) {
    if (basepoint.size() != 2) throw DimensionError("slicing basepoint must be in R^2");
    std::vector<double> t(bifiltration.values.size());
    for (std::size_t s = 0; s < t.size(); ++s) {
        t[s] = std::max(bifiltration.values[s][0] - basepoint[0], bifiltration.values[s][1] - basepoint[1]);
    }
    return FilteredComplex1D::sorted(bifiltration.complex, t);
}

}  // namespace mpcorner
