#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mpcorner/core_model.hpp"
#include "mpcorner/pointcloud.hpp"
#include "mpcorner/representations.hpp"

namespace mpcorner {

/// Simplices given by sorted vertex lists, each with the indices of its
/// codimension-1 faces. Faces always appear before their cofaces.
struct SimplicialComplex {
    std::vector<std::vector<std::size_t>> vertices;
    std::vector<std::vector<std::size_t>> faces;

    std::size_t size() const { return vertices.size(); }
    std::size_t dim(std::size_t simplex) const { return vertices[simplex].size() - 1; }

    /// Builds face indices from vertex lists. Throws std::invalid_argument if
    /// a face is missing or listed after its coface.
    static SimplicialComplex from_vertex_lists(std::vector<std::vector<std::size_t>> simplices);
};

/// One-critical 2-parameter filtration: one value in R^2 per simplex.
struct BiFiltration {
    SimplicialComplex complex;
    std::vector<std::array<double, 2>> values;
    GridSpec grid;  // vertex positions when built from a grid

    /// Componentwise bounds of all filtration values.
    Box value_bounds() const;
};

/// Scalar filtration sorted by (value, dimension, original index).
struct FilteredComplex1D {
    std::vector<std::size_t> dims;
    std::vector<std::vector<std::size_t>> faces;  // indices into this ordering
    std::vector<double> values;

    std::size_t size() const { return dims.size(); }

    /// Sorts `complex` by `values` and reindexes faces.
    static FilteredComplex1D sorted(const SimplicialComplex& complex, const std::vector<double>& values);
};

/// Freudenthal triangulation of the grid's vertices (cell centres). Vertex
/// value = (distance to the cloud, minus the density estimate); simplices
/// take the componentwise max over their vertices.
BiFiltration build_bifiltration(const PointCloud& cloud, const GridSpec& grid, double bandwidth);

/// Lower-star bifiltration of the Freudenthal triangulation from explicit
/// per-vertex values (x fastest, as in GridSpec).
BiFiltration grid_bifiltration(const GridSpec& grid, const std::vector<std::array<double, 2>>& vertex_values);

/// Restriction to the diagonal line basepoint + t*(1,1): each simplex enters
/// at t = max_i (f_i - y_i).
FilteredComplex1D slice_to_1d(const BiFiltration& bifiltration, const Point& basepoint);

}  // namespace mpcorner
