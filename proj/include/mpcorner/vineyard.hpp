#pragma once

#include <cstddef>
#include <vector>

#include "mpcorner/core_model.hpp"
#include "mpcorner/filtration.hpp"

namespace mpcorner {

struct VineyardOptions {
    std::size_t degree = 1;
    std::size_t lines = 50;
    std::size_t workers = 1;
};

/// Basepoints of the slicing lines: `lines` points evenly spaced on the
/// antidiagonal of `bounds`, from (lower_x, upper_y) to (upper_x, lower_y).
std::vector<Point> antidiagonal_basepoints(const Box& bounds, std::size_t lines);

/// Largest per-axis distance between consecutive basepoints.
double antidiagonal_spacing(const Box& bounds, std::size_t lines);

/// Barcode of the bifiltration along the diagonal line through `basepoint`,
/// with infinite bars cut where the line leaves `bounds`.
Barcode slice_barcode(const BiFiltration& bifiltration, const Point& basepoint, const Box& bounds,
                      std::size_t degree);

/// Approximate interval decomposition: slices along diagonal lines, matches
/// bars of consecutive lines by bottleneck matching (a pair is kept only when
/// cheaper than leaving either bar unmatched), and turns each chain of
/// matched bars into one interval module whose corners are the bars'
/// endpoints. Throws std::invalid_argument when fewer than 2 lines are
/// requested.
Decomposition vineyard_decompose(const BiFiltration& bifiltration, const VineyardOptions& options);

}  // namespace mpcorner
