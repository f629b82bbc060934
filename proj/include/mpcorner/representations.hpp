#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpcorner/core_model.hpp"
#include "mpcorner/invariants.hpp"

namespace mpcorner {

/// Raised when a representation is undefined for its input (e.g. all weights
/// vanish in a normalized weighted sum).
class DegenerateInputError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Regular evaluation grid. Grid points are cell centres; the flat index runs
/// with axis 0 fastest (x, then y, ...).
struct GridSpec {
    Point lower;
    Point upper;
    std::vector<std::size_t> resolution;

    /// Square grid helper for the 2-parameter case.
    static GridSpec planar(double x0, double y0, double x1, double y1, std::size_t width, std::size_t height);

    std::size_t dim() const { return lower.size(); }
    std::size_t size() const;
    double cell_volume() const;
    Point point(std::size_t flat_index) const;
    /// Throws std::invalid_argument unless lower < upper and all counts > 0.
    void validate() const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct GridImage {
    GridSpec grid;
    std::vector<double> values;
    std::map<std::string, std::string> metadata;

    double max_value() const;
};

enum class AggregateOp { Sum, Mean, Max, Min, KthMax };

struct TcdrParams {
    AggregateOp op = AggregateOp::Sum;
    std::size_t k = 1;  // rank for KthMax
    std::function<double(const IntervalModule&)> weight;
    std::function<double(const IntervalModule&, const Point&)> phi;
    /// Divide each weight by the sum of all weights before aggregating.
    bool normalize = false;
    /// When set, phi is known to vanish at x unless the box of this half-side
    /// around x meets the summand's corner bounding box (radius 0 means x
    /// itself must lie in the bounding box). Lets evaluation skip summands.
    std::optional<double> support_radius;
    std::size_t workers = 1;
};

/// op over summands of weight(M_i) * phi(M_i, x), at every grid point. The
/// summands are put in canonical order first, so results do not depend on the
/// order of `decomposition.intervals`.
GridImage tcdr(const Decomposition& decomposition, const TcdrParams& params, const GridSpec& grid);

/// Normalized weighted sum: sum_i w_i^p / (sum_j w_j^p) * phi_delta(M_i), with
/// uniform weights when p = 0.
GridImage scdr_p(const Decomposition& decomposition, double p, const PhiParams& phi_params, const GridSpec& grid,
                 std::size_t workers = 1);

/// Pointwise supremum of phi_delta over summands.
GridImage scdr_sup(const Decomposition& decomposition, const PhiParams& phi_params, const GridSpec& grid,
                   std::size_t workers = 1);

/// k-th multiparameter persistence landscape: k-th largest tent value of the
/// diagonal bars through each grid point.
GridImage mpl(const Decomposition& decomposition, std::size_t k, const GridSpec& grid, std::size_t workers = 1);

enum class ImageNorm { LInf, L2Squared };

/// Max absolute difference, or cell-volume weighted sum of squared
/// differences. Throws std::invalid_argument on grid mismatch.
double image_distance(const GridImage& a, const GridImage& b, ImageNorm norm);

/// Canonical lexicographic order on summands.
bool summand_less(const IntervalModule& a, const IntervalModule& b);

}  // namespace mpcorner
