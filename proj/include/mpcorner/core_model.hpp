#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace mpcorner {

/// Thrown when points of different dimensions are combined.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A point of R^n in filtration units.
using Point = std::vector<double>;

/// Coordinatewise a <= b.
bool leq(const Point& a, const Point& b);

/// Axis-aligned box {z : lower <= z <= upper}.
struct Box {
    Point lower;
    Point upper;

    /// Hypersquare of half-side `delta` centred on `center`.
    static Box around(const Point& center, double delta);

    std::size_t dim() const { return lower.size(); }
    bool contains(const Point& y) const;
    double volume() const;
};

/// Interval module given by its birth (minimal) and death (maximal) corners.
///
/// The support is {y : some birth <= y and y <= some death}. Construction
/// canonicalizes the corner lists: dominated corners are dropped and the rest
/// sorted lexicographically. A presentation with no pair birth <= death is the
/// zero module and is stored with both lists empty.
class IntervalModule {
public:
    IntervalModule() = default;
    IntervalModule(std::vector<Point> births, std::vector<Point> deaths);

    /// Rectangle [lower, upper]; zero module when lower is not <= upper.
    static IntervalModule rectangle(const Point& lower, const Point& upper);

    const std::vector<Point>& births() const { return births_; }
    const std::vector<Point>& deaths() const { return deaths_; }

    bool is_zero() const { return births_.empty(); }
    bool is_rectangle() const { return births_.size() == 1 && deaths_.size() == 1; }
    /// Ambient dimension; 0 for the zero module.
    std::size_t dim() const { return births_.empty() ? 0 : births_.front().size(); }

    bool contains(const Point& y) const;

    /// Smallest box holding every corner. Requires a nonzero module.
    Box bounding_box() const;

    friend bool operator==(const IntervalModule&, const IntervalModule&) = default;

private:
    std::vector<Point> births_;
    std::vector<Point> deaths_;
};

/// Builds a module from raw corner lists. Same as the constructor; kept as a
/// named operation for call sites that re-canonicalize modified corners.
IntervalModule canonicalize(std::vector<Point> births, std::vector<Point> deaths);

/// Restriction of `module` to `box`: births pushed up onto the box, deaths
/// pushed down, out-of-range corners dropped. Returns the zero module when
/// the restriction is empty.
IntervalModule restrict_to_box(const IntervalModule& module, const Box& box);

/// One bar of a single-parameter barcode. `death` may be +infinity.
struct Bar {
    double birth = 0.0;
    double death = 0.0;

    double length() const { return death - birth; }
    friend bool operator==(const Bar&, const Bar&) = default;
};

using Barcode = std::vector<Bar>;

/// Line parameters of the restriction of `module` to the diagonal line
/// basepoint + t*(1,...,1). Empty when the module misses the line or the bar
/// would have zero length.
std::optional<Bar> restrict_to_diagonal_line(const IntervalModule& module, const Point& basepoint);

/// Finite direct sum of interval modules in one homology degree.
struct Decomposition {
    std::size_t ambient_dim = 2;
    int degree = 0;
    std::vector<IntervalModule> intervals;

    bool empty() const { return intervals.empty(); }
    std::size_t size() const { return intervals.size(); }

    /// Throws DimensionError if a nonzero summand has the wrong dimension.
    void validate() const;
};

/// Per-interval diagonal bars at `basepoint`, empty bars dropped.
Barcode fibered_barcode(const Decomposition& decomposition, const Point& basepoint);

/// Throws DimensionError unless a and b have equal size.
void require_same_dim(const Point& a, const Point& b);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace mpcorner
