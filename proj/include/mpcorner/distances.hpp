#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mpcorner/core_model.hpp"

namespace mpcorner {

/// Raised by rectangle-only distances when a summand has several corners.
class NotRectangleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct MatchingResult {
    double cost = 0.0;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::size_t> unmatched_left;
    std::vector<std::size_t> unmatched_right;
};

/// Minimizes the largest cost of a partial matching between two families.
/// pair_cost[i][j] is the cost of matching left i with right j; unmatched
/// items pay their own cost. Left items are served in order of decreasing
/// unmatched cost and prefer their cheapest partners, which makes the
/// returned matching deterministic.
MatchingResult bottleneck_matching(const std::vector<std::vector<double>>& pair_cost,
                                   const std::vector<double>& unmatched_left,
                                   const std::vector<double>& unmatched_right);

/// d_I(M, 0); identical to weight().
double interleaving_to_zero(const IntervalModule& module);

/// Interleaving distance between two rectangle modules (zero modules are
/// accepted as the empty rectangle).
double interleaving_rect(const IntervalModule& a, const IntervalModule& b);

/// True iff the rectangles a and b are epsilon-interleaved: both are
/// epsilon-close to zero, or both corner pairs are epsilon-close.
bool interleaving_oracle_rect(const IntervalModule& a, const IntervalModule& b, double epsilon);

/// Bottleneck distance between rectangle decompositions.
MatchingResult bottleneck(const Decomposition& a, const Decomposition& b);

/// One-parameter bottleneck distance between barcodes (pair cost = largest
/// endpoint difference, unmatched cost = half the bar length).
MatchingResult barcode_bottleneck(const Barcode& a, const Barcode& b);

}  // namespace mpcorner
