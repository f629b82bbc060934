#pragma once

#include <cstddef>

#include "mpcorner/core_model.hpp"

namespace mpcorner {

/// Local interval representation used by the stable representations.
enum class PhiKind {
    DiagonalLength,    // (a) weight of the restriction, over delta
    Volume,            // (b) support volume inside the box, over (2 delta)^n
    LargestRectangle,  // (c) largest inscribed rectangle inside the box, over (2 delta)^n
};

struct PhiParams {
    PhiKind kind = PhiKind::Volume;
    double delta = 1.0;
};

/// Parses "a", "b" or "c".
PhiKind parse_phi_kind(char letter);
char phi_kind_letter(PhiKind kind);

/// Controls the exact/quadrature switch of support_volume.
struct VolumeOptions {
    std::size_t max_exact_corners = 16;    // |births| + |deaths| above this uses quadrature
    std::size_t quadrature_resolution = 64;  // midpoint cells per offset axis
};

/// Half the largest diagonal segment fitting in the support, which equals the
/// interleaving distance to the zero module: max over corner pairs of
/// 1/2 min_j (d_j - b_j)_+.
double weight(const IntervalModule& module);

/// Volume of the largest rectangle inside the support: max over corner pairs
/// of prod_j (d_j - b_j)_+.
double largest_rectangle_volume(const IntervalModule& module);

/// Exact volume of supp(module) intersected with `box`, by inclusion-exclusion
/// over corner subsets. Switches to diagonal-line quadrature above
/// options.max_exact_corners.
double support_volume(const IntervalModule& module, const Box& box, const VolumeOptions& options = {});

/// Inclusion-exclusion volume regardless of corner count.
double support_volume_exact(const IntervalModule& module, const Box& box);

/// Midpoint-rule integral of the diagonal bar length over the offsets
/// {y : y_n = 0}, with `resolution` cells per offset axis. Exact for n = 1.
double support_volume_quadrature(const IntervalModule& module, const Box& box, std::size_t resolution);

/// phi_delta(module)(x), clipped to [0, 1]. Throws std::invalid_argument when
/// delta <= 0.
double phi(const IntervalModule& module, const Point& x, const PhiParams& params,
           const VolumeOptions& options = {});

/// Weight of restrict_to_box(module, box) without materializing the restriction.
double restricted_weight(const IntervalModule& module, const Box& box);

/// Largest rectangle volume of restrict_to_box(module, box), same shortcut.
double restricted_largest_rectangle(const IntervalModule& module, const Box& box);

}  // namespace mpcorner
