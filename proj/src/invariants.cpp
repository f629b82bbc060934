#include "mpcorner/invariants.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mpcorner {

PhiKind parse_phi_kind(char letter) {
    switch (letter) {
        case 'a': return PhiKind::DiagonalLength;
        case 'b': return PhiKind::Volume;
        case 'c': return PhiKind::LargestRectangle;
        default: throw std::invalid_argument(std::string("unknown phi kind '") + letter + "'");
    }
}

char phi_kind_letter(PhiKind kind) {
    switch (kind) {
        case PhiKind::DiagonalLength: return 'a';
        case PhiKind::Volume: return 'b';
        case PhiKind::LargestRectangle: return 'c';
    }
    return '?';
}

namespace {

double half_min_gap(const Point& b, const Point& d) {
    double gap = kInfinity;
    for (std::size_t j = 0; j < b.size(); ++j) gap = std::min(gap, d[j] - b[j]);
    return 0.5 * std::max(0.0, gap);
}

double box_product(const Point& b, const Point& d) {
    double v = 1.0;
    for (std::size_t j = 0; j < b.size(); ++j) v *= std::max(0.0, d[j] - b[j]);
    return v;
}

// Visits every (pushed birth, pushed death) pair of the restriction of
// `module` to `box`, without canonicalizing. Dominated or unpaired corners
// only produce pairs that never beat the canonical maximum.
template <typename PairValue>
double max_over_restricted_pairs(const IntervalModule& module, const Box& box, PairValue value) {
    if (module.is_zero()) return 0.0;
    require_same_dim(module.births().front(), box.lower);
    const std::size_t n = box.dim();
    thread_local Point b2, d2;
    b2.resize(n);
    d2.resize(n);
    double best = 0.0;
    for (const auto& b : module.births()) {
        bool inside = true;
        for (std::size_t j = 0; j < n && inside; ++j) inside = b[j] <= box.upper[j];
        if (!inside) continue;
        for (std::size_t j = 0; j < n; ++j) b2[j] = std::max(b[j], box.lower[j]);
        for (const auto& d : module.deaths()) {
            bool above = true;
            for (std::size_t j = 0; j < n && above; ++j) above = d[j] >= box.lower[j];
            if (!above) continue;
            for (std::size_t j = 0; j < n; ++j) d2[j] = std::min(d[j], box.upper[j]);
            best = std::max(best, value(b2, d2));
        }
    }
    return best;
}

}  // namespace

double weight(const IntervalModule& module) {
    double best = 0.0;
    for (const auto& b : module.births()) {
        for (const auto& d : module.deaths()) best = std::max(best, half_min_gap(b, d));
    }
    return best;
}

double largest_rectangle_volume(const IntervalModule& module) {
    double best = 0.0;
    for (const auto& b : module.births()) {
        for (const auto& d : module.deaths()) best = std::max(best, box_product(b, d));
    }
    return best;
}

double restricted_weight(const IntervalModule& module, const Box& box) {
    return max_over_restricted_pairs(module, box, half_min_gap);
}

double restricted_largest_rectangle(const IntervalModule& module, const Box& box) {
    return max_over_restricted_pairs(module, box, box_product);
}

double support_volume_exact(const IntervalModule& module, const Box& box) {
    if (module.is_zero()) return 0.0;
    require_same_dim(module.births().front(), box.lower);
    const std::size_t n = box.dim();
    const auto& births = module.births();
    const auto& deaths = module.deaths();
    if (births.size() >= 31 || deaths.size() >= 31) {
        throw std::length_error("too many corners for inclusion-exclusion");
    }

    // For each nonempty subset S of births: sign (-1)^{|S|+1} and the join of S
    // raised to the box's lower corner. Same for deaths with meets. Extremes
    // are stored flat, n values per subset.
    thread_local std::vector<double> lows, highs, low_signs, high_signs;
    auto expand = [n](const std::vector<Point>& corners, const Point& clip, bool join, std::vector<double>& extreme,
                      std::vector<double>& sign) {
        const std::size_t count = std::size_t{1} << corners.size();
        extreme.resize(count * n);
        sign.resize(count);
        std::copy(clip.begin(), clip.end(), extreme.begin());
        sign[0] = -1.0;
        for (std::size_t mask = 1; mask < count; ++mask) {
            const std::size_t low = mask & (~mask + 1);
            const std::size_t rest = mask ^ low;
            const std::size_t bit = static_cast<std::size_t>(std::countr_zero(low));
            const double* base = &extreme[rest * n];
            double* out = &extreme[mask * n];
            for (std::size_t j = 0; j < n; ++j) {
                out[j] = join ? std::max(base[j], corners[bit][j]) : std::min(base[j], corners[bit][j]);
            }
            sign[mask] = -sign[rest];
        }
        return count;
    };
    const std::size_t low_count = expand(births, box.lower, true, lows, low_signs);
    const std::size_t high_count = expand(deaths, box.upper, false, highs, high_signs);

    double total = 0.0;
    for (std::size_t s = 1; s < low_count; ++s) {
        const double* lo = &lows[s * n];
        for (std::size_t t = 1; t < high_count; ++t) {
            const double* hi = &highs[t * n];
            double v = 1.0;
            for (std::size_t j = 0; j < n && v > 0.0; ++j) v *= std::max(0.0, hi[j] - lo[j]);
            if (v > 0.0) total += low_signs[s] * high_signs[t] * v;
        }
    }
    return std::max(0.0, total);
}

double support_volume_quadrature(const IntervalModule& module, const Box& box, std::size_t resolution) {
    if (module.is_zero()) return 0.0;
    require_same_dim(module.births().front(), box.lower);
    if (resolution == 0) throw std::invalid_argument("quadrature resolution must be positive");
    const std::size_t n = box.dim();
    const IntervalModule clipped = restrict_to_box(module, box);
    if (clipped.is_zero()) return 0.0;

    // Offsets y with y_{n-1} = 0; the line y + t*1 meets the box only when
    // y_i lies in [lower_i - upper_{n-1}, upper_i - lower_{n-1}].
    std::vector<double> lo(n - 1), step(n - 1);
    double cell = 1.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        lo[i] = box.lower[i] - box.upper[n - 1];
        step[i] = (box.upper[i] - box.lower[n - 1] - lo[i]) / static_cast<double>(resolution);
        cell *= step[i];
    }
    std::size_t total_cells = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) total_cells *= resolution;

    Point y(n, 0.0);
    double sum = 0.0;
    for (std::size_t flat = 0; flat < total_cells; ++flat) {
        std::size_t rem = flat;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            y[i] = lo[i] + (static_cast<double>(rem % resolution) + 0.5) * step[i];
            rem /= resolution;
        }
        if (auto bar = restrict_to_diagonal_line(clipped, y)) sum += bar->length();
    }
    return sum * cell;
}

double support_volume(const IntervalModule& module, const Box& box, const VolumeOptions& options) {
    if (module.is_zero()) return 0.0;
    const IntervalModule clipped = restrict_to_box(module, box);
    if (clipped.is_zero()) return 0.0;
    if (clipped.births().size() + clipped.deaths().size() > options.max_exact_corners) {
        return support_volume_quadrature(clipped, box, options.quadrature_resolution);
    }
    return support_volume_exact(clipped, box);
}

double phi(const IntervalModule& module, const Point& x, const PhiParams& params, const VolumeOptions& options) {
    if (!(params.delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (module.is_zero()) return 0.0;
    require_same_dim(module.births().front(), x);
    const Box window = Box::around(x, params.delta);
    const double side = 2.0 * params.delta;
    const double cube = std::pow(side, static_cast<double>(module.dim()));
    double value = 0.0;
    switch (params.kind) {
        case PhiKind::DiagonalLength: value = restricted_weight(module, window) / params.delta; break;
        case PhiKind::Volume: value = support_volume(module, window, options) / cube; break;
        case PhiKind::LargestRectangle: value = restricted_largest_rectangle(module, window) / cube; break;
    }
    return std::clamp(value, 0.0, 1.0);
}

}  // namespace mpcorner
