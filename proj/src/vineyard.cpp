#include "mpcorner/vineyard.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mpcorner/distances.hpp"
#include "mpcorner/parallel.hpp"
#include "mpcorner/persistence.hpp"

namespace mpcorner {

std::vector<Point> antidiagonal_basepoints(const Box& bounds, std::size_t lines) {
    if (lines < 2) throw std::invalid_argument("at least 2 slicing lines are required");
    std::vector<Point> basepoints;
    basepoints.reserve(lines);
    for (std::size_t k = 0; k < lines; ++k) {
        const double s = static_cast<double>(k) / static_cast<double>(lines - 1);
        basepoints.push_back({bounds.lower[0] + s * (bounds.upper[0] - bounds.lower[0]),
                              bounds.upper[1] - s * (bounds.upper[1] - bounds.lower[1])});
    }
    return basepoints;
}

double antidiagonal_spacing(const Box& bounds, std::size_t lines) {
    if (lines < 2) throw std::invalid_argument("at least 2 slicing lines are required");
    const double steps = static_cast<double>(lines - 1);
    return std::max(bounds.upper[0] - bounds.lower[0], bounds.upper[1] - bounds.lower[1]) / steps;
}

Barcode slice_barcode(const BiFiltration& bifiltration, const Point& basepoint, const Box& bounds,
                      std::size_t degree) {
    const FilteredComplex1D slice = slice_to_1d(bifiltration, basepoint);
    Barcode bars = persistence_1d(slice, degree);
    const double exit = std::min(bounds.upper[0] - basepoint[0], bounds.upper[1] - basepoint[1]);
    Barcode kept;
    for (auto bar : bars) {
        if (std::isinf(bar.death)) bar.death = exit;
        if (bar.birth < bar.death) kept.push_back(bar);
    }
    return kept;
}

Decomposition vineyard_decompose(const BiFiltration& bifiltration, const VineyardOptions& options) {
    if (options.lines < 2) throw std::invalid_argument("at least 2 slicing lines are required");
    Decomposition result;
    result.ambient_dim = 2;
    result.degree = static_cast<int>(options.degree);
    if (bifiltration.values.empty()) return result;

    const Box bounds = bifiltration.value_bounds();
    const auto basepoints = antidiagonal_basepoints(bounds, options.lines);

    std::vector<Barcode> barcodes(basepoints.size());
    parallel_for(basepoints.size(), options.workers, [&](std::size_t k) {
        barcodes[k] = slice_barcode(bifiltration, basepoints[k], bounds, options.degree);
        // Longest bars first; ties by position.
        std::stable_sort(barcodes[k].begin(), barcodes[k].end(), [](const Bar& a, const Bar& b) {
            if (a.length() != b.length()) return a.length() > b.length();
            return a.birth < b.birth;
        });
    });

    struct Chain {
        std::vector<Point> births;
        std::vector<Point> deaths;
    };
    std::vector<Chain> chains;
    std::vector<std::size_t> previous_chain;  // chain index of each bar on the previous line

    for (std::size_t k = 0; k < basepoints.size(); ++k) {
        const Barcode& bars = barcodes[k];
        std::vector<std::size_t> current_chain(bars.size(), static_cast<std::size_t>(-1));
        if (k > 0) {
            const Barcode& before = barcodes[k - 1];
            const MatchingResult matching = barcode_bottleneck(before, bars);
            for (const auto& [i, j] : matching.pairs) {
                const double pair_cost = std::max(std::abs(before[i].birth - bars[j].birth),
                                                  std::abs(before[i].death - bars[j].death));
                if (pair_cost < 0.5 * before[i].length() && pair_cost < 0.5 * bars[j].length()) {
                    current_chain[j] = previous_chain[i];
                }
            }
        }
        const Point& y = basepoints[k];
        for (std::size_t j = 0; j < bars.size(); ++j) {
            if (current_chain[j] == static_cast<std::size_t>(-1)) {
                current_chain[j] = chains.size();
                chains.emplace_back();
            }
            Chain& chain = chains[current_chain[j]];
            chain.births.push_back({y[0] + bars[j].birth, y[1] + bars[j].birth});
            chain.deaths.push_back({y[0] + bars[j].death, y[1] + bars[j].death});
        }
        previous_chain = std::move(current_chain);
    }

    for (auto& chain : chains) {
        IntervalModule module(std::move(chain.births), std::move(chain.deaths));
        if (!module.is_zero()) result.intervals.push_back(std::move(module));
    }
    return result;
}

}  // namespace mpcorner
