#include "mpcorner/distances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mpcorner/invariants.hpp"

namespace mpcorner {

namespace {

constexpr std::size_t kFree = static_cast<std::size_t>(-1);

// Bipartite graph restricted to edges of cost <= threshold, with the matching
// state used by the augmenting-path searches.
class ThresholdMatcher {
public:
    ThresholdMatcher(const std::vector<std::vector<double>>& cost, std::size_t right_count, double threshold,
                     const std::vector<std::size_t>& right_order)
        : left_adj_(cost.size()), right_adj_(right_count) {
        for (std::size_t i = 0; i < cost.size(); ++i) {
            for (std::size_t j : right_order) {
                if (cost[i][j] <= threshold) left_adj_[i].push_back(j);
            }
            std::stable_sort(left_adj_[i].begin(), left_adj_[i].end(),
                             [&](std::size_t x, std::size_t y) { return cost[i][x] < cost[i][y]; });
            for (std::size_t j : left_adj_[i]) right_adj_[j].push_back(i);
        }
        left_mate_.assign(left_adj_.size(), kFree);
        right_mate_.assign(right_adj_.size(), kFree);
    }

    // Classic augmenting path from a free left vertex.
    bool augment_from_left(std::size_t i) {
        visited_.assign(right_adj_.size(), false);
        return dfs_left(i);
    }

    // From a free right vertex j: augment, or shift along an alternating path
    // that ends by freeing a right vertex not flagged in `required_right`.
    // Left vertices never lose their partner.
    bool cover_right(std::size_t j, const std::vector<bool>& required_right) {
        visited_left_.assign(left_adj_.size(), false);
        return dfs_right(j, required_right);
    }

    const std::vector<std::size_t>& left_mate() const { return left_mate_; }
    const std::vector<std::size_t>& right_mate() const { return right_mate_; }

private:
    bool dfs_left(std::size_t i) {
        for (std::size_t j : left_adj_[i]) {
            if (visited_[j]) continue;
            visited_[j] = true;
            if (right_mate_[j] == kFree || dfs_left(right_mate_[j])) {
                left_mate_[i] = j;
                right_mate_[j] = i;
                return true;
            }
        }
        return false;
    }

    bool dfs_right(std::size_t j, const std::vector<bool>& required_right) {
        for (std::size_t i : right_adj_[j]) {
            if (visited_left_[i]) continue;
            visited_left_[i] = true;
            const std::size_t partner = left_mate_[i];
            if (partner == kFree || !required_right[partner] || dfs_right(partner, required_right)) {
                if (partner != kFree && right_mate_[partner] == i) right_mate_[partner] = kFree;
                left_mate_[i] = j;
                right_mate_[j] = i;
                return true;
            }
        }
        return false;
    }

    std::vector<std::vector<std::size_t>> left_adj_;
    std::vector<std::vector<std::size_t>> right_adj_;
    std::vector<std::size_t> left_mate_;
    std::vector<std::size_t> right_mate_;
    std::vector<bool> visited_;
    std::vector<bool> visited_left_;
};

std::vector<std::size_t> order_by_decreasing(const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    return order;
}

// Builds a matching with edges <= threshold that covers every left item with
// unmatched cost > threshold and every such right item. Returns false when
// none exists.
bool match_at(const std::vector<std::vector<double>>& cost, const std::vector<double>& unmatched_left,
              const std::vector<double>& unmatched_right, double threshold, std::vector<std::size_t>* left_mate) {
    const auto left_order = order_by_decreasing(unmatched_left);
    const auto right_order = order_by_decreasing(unmatched_right);
    ThresholdMatcher matcher(cost, unmatched_right.size(), threshold, right_order);
    for (std::size_t i : left_order) {
        if (unmatched_left[i] > threshold && !matcher.augment_from_left(i)) return false;
    }
    std::vector<bool> required_right(unmatched_right.size());
    for (std::size_t j = 0; j < unmatched_right.size(); ++j) required_right[j] = unmatched_right[j] > threshold;
    for (std::size_t j : right_order) {
        if (required_right[j] && matcher.right_mate()[j] == kFree && !matcher.cover_right(j, required_right)) {
            return false;
        }
    }
    if (left_mate != nullptr) *left_mate = matcher.left_mate();
    return true;
}

}  // namespace

MatchingResult bottleneck_matching(const std::vector<std::vector<double>>& pair_cost,
                                   const std::vector<double>& unmatched_left,
                                   const std::vector<double>& unmatched_right) {
    const std::size_t m = unmatched_left.size();
    const std::size_t k = unmatched_right.size();
    if (pair_cost.size() != m) throw std::invalid_argument("bottleneck_matching: cost matrix row count");
    for (const auto& row : pair_cost) {
        if (row.size() != k) throw std::invalid_argument("bottleneck_matching: cost matrix column count");
    }

    std::vector<double> candidates{0.0};
    candidates.insert(candidates.end(), unmatched_left.begin(), unmatched_left.end());
    candidates.insert(candidates.end(), unmatched_right.begin(), unmatched_right.end());
    for (const auto& row : pair_cost) candidates.insert(candidates.end(), row.begin(), row.end());
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // The largest candidate is always feasible: nothing is forced to match.
    std::size_t lo = 0;
    std::size_t hi = candidates.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (match_at(pair_cost, unmatched_left, unmatched_right, candidates[mid], nullptr)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    std::vector<std::size_t> left_mate;
    match_at(pair_cost, unmatched_left, unmatched_right, candidates[lo], &left_mate);

    MatchingResult result;
    std::vector<bool> right_used(k, false);
    for (std::size_t i = 0; i < m; ++i) {
        if (left_mate[i] == kFree) {
            result.unmatched_left.push_back(i);
            result.cost = std::max(result.cost, unmatched_left[i]);
        } else {
            result.pairs.emplace_back(i, left_mate[i]);
            right_used[left_mate[i]] = true;
            result.cost = std::max(result.cost, pair_cost[i][left_mate[i]]);
        }
    }
    for (std::size_t j = 0; j < k; ++j) {
        if (!right_used[j]) {
            result.unmatched_right.push_back(j);
            result.cost = std::max(result.cost, unmatched_right[j]);
        }
    }
    return result;
}

double interleaving_to_zero(const IntervalModule& module) { return weight(module); }

namespace {

void require_rectangle(const IntervalModule& m) {
    if (!m.is_zero() && !m.is_rectangle()) {
        throw NotRectangleError("summand with " + std::to_string(m.births().size()) + " birth and " +
                                std::to_string(m.deaths().size()) + " death corners is not a rectangle");
    }
}

double sup_distance(const Point& a, const Point& b) {
    require_same_dim(a, b);
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace

double interleaving_rect(const IntervalModule& a, const IntervalModule& b) {
    require_rectangle(a);
    require_rectangle(b);
    const double trivial = std::max(weight(a), weight(b));
    if (a.is_zero() || b.is_zero()) return trivial;
    const double corners = std::max(sup_distance(a.births().front(), b.births().front()),
                                    sup_distance(a.deaths().front(), b.deaths().front()));
    return std::min(corners, trivial);
}

bool interleaving_oracle_rect(const IntervalModule& a, const IntervalModule& b, double epsilon) {
    require_rectangle(a);
    require_rectangle(b);
    if (weight(a) <= epsilon && weight(b) <= epsilon) return true;
    if (a.is_zero() || b.is_zero()) return false;
    return sup_distance(a.births().front(), b.births().front()) <= epsilon &&
           sup_distance(a.deaths().front(), b.deaths().front()) <= epsilon;
}

MatchingResult bottleneck(const Decomposition& a, const Decomposition& b) {
    for (const auto& m : a.intervals) require_rectangle(m);
    for (const auto& m : b.intervals) require_rectangle(m);
    std::vector<std::vector<double>> cost(a.size(), std::vector<double>(b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) cost[i][j] = interleaving_rect(a.intervals[i], b.intervals[j]);
    }
    std::vector<double> left, right;
    for (const auto& m : a.intervals) left.push_back(interleaving_to_zero(m));
    for (const auto& m : b.intervals) right.push_back(interleaving_to_zero(m));
    return bottleneck_matching(cost, left, right);
}

namespace {

double bar_pair_cost(const Bar& a, const Bar& b) {
    const double births = std::abs(a.birth - b.birth);
    const bool a_inf = std::isinf(a.death);
    const bool b_inf = std::isinf(b.death);
    if (a_inf != b_inf) return kInfinity;
    return a_inf ? births : std::max(births, std::abs(a.death - b.death));
}

}  // namespace

MatchingResult barcode_bottleneck(const Barcode& a, const Barcode& b) {
    std::vector<std::vector<double>> cost(a.size(), std::vector<double>(b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) cost[i][j] = bar_pair_cost(a[i], b[j]);
    }
    std::vector<double> left, right;
    for (const auto& bar : a) left.push_back(0.5 * bar.length());
    for (const auto& bar : b) right.push_back(0.5 * bar.length());
    return bottleneck_matching(cost, left, right);
}

}  // namespace mpcorner
