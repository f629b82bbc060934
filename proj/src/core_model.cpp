#include "mpcorner/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mpcorner {

void require_same_dim(const Point& a, const Point& b) {
    if (a.size() != b.size()) {
        throw DimensionError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()));
    }
}

bool leq(const Point& a, const Point& b) {
    require_same_dim(a, b);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
    }
    return true;
}

Box Box::around(const Point& center, double delta) {
    Box box{center, center};
    for (std::size_t i = 0; i < center.size(); ++i) {
        box.lower[i] -= delta;
        box.upper[i] += delta;
    }
    return box;
}

bool Box::contains(const Point& y) const { return leq(lower, y) && leq(y, upper); }

double Box::volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < lower.size(); ++i) v *= std::max(0.0, upper[i] - lower[i]);
    return v;
}

namespace {

// Keeps the minimal (keep_minimal) or maximal elements of `points`, without
// duplicates, sorted lexicographically.
std::vector<Point> antichain(std::vector<Point> points, bool keep_minimal) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::vector<Point> kept;
    kept.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
            if (i == j) continue;
            dominated = keep_minimal ? leq(points[j], points[i]) : leq(points[i], points[j]);
        }
        if (!dominated) kept.push_back(points[i]);
    }
    return kept;
}

void check_corner_dims(const std::vector<Point>& births, const std::vector<Point>& deaths) {
    const Point* first = !births.empty() ? &births.front() : (!deaths.empty() ? &deaths.front() : nullptr);
    if (first == nullptr) return;
    if (first->empty()) throw DimensionError("corners must have dimension >= 1");
    for (const auto& p : births) require_same_dim(*first, p);
    for (const auto& p : deaths) require_same_dim(*first, p);
    for (const auto* list : {&births, &deaths}) {
        for (const auto& p : *list) {
            for (double c : p) {
                if (!std::isfinite(c)) throw std::invalid_argument("corner coordinates must be finite");
            }
        }
    }
}

}  // namespace

IntervalModule::IntervalModule(std::vector<Point> births, std::vector<Point> deaths) {
    check_corner_dims(births, deaths);
    births = antichain(std::move(births), true);
    deaths = antichain(std::move(deaths), false);

    // Corners without a partner contribute nothing to the support.
    std::vector<Point> live_births;
    for (const auto& b : births) {
        if (std::any_of(deaths.begin(), deaths.end(), [&](const Point& d) { return leq(b, d); })) {
            live_births.push_back(b);
        }
    }
    std::vector<Point> live_deaths;
    for (const auto& d : deaths) {
        if (std::any_of(live_births.begin(), live_births.end(), [&](const Point& b) { return leq(b, d); })) {
            live_deaths.push_back(d);
        }
    }
    if (live_births.empty() || live_deaths.empty()) return;
    births_ = std::move(live_births);
    deaths_ = std::move(live_deaths);
}

IntervalModule IntervalModule::rectangle(const Point& lower, const Point& upper) {
    return IntervalModule({lower}, {upper});
}

bool IntervalModule::contains(const Point& y) const {
    if (is_zero()) return false;
    require_same_dim(births_.front(), y);
    const bool above = std::any_of(births_.begin(), births_.end(), [&](const Point& b) { return leq(b, y); });
    return above && std::any_of(deaths_.begin(), deaths_.end(), [&](const Point& d) { return leq(y, d); });
}

Box IntervalModule::bounding_box() const {
    if (is_zero()) throw std::logic_error("bounding box of the zero module");
    Box box{births_.front(), deaths_.front()};
    for (const auto& b : births_) {
        for (std::size_t i = 0; i < b.size(); ++i) box.lower[i] = std::min(box.lower[i], b[i]);
    }
    for (const auto& d : deaths_) {
        for (std::size_t i = 0; i < d.size(); ++i) box.upper[i] = std::max(box.upper[i], d[i]);
    }
    return box;
}

IntervalModule canonicalize(std::vector<Point> births, std::vector<Point> deaths) {
    return IntervalModule(std::move(births), std::move(deaths));
}

IntervalModule restrict_to_box(const IntervalModule& module, const Box& box) {
    if (module.is_zero()) return {};
    require_same_dim(module.births().front(), box.lower);
    require_same_dim(box.lower, box.upper);
    const std::size_t n = box.dim();

    std::vector<Point> births;
    for (const auto& b : module.births()) {
        if (!leq(b, box.upper)) continue;
        Point pushed = b;
        for (std::size_t i = 0; i < n; ++i) pushed[i] = std::max(b[i], box.lower[i]);
        births.push_back(std::move(pushed));
    }
    std::vector<Point> deaths;
    for (const auto& d : module.deaths()) {
        if (!leq(box.lower, d)) continue;
        Point pushed = d;
        for (std::size_t i = 0; i < n; ++i) pushed[i] = std::min(d[i], box.upper[i]);
        deaths.push_back(std::move(pushed));
    }
    if (births.empty() || deaths.empty()) return {};
    return IntervalModule(std::move(births), std::move(deaths));
}

std::optional<Bar> restrict_to_diagonal_line(const IntervalModule& module, const Point& basepoint) {
    if (module.is_zero()) return std::nullopt;
    require_same_dim(module.births().front(), basepoint);
    double birth = kInfinity;
    for (const auto& b : module.births()) {
        double t = -kInfinity;
        for (std::size_t i = 0; i < b.size(); ++i) t = std::max(t, b[i] - basepoint[i]);
        birth = std::min(birth, t);
    }
    double death = -kInfinity;
    for (const auto& d : module.deaths()) {
        double t = kInfinity;
        for (std::size_t i = 0; i < d.size(); ++i) t = std::min(t, d[i] - basepoint[i]);
        death = std::max(death, t);
    }
    if (!(birth < death)) return std::nullopt;
    return Bar{birth, death};
}

void Decomposition::validate() const {
    for (const auto& m : intervals) {
        if (!m.is_zero() && m.dim() != ambient_dim) {
            throw DimensionError("summand of dimension " + std::to_string(m.dim()) +
                                 " in a decomposition of dimension " + std::to_string(ambient_dim));
        }
    }
}

Barcode fibered_barcode(const Decomposition& decomposition, const Point& basepoint) {
    Barcode barcode;
    for (const auto& m : decomposition.intervals) {
        if (auto bar = restrict_to_diagonal_line(m, basepoint)) barcode.push_back(*bar);
    }
    return barcode;
}

}  // namespace mpcorner
