#include "mpcorner/representations.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mpcorner/parallel.hpp"

namespace mpcorner {

GridSpec GridSpec::planar(double x0, double y0, double x1, double y1, std::size_t width, std::size_t height) {
    return GridSpec{{x0, y0}, {x1, y1}, {width, height}};
}

std::size_t GridSpec::size() const {
    std::size_t total = 1;
    for (auto r : resolution) total *= r;
    return total;
}

double GridSpec::cell_volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < dim(); ++i) v *= (upper[i] - lower[i]) / static_cast<double>(resolution[i]);
    return v;
}

Point GridSpec::point(std::size_t flat_index) const {
    Point x(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        const std::size_t cell = flat_index % resolution[i];
        flat_index /= resolution[i];
        const double step = (upper[i] - lower[i]) / static_cast<double>(resolution[i]);
        x[i] = lower[i] + (static_cast<double>(cell) + 0.5) * step;
    }
    return x;
}

void GridSpec::validate() const {
    if (lower.empty() || lower.size() != upper.size() || lower.size() != resolution.size()) {
        throw std::invalid_argument("grid: inconsistent dimensions");
    }
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!(lower[i] < upper[i]) || !std::isfinite(lower[i]) || !std::isfinite(upper[i])) {
            throw std::invalid_argument("grid: lower must be < upper on every axis");
        }
        if (resolution[i] == 0) throw std::invalid_argument("grid: resolution must be positive");
    }
}

double GridImage::max_value() const {
    return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

bool summand_less(const IntervalModule& a, const IntervalModule& b) {
    if (a.births() != b.births()) return a.births() < b.births();
    return a.deaths() < b.deaths();
}

namespace {

std::string format_double(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

// Nonzero summands in canonical order. Zero summands only count towards
// `count` and `total_weight`.
struct Prepared {
    std::vector<IntervalModule> summands;
    std::vector<Box> boxes;
    std::vector<double> weights;
    std::size_t count = 0;
    double total_weight = 0.0;
};

Prepared prepare(const Decomposition& decomposition, const std::function<double(const IntervalModule&)>& weight) {
    decomposition.validate();
    Prepared prepared;
    prepared.count = decomposition.size();
    for (const auto& m : decomposition.intervals) {
        if (m.is_zero()) {
            prepared.total_weight += weight ? weight(m) : 1.0;
        } else {
            prepared.summands.push_back(m);
        }
    }
    std::stable_sort(prepared.summands.begin(), prepared.summands.end(), summand_less);
    for (const auto& m : prepared.summands) {
        prepared.boxes.push_back(m.bounding_box());
        prepared.weights.push_back(weight ? weight(m) : 1.0);
        prepared.total_weight += prepared.weights.back();
    }
    return prepared;
}

bool window_meets(const Box& box, const Point& x, double radius) {
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (radius > 0.0) {
            if (!(x[j] - radius < box.upper[j] && box.lower[j] < x[j] + radius)) return false;
        } else if (x[j] < box.lower[j] || x[j] > box.upper[j]) {
            return false;
        }
    }
    return true;
}

}  // namespace

GridImage tcdr(const Decomposition& decomposition, const TcdrParams& params, const GridSpec& grid) {
    grid.validate();
    if (!params.phi) throw std::invalid_argument("tcdr: phi function required");
    if (decomposition.ambient_dim != grid.dim()) {
        throw DimensionError("tcdr: grid dimension differs from the decomposition's");
    }
    if (params.op == AggregateOp::KthMax && params.k == 0) throw std::invalid_argument("tcdr: k must be >= 1");

    Prepared prepared = prepare(decomposition, params.weight);
    const std::size_t m = prepared.summands.size();
    if (params.normalize && prepared.count > 0) {
        if (!(prepared.total_weight > 0.0)) throw DegenerateInputError("all summand weights are zero");
        for (auto& w : prepared.weights) w /= prepared.total_weight;
    }

    GridImage image;
    image.grid = grid;
    image.values.assign(grid.size(), 0.0);
    image.metadata["degree"] = std::to_string(decomposition.degree);
    if (m == 0) return image;

    parallel_for(grid.size(), params.workers, [&](std::size_t index) {
        const Point x = grid.point(index);
        thread_local std::vector<double> terms;
        terms.clear();
        for (std::size_t i = 0; i < m; ++i) {
            double term = 0.0;
            if (!params.support_radius || window_meets(prepared.boxes[i], x, *params.support_radius)) {
                term = prepared.weights[i] * params.phi(prepared.summands[i], x);
            }
            terms.push_back(term);
        }
        double value = 0.0;
        switch (params.op) {
            case AggregateOp::Sum:
                for (double t : terms) value += t;
                break;
            case AggregateOp::Mean:
                for (double t : terms) value += t;
                value /= static_cast<double>(prepared.count);
                break;
            case AggregateOp::Max: value = *std::max_element(terms.begin(), terms.end()); break;
            case AggregateOp::Min:
                value = prepared.count > m ? std::min(0.0, *std::min_element(terms.begin(), terms.end()))
                                           : *std::min_element(terms.begin(), terms.end());
                break;
            case AggregateOp::KthMax:
                if (params.k <= terms.size()) {
                    std::nth_element(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(params.k - 1),
                                     terms.end(), std::greater<>());
                    value = terms[params.k - 1];
                }
                break;
        }
        image.values[index] = value;
    });
    return image;
}

namespace {

void tag_phi(GridImage& image, const PhiParams& phi_params) {
    image.metadata["phi"] = std::string(1, phi_kind_letter(phi_params.kind));
    image.metadata["delta"] = format_double(phi_params.delta);
}

TcdrParams scdr_base(const PhiParams& phi_params, std::size_t workers) {
    if (!(phi_params.delta > 0.0)) throw std::invalid_argument("delta must be positive");
    TcdrParams params;
    params.phi = [phi_params](const IntervalModule& m, const Point& x) { return phi(m, x, phi_params); };
    params.support_radius = phi_params.delta;
    params.workers = workers;
    return params;
}

}  // namespace

GridImage scdr_p(const Decomposition& decomposition, double p, const PhiParams& phi_params, const GridSpec& grid,
                 std::size_t workers) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("p must be a finite nonnegative number");
    if (decomposition.empty()) throw DegenerateInputError("weighted representation of an empty decomposition");
    TcdrParams params = scdr_base(phi_params, workers);
    params.op = AggregateOp::Sum;
    params.normalize = true;
    if (p == 0.0) {
        params.weight = [](const IntervalModule&) { return 1.0; };
    } else {
        params.weight = [p](const IntervalModule& m) { return std::pow(weight(m), p); };
    }
    GridImage image = tcdr(decomposition, params, grid);
    tag_phi(image, phi_params);
    image.metadata["representation"] = "scdr_p";
    image.metadata["p"] = format_double(p);
    return image;
}

GridImage scdr_sup(const Decomposition& decomposition, const PhiParams& phi_params, const GridSpec& grid,
                   std::size_t workers) {
    TcdrParams params = scdr_base(phi_params, workers);
    params.op = AggregateOp::Max;
    params.weight = [](const IntervalModule&) { return 1.0; };
    GridImage image = tcdr(decomposition, params, grid);
    tag_phi(image, phi_params);
    image.metadata["representation"] = "scdr_sup";
    return image;
}

GridImage mpl(const Decomposition& decomposition, std::size_t k, const GridSpec& grid, std::size_t workers) {
    if (k == 0) throw std::invalid_argument("landscape index k must be >= 1");
    TcdrParams params;
    params.op = AggregateOp::KthMax;
    params.k = k;
    params.weight = [](const IntervalModule&) { return 1.0; };
    params.phi = [](const IntervalModule& m, const Point& x) {
        const auto bar = restrict_to_diagonal_line(m, x);
        if (!bar) return 0.0;
        return std::max(0.0, std::min(-bar->birth, bar->death));
    };
    params.support_radius = 0.0;
    params.workers = workers;
    GridImage image = tcdr(decomposition, params, grid);
    image.metadata["representation"] = "mpl";
    image.metadata["k"] = std::to_string(k);
    return image;
}

double image_distance(const GridImage& a, const GridImage& b, ImageNorm norm) {
    if (!(a.grid == b.grid) || a.values.size() != b.values.size()) {
        throw std::invalid_argument("image_distance: grids differ");
    }
    double result = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double diff = std::abs(a.values[i] - b.values[i]);
        if (norm == ImageNorm::LInf) {
            result = std::max(result, diff);
        } else {
            result += diff * diff;
        }
    }
    if (norm == ImageNorm::L2Squared) result *= a.grid.cell_volume();
    return result;
}

}  // namespace mpcorner
