#include "mpcorner/persistence.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mpcorner {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

void check_filtration(const FilteredComplex1D& complex) {
    if (complex.faces.size() != complex.size() || complex.values.size() != complex.size()) {
        throw std::invalid_argument("filtered complex: inconsistent array sizes");
    }
    for (std::size_t s = 0; s < complex.size(); ++s) {
        const auto& faces = complex.faces[s];
        const std::size_t expected = complex.dims[s] == 0 ? 0 : complex.dims[s] + 1;
        if (faces.size() != expected) {
            throw std::invalid_argument("filtered complex: simplex " + std::to_string(s) + " has wrong face count");
        }
        for (std::size_t f : faces) {
            if (f >= s || complex.dims[f] + 1 != complex.dims[s] || complex.values[f] > complex.values[s]) {
                throw std::invalid_argument("filtered complex: face ordering violated at simplex " +
                                            std::to_string(s));
            }
        }
    }
}

// Column addition over Z/2 on sorted index lists.
void add_column(std::vector<std::size_t>& target, const std::vector<std::size_t>& source,
                std::vector<std::size_t>& scratch) {
    scratch.clear();
    std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                  std::back_inserter(scratch));
    target.swap(scratch);
}

}  // namespace

PersistencePairs reduce_boundary_matrix(const FilteredComplex1D& complex) {
    check_filtration(complex);
    const std::size_t n = complex.size();
    std::size_t top = 0;
    for (std::size_t d : complex.dims) top = std::max(top, d);

    std::vector<std::vector<std::size_t>> columns(n);
    std::vector<std::size_t> pivot_owner(n, kNone);  // row -> column whose lowest entry it is
    std::vector<bool> cleared(n, false);
    std::vector<bool> negative(n, false);
    std::vector<std::size_t> scratch;
    PersistencePairs result;

    for (std::size_t d = top; d >= 1; --d) {
        for (std::size_t j = 0; j < n; ++j) {
            if (complex.dims[j] != d || cleared[j]) continue;
            auto& column = columns[j];
            column = complex.faces[j];
            while (!column.empty()) {
                const std::size_t low = column.back();
                const std::size_t owner = pivot_owner[low];
                if (owner == kNone) break;
                add_column(column, columns[owner], scratch);
            }
            if (column.empty()) continue;
            const std::size_t low = column.back();
            pivot_owner[low] = j;
            negative[j] = true;
            cleared[low] = true;  // a positive simplex: its column reduces to zero
            result.pairs.emplace_back(low, j);
        }
    }
    std::sort(result.pairs.begin(), result.pairs.end());

    for (std::size_t s = 0; s < n; ++s) {
        if (!negative[s] && pivot_owner[s] == kNone) result.essential.push_back(s);
    }
    return result;
}

std::vector<Barcode> persistence_all(const FilteredComplex1D& complex, std::size_t max_degree) {
    const PersistencePairs pairs = reduce_boundary_matrix(complex);
    std::vector<Barcode> barcodes(max_degree + 1);
    for (const auto& [birth, death] : pairs.pairs) {
        const std::size_t k = complex.dims[birth];
        if (k > max_degree) continue;
        const double b = complex.values[birth];
        const double d = complex.values[death];
        if (b < d) barcodes[k].push_back({b, d});
    }
    for (std::size_t s : pairs.essential) {
        const std::size_t k = complex.dims[s];
        if (k <= max_degree) barcodes[k].push_back({complex.values[s], kInfinity});
    }
    for (auto& barcode : barcodes) {
        std::sort(barcode.begin(), barcode.end(),
                  [](const Bar& a, const Bar& b) { return a.birth != b.birth ? a.birth < b.birth : a.death < b.death; });
    }
    return barcodes;
}

Barcode persistence_1d(const FilteredComplex1D& complex, std::size_t degree) {
    return persistence_all(complex, degree)[degree];
}

}  // namespace mpcorner
