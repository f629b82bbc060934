#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mpcorner/core_model.hpp"
#include "mpcorner/filtration.hpp"

namespace mpcorner {

/// Persistence pairs of a filtered complex over Z/2, as simplex indices into
/// the filtration order. Unpaired positive simplices are essential.
struct PersistencePairs {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (birth simplex, death simplex)
    std::vector<std::size_t> essential;
};

/// Column reduction of the boundary matrix, highest dimension first, with
/// clearing. Throws std::invalid_argument when a face does not precede its
/// coface or enters later.
PersistencePairs reduce_boundary_matrix(const FilteredComplex1D& complex);

/// Barcode in `degree`, zero-length bars dropped; essential classes die at
/// +infinity. Bars are sorted by (birth, death).
Barcode persistence_1d(const FilteredComplex1D& complex, std::size_t degree);

/// Barcodes for degrees 0..max_degree from a single reduction.
std::vector<Barcode> persistence_all(const FilteredComplex1D& complex, std::size_t max_degree);

}  // namespace mpcorner
