#pragma once

#include <filesystem>
#include <string>

#include "mpcorner/core_model.hpp"
#include "mpcorner/pointcloud.hpp"
#include "mpcorner/representations.hpp"

namespace mpcorner {

/// Stand-in written for unbounded coordinates.
inline constexpr double kInfinitySentinel = 1e30;

/// Decomposition <-> JSON text:
///   {"dim": n, "degree": k, "intervals": [{"births": [[...]], "deaths": [[...]]}]}
/// Corner lists are canonicalized on load. Throws InputError on malformed
/// input.
std::string decomposition_to_json(const Decomposition& decomposition);
Decomposition decomposition_from_json(const std::string& text);

Decomposition load_decomposition(const std::filesystem::path& path);
void save_decomposition(const Decomposition& decomposition, const std::filesystem::path& path);

/// One row per grid point: coordinates then value, header "x,y,value" in 2D.
void write_image_csv(const GridImage& image, const std::filesystem::path& path);

/// 16-bit binary PGM of a planar image, top row = largest y. Values are
/// min-max scaled to [0, 65535]; the scaling and metadata go to a sidecar
/// `<path>.txt`.
void write_image_pgm(const GridImage& image, const std::filesystem::path& path);

}  // namespace mpcorner
