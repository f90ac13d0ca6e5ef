#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "voroshot/geometry.hpp"

namespace voroshot {

struct RenderOptions {
    uint32_t width = 512;
    uint32_t height = 512;
    double pad_fraction = 0.2;  // bounding-box padding per side
    unsigned threads = 0;
};

// Classifies a 2D point into a cell index, or nullopt when the point is
// outside the pipeline's domain (such pixels stay background-colored).
using CellClassifier = std::function<std::optional<size_t>(const Point&)>;

// Rasterizes a partition of the plane over the padded bounding box of
// `centers`: each grid cell is colored by the class assigned at its center
// coordinate, and support points are overplotted as filled squares. Output
// is a standalone SVG 1.1 document with one rect per run of equal pixels.
std::string render_partition_svg(const CellClassifier& classify,
                                 const std::vector<Point>& centers,
                                 const std::vector<Point>& support_points,
                                 const std::vector<uint32_t>& support_class,
                                 const RenderOptions& opts = {});

// The fixed cell palette, cycled when there are more classes than entries.
const std::vector<std::string>& render_palette();

} // namespace voroshot
