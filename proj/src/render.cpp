#include "voroshot/render.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "voroshot/error.hpp"
#include "voroshot/eval.hpp"

namespace voroshot {

const std::vector<std::string>& render_palette() {
    static const std::vector<std::string> palette = {
        "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1",
        "#76b7b2", "#edc948", "#ff9da7", "#9c755f", "#bab0ac",
    };
    return palette;
}

std::string render_partition_svg(const CellClassifier& classify,
                                 const std::vector<Point>& centers,
                                 const std::vector<Point>& support_points,
                                 const std::vector<uint32_t>& support_class,
                                 const RenderOptions& opts) {
    if (centers.empty()) throw DomainError("render: no centers to frame");
    for (const Point& c : centers) {
        if (c.size() != 2) throw DomainError("render: centers must be 2-dimensional");
    }
    if (support_points.size() != support_class.size()) {
        throw DomainError("render: support point/class size mismatch");
    }

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const Point& c : centers) {
        xmin = std::min(xmin, c[0]);
        xmax = std::max(xmax, c[0]);
        ymin = std::min(ymin, c[1]);
        ymax = std::max(ymax, c[1]);
    }
    // degenerate boxes (single center, collinear axis) still get an extent
    if (xmax - xmin < 1e-12) {
        xmin -= 1.0;
        xmax += 1.0;
    }
    if (ymax - ymin < 1e-12) {
        ymin -= 1.0;
        ymax += 1.0;
    }
    double pad_x = (xmax - xmin) * opts.pad_fraction;
    double pad_y = (ymax - ymin) * opts.pad_fraction;
    xmin -= pad_x;
    xmax += pad_x;
    ymin -= pad_y;
    ymax += pad_y;

    const uint32_t W = opts.width, H = opts.height;
    const double dx = (xmax - xmin) / W;
    const double dy = (ymax - ymin) / H;
    // cell (row, col) sampled at its center; row 0 is the top of the image
    auto sample_x = [&](uint32_t col) { return xmin + (col + 0.5) * dx; };
    auto sample_y = [&](uint32_t row) { return ymax - (row + 0.5) * dy; };

    constexpr int kBackground = -1;
    std::vector<int> grid(static_cast<size_t>(W) * H, kBackground);
    parallel_for(H, opts.threads, [&](size_t row) {
        Point p(2);
        p[1] = sample_y(static_cast<uint32_t>(row));
        for (uint32_t col = 0; col < W; ++col) {
            p[0] = sample_x(col);
            auto cell = classify(p);
            grid[row * W + col] = cell ? static_cast<int>(*cell) : kBackground;
        }
    });

    const auto& palette = render_palette();
    char buf[256];
    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                  "width=\"%u\" height=\"%u\" viewBox=\"0 0 %u %u\">\n",
                  W, H, W, H);
    svg += buf;
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    // run-length encode rows into one rect per run
    for (uint32_t row = 0; row < H; ++row) {
        uint32_t col = 0;
        while (col < W) {
            int cell = grid[static_cast<size_t>(row) * W + col];
            uint32_t run = col + 1;
            while (run < W && grid[static_cast<size_t>(row) * W + run] == cell) ++run;
            if (cell != kBackground) {
                std::snprintf(buf, sizeof buf,
                              "<rect x=\"%u\" y=\"%u\" width=\"%u\" height=\"1\" fill=\"%s\"/>\n",
                              col, row, run - col, palette[cell % palette.size()].c_str());
                svg += buf;
            }
            col = run;
        }
    }

    // support samples as squares
    auto to_px_x = [&](double x) { return (x - xmin) / dx; };
    auto to_px_y = [&](double y) { return (ymax - y) / dy; };
    const double half = 4.0;
    for (size_t i = 0; i < support_points.size(); ++i) {
        const Point& p = support_points[i];
        if (p.size() != 2) throw DomainError("render: support points must be 2-dimensional");
        std::snprintf(buf, sizeof buf,
                      "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.1f\" height=\"%.1f\" fill=\"%s\" "
                      "stroke=\"#000000\" stroke-width=\"1\"/>\n",
                      to_px_x(p[0]) - half, to_px_y(p[1]) - half, 2 * half, 2 * half,
                      palette[support_class[i] % palette.size()].c_str());
        svg += buf;
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace voroshot
