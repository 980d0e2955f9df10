#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "assouad/point_cloud.hpp"

namespace assouad {

/// Black-on-white raster of a cloud over [0,1]^d.  1D clouds render as a
/// horizontal strip 32 pixels tall.  Deterministic for a fixed cloud and
/// size.
struct Raster {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> pixels;  // row-major, 0 = black, 255 = white

    std::size_t occupied() const;
    /// maximal horizontal runs of black pixels in the given row
    std::size_t runs_in_row(std::size_t row) const;
};

Raster rasterize(const PointCloud& cloud, std::size_t image_size);

/// Grayscale 8-bit PNG with the run configuration stored in a tEXt chunk.
/// Byte-identical output for identical inputs.
void write_png(const Raster& raster, const std::string& config_line,
               const std::string& out_path);

std::vector<std::uint8_t> png_bytes(const Raster& raster, const std::string& config_line);

} // namespace assouad
