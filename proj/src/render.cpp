#include "assouad/render.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include <zlib.h>

namespace assouad {

std::size_t Raster::occupied() const {
    std::size_t n = 0;
    for (std::uint8_t p : pixels)
        if (p == 0) ++n;
    return n;
}

std::size_t Raster::runs_in_row(std::size_t row) const {
    if (row >= height) throw domain_error("raster row out of range");
    std::size_t runs = 0;
    bool in_run = false;
    for (std::size_t x = 0; x < width; ++x) {
        bool black = pixels[row * width + x] == 0;
        if (black && !in_run) ++runs;
        in_run = black;
    }
    return runs;
}

Raster rasterize(const PointCloud& cloud, std::size_t image_size) {
    if (image_size == 0 || image_size > 4096)
        throw domain_error("image size must lie in [1, 4096]");
    if (cloud.empty()) throw domain_error("cannot rasterize an empty cloud");
    Raster r;
    r.width = image_size;
    r.height = cloud.dim == 1 ? 32 : image_size;
    r.pixels.assign(r.width * r.height, 255);

    auto bin = [&](double v, std::size_t cells) {
        long k = static_cast<long>(std::floor(v * static_cast<double>(cells)));
        if (k < 0) k = 0;
        if (k >= static_cast<long>(cells)) k = static_cast<long>(cells) - 1;
        return static_cast<std::size_t>(k);
    };
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        std::size_t px = bin(cloud.xs[i], r.width);
        if (cloud.dim == 1) {
            for (std::size_t y = 0; y < r.height; ++y) r.pixels[y * r.width + px] = 0;
        } else {
            // image rows grow downward; mathematical y grows upward
            std::size_t py = r.height - 1 - bin(cloud.ys[i], r.height);
            r.pixels[py * r.width + px] = 0;
        }
    }
    return r;
}

namespace {

struct Chunk {
    std::vector<std::uint8_t> bytes;

    void u8(std::uint8_t v) { bytes.push_back(v); }
    void u32(std::uint32_t v) {
        bytes.push_back(static_cast<std::uint8_t>(v >> 24));
        bytes.push_back(static_cast<std::uint8_t>(v >> 16));
        bytes.push_back(static_cast<std::uint8_t>(v >> 8));
        bytes.push_back(static_cast<std::uint8_t>(v));
    }
    void raw(const void* data, std::size_t n) {
        const auto* p = static_cast<const std::uint8_t*>(data);
        bytes.insert(bytes.end(), p, p + n);
    }
};

void append_chunk(std::vector<std::uint8_t>& out, const char type[4],
                  const std::vector<std::uint8_t>& payload) {
    Chunk c;
    c.u32(static_cast<std::uint32_t>(payload.size()));
    c.raw(type, 4);
    c.raw(payload.data(), payload.size());
    std::uint32_t crc = static_cast<std::uint32_t>(
        crc32(crc32(0L, reinterpret_cast<const Bytef*>(type), 4),
              payload.data(), static_cast<uInt>(payload.size())));
    c.u32(crc);
    out.insert(out.end(), c.bytes.begin(), c.bytes.end());
}

} // namespace

std::vector<std::uint8_t> png_bytes(const Raster& raster, const std::string& config_line) {
    static const std::uint8_t signature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    std::vector<std::uint8_t> out(signature, signature + 8);

    Chunk ihdr;
    ihdr.u32(static_cast<std::uint32_t>(raster.width));
    ihdr.u32(static_cast<std::uint32_t>(raster.height));
    ihdr.u8(8);   // bit depth
    ihdr.u8(0);   // grayscale
    ihdr.u8(0);   // deflate
    ihdr.u8(0);   // filter method
    ihdr.u8(0);   // no interlace
    append_chunk(out, "IHDR", ihdr.bytes);

    if (!config_line.empty()) {
        Chunk text;
        static const char keyword[] = "config";
        text.raw(keyword, sizeof keyword);  // includes the NUL separator
        text.raw(config_line.data(), config_line.size());
        append_chunk(out, "tEXt", text.bytes);
    }

    // scanlines with filter byte 0
    std::vector<std::uint8_t> raw;
    raw.reserve(raster.height * (raster.width + 1));
    for (std::size_t y = 0; y < raster.height; ++y) {
        raw.push_back(0);
        raw.insert(raw.end(), raster.pixels.begin() + y * raster.width,
                   raster.pixels.begin() + (y + 1) * raster.width);
    }
    uLongf bound = compressBound(static_cast<uLong>(raw.size()));
    std::vector<std::uint8_t> compressed(bound);
    if (compress2(compressed.data(), &bound, raw.data(), static_cast<uLong>(raw.size()),
                  9) != Z_OK)
        throw domain_error("PNG deflate failed");
    compressed.resize(bound);
    append_chunk(out, "IDAT", compressed);
    append_chunk(out, "IEND", {});
    return out;
}

void write_png(const Raster& raster, const std::string& config_line,
               const std::string& out_path) {
    std::vector<std::uint8_t> bytes = png_bytes(raster, config_line);
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw domain_error("cannot write PNG to '" + out_path + "'");
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

} // namespace assouad
