#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace plotbench {

// 8-bit RGB raster, row-major, no padding.
struct ImageRGB8 {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // 3 * width * height

    ImageRGB8() = default;
    ImageRGB8(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(3) * w * h, 0) {}

    std::uint8_t* px(int x, int y) { return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x); }
    const std::uint8_t* px(int x, int y) const {
        return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
    }
};

// A plot image plus the real-world extents it covers; extents come from the
// dataset manifest, never from file metadata.
struct PlotImage {
    ImageRGB8 image;
    double extent_w_m = 0.0;
    double extent_h_m = 0.0;
};

// Format is picked by extension: .ppm (binary P6) or .png. Throws
// std::runtime_error on I/O or decode failure.
ImageRGB8 read_image(const std::string& path);
void write_image(const std::string& path, const ImageRGB8& img);

ImageRGB8 read_ppm(const std::string& path);
void write_ppm(const std::string& path, const ImageRGB8& img);
ImageRGB8 read_png(const std::string& path);
void write_png(const std::string& path, const ImageRGB8& img);

}  // namespace plotbench
