#pragma once

#include <string>
#include <vector>

#include "plotbench/geometry.hpp"
#include "plotbench/image.hpp"

namespace plotbench {

struct DetectParams {
    std::string threshold_mode = "otsu";  // "otsu" | "fixed"
    double fixed_threshold = 0.2;
    double otsu_floor = 0.1;          // Otsu result is never allowed below this
    double min_area_fraction = 5e-4;  // of image area
    double split_factor = 1.5;        // blob splits when extent > factor * median extent
};

// Excess-green index on chromaticity coordinates: 2g - r - b per pixel.
// Pixels with R+G+B == 0 map to 0. Row-major, height*width values.
std::vector<double> exg_map(const ImageRGB8& img);

// Histogram-based Otsu threshold over ExG values in [-1, 2].
double otsu_threshold(const std::vector<double>& exg);

// Foreground iff exg > threshold; threshold by mode (Otsu with a floor, or fixed).
std::vector<std::uint8_t> segment(const std::vector<double>& exg, int width, int height,
                                  const DetectParams& params);

struct Blob {
    std::vector<std::pair<int, int>> pixels;  // (x, y)
    int min_x = 0, min_y = 0, max_x = 0, max_y = 0;

    int area_px() const { return static_cast<int>(pixels.size()); }
    // center of gravity of mask pixels, in pixel-index coordinates
    double centroid_x() const;
    double centroid_y() const;
    int extent_x() const { return max_x - min_x + 1; }
    int extent_y() const { return max_y - min_y + 1; }
};

// 8-connected components of the mask with area >= min_area_px.
std::vector<Blob> detect_blobs(const std::vector<std::uint8_t>& mask, int width, int height,
                               int min_area_px);

// Divides a merged blob into round(extent/median) equal slices along the row
// axis when its extent exceeds split_factor * median (strict). Each slice is
// re-centroided; row_axis_is_y selects the long image axis.
std::vector<Blob> split_merged(const Blob& blob, double median_plant_extent_px,
                               double split_factor, bool row_axis_is_y);

// Full pipeline: ExG -> segment -> blobs -> merge splitting -> meters.
// Returns one point per detected plant; empty set for bare soil.
PointSet detect_plants(const PlotImage& plot, const DetectParams& params = {});

}  // namespace plotbench
