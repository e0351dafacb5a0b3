#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "plotbench/config.hpp"
#include "plotbench/image.hpp"

namespace plotbench {

// Canopy radius vs days-after-planting, piecewise linear between anchors and
// clamped beyond the last one. Anchors must be monotone in both coordinates.
struct GrowthCurve {
    std::vector<std::pair<double, double>> anchors{{0.0, 0.02}, {10.0, 0.05}, {50.0, 0.30}, {90.0, 0.45}};

    double radius_m(double dap) const;
};

// Default growth curve evaluated at dap.
double growth_radius(double dap);

struct RasterParams {
    int img_w_px = 381;
    int img_h_px = 1080;
    std::array<std::uint8_t, 3> soil_color{122, 96, 70};
    std::array<std::uint8_t, 3> plant_color{52, 160, 60};
    int soil_noise = 6;  // max per-channel deviation
    GrowthCurve growth;
    std::uint64_t noise_seed = 0;
};

// Top-down stand-in render: soil background plus one filled green ellipse per
// plant, sized by the growth curve at the config's DAP. Byte-identical output
// for identical (config, params). Plants outside the plot extents are skipped;
// *skipped_plants (if given) receives the count.
PlotImage rasterize(const SimulationConfig& c, const RasterParams& p, int* skipped_plants = nullptr);

}  // namespace plotbench
