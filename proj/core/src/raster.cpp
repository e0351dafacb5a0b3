#include "plotbench/raster.hpp"

#include <algorithm>
#include <cmath>

#include "plotbench/rng.hpp"

namespace plotbench {

double GrowthCurve::radius_m(double dap) const {
    if (anchors.empty()) return 0.0;
    if (dap <= anchors.front().first) return anchors.front().second;
    for (std::size_t i = 1; i < anchors.size(); ++i) {
        if (dap <= anchors[i].first) {
            const auto& [d0, r0] = anchors[i - 1];
            const auto& [d1, r1] = anchors[i];
            const double t = (dap - d0) / (d1 - d0);
            return r0 + t * (r1 - r0);
        }
    }
    return anchors.back().second;
}

double growth_radius(double dap) { return GrowthCurve{}.radius_m(dap); }

PlotImage rasterize(const SimulationConfig& c, const RasterParams& p, int* skipped_plants) {
    PlotImage out;
    out.extent_w_m = c.field.plot_width_m;
    out.extent_h_m = c.field.plot_length_m;
    out.image = ImageRGB8(p.img_w_px, p.img_h_px);

    ImageRGB8& img = out.image;
    Rng rng(p.noise_seed);
    for (int y = 0; y < p.img_h_px; ++y) {
        for (int x = 0; x < p.img_w_px; ++x) {
            std::uint8_t* px = img.px(x, y);
            const int n = p.soil_noise > 0
                              ? static_cast<int>(rng.uniform_int(-p.soil_noise, p.soil_noise))
                              : 0;
            for (int ch = 0; ch < 3; ++ch) {
                px[ch] = static_cast<std::uint8_t>(std::clamp(static_cast<int>(p.soil_color[ch]) + n, 0, 255));
            }
        }
    }

    const double radius = p.growth.radius_m(c.metadata.dap);
    const double rx_px = radius * p.img_w_px / out.extent_w_m;
    const double ry_px = radius * p.img_h_px / out.extent_h_m;
    const double half_w = out.extent_w_m / 2.0;
    const double half_h = out.extent_h_m / 2.0;

    int skipped = 0;
    for (const auto& plot : c.field.plots) {
        for (const auto& plant : plot.plants) {
            if (plant.x < -half_w || plant.x > half_w || plant.y < -half_h || plant.y > half_h) {
                ++skipped;
                continue;
            }
            double cx = 0.0;
            double cy = 0.0;
            meters_to_continuous_px(plant, p.img_w_px, p.img_h_px, out.extent_w_m, out.extent_h_m, cx, cy);

            const int x0 = std::max(0, static_cast<int>(std::floor(cx - rx_px - 1)));
            const int x1 = std::min(p.img_w_px - 1, static_cast<int>(std::ceil(cx + rx_px + 1)));
            const int y0 = std::max(0, static_cast<int>(std::floor(cy - ry_px - 1)));
            const int y1 = std::min(p.img_h_px - 1, static_cast<int>(std::ceil(cy + ry_px + 1)));
            for (int y = y0; y <= y1; ++y) {
                for (int x = x0; x <= x1; ++x) {
                    const double dx = (x + 0.5 - cx) / rx_px;
                    const double dy = (y + 0.5 - cy) / ry_px;
                    if (dx * dx + dy * dy <= 1.0) {
                        std::uint8_t* px = img.px(x, y);
                        px[0] = p.plant_color[0];
                        px[1] = p.plant_color[1];
                        px[2] = p.plant_color[2];
                    }
                }
            }
        }
    }
    if (skipped_plants) *skipped_plants = skipped;
    return out;
}

}  // namespace plotbench
