#include "plotbench/detect.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace plotbench {

namespace {

constexpr double kExgMin = -1.0;
constexpr double kExgMax = 2.0;
constexpr int kHistBins = 256;

int clamp_bin(double v) {
    const int bin = static_cast<int>((v - kExgMin) / (kExgMax - kExgMin) * kHistBins);
    return std::clamp(bin, 0, kHistBins - 1);
}

double bin_center(int bin) {
    return kExgMin + (bin + 0.5) * (kExgMax - kExgMin) / kHistBins;
}

}  // namespace

std::vector<double> exg_map(const ImageRGB8& img) {
    std::vector<double> out(static_cast<std::size_t>(img.width) * img.height, 0.0);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const std::uint8_t* px = img.px(x, y);
            const double sum = static_cast<double>(px[0]) + px[1] + px[2];
            if (sum <= 0.0) continue;
            const double r = px[0] / sum;
            const double g = px[1] / sum;
            const double b = px[2] / sum;
            out[static_cast<std::size_t>(y) * img.width + x] = 2.0 * g - r - b;
        }
    }
    return out;
}

double otsu_threshold(const std::vector<double>& exg) {
    std::array<std::int64_t, kHistBins> hist{};
    for (double v : exg) ++hist[clamp_bin(v)];

    const double total = static_cast<double>(exg.size());
    double sum_all = 0.0;
    for (int i = 0; i < kHistBins; ++i) sum_all += hist[i] * bin_center(i);

    double best_var = -1.0;
    int best_bin = 0;
    double w0 = 0.0;
    double sum0 = 0.0;
    for (int t = 0; t < kHistBins; ++t) {
        w0 += hist[t];
        if (w0 <= 0.0) continue;
        const double w1 = total - w0;
        if (w1 <= 0.0) break;
        sum0 += hist[t] * bin_center(t);
        const double mu0 = sum0 / w0;
        const double mu1 = (sum_all - sum0) / w1;
        const double between = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
        if (between > best_var) {
            best_var = between;
            best_bin = t;
        }
    }
    return bin_center(best_bin);
}

std::vector<std::uint8_t> segment(const std::vector<double>& exg, int width, int height,
                                  const DetectParams& params) {
    double threshold = params.fixed_threshold;
    if (params.threshold_mode == "otsu") {
        threshold = std::max(otsu_threshold(exg), params.otsu_floor);
    }
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(width) * height, 0);
    for (std::size_t i = 0; i < mask.size(); ++i) {
        mask[i] = exg[i] > threshold ? 1 : 0;
    }
    return mask;
}

double Blob::centroid_x() const {
    double s = 0.0;
    for (const auto& [x, y] : pixels) s += x;
    return s / static_cast<double>(pixels.size());
}

double Blob::centroid_y() const {
    double s = 0.0;
    for (const auto& [x, y] : pixels) s += y;
    return s / static_cast<double>(pixels.size());
}

std::vector<Blob> detect_blobs(const std::vector<std::uint8_t>& mask, int width, int height,
                               int min_area_px) {
    std::vector<std::uint8_t> visited(mask.size(), 0);
    std::vector<Blob> blobs;
    std::vector<std::pair<int, int>> stack;

    for (int sy = 0; sy < height; ++sy) {
        for (int sx = 0; sx < width; ++sx) {
            const std::size_t si = static_cast<std::size_t>(sy) * width + sx;
            if (!mask[si] || visited[si]) continue;

            Blob blob;
            blob.min_x = blob.max_x = sx;
            blob.min_y = blob.max_y = sy;
            stack.clear();
            stack.emplace_back(sx, sy);
            visited[si] = 1;
            while (!stack.empty()) {
                const auto [x, y] = stack.back();
                stack.pop_back();
                blob.pixels.emplace_back(x, y);
                blob.min_x = std::min(blob.min_x, x);
                blob.max_x = std::max(blob.max_x, x);
                blob.min_y = std::min(blob.min_y, y);
                blob.max_y = std::max(blob.max_y, y);
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        const int nx = x + dx;
                        const int ny = y + dy;
                        if (nx < 0 || nx >= width || ny < 0 || ny >= height) continue;
                        const std::size_t ni = static_cast<std::size_t>(ny) * width + nx;
                        if (mask[ni] && !visited[ni]) {
                            visited[ni] = 1;
                            stack.emplace_back(nx, ny);
                        }
                    }
                }
            }
            if (blob.area_px() >= min_area_px) blobs.push_back(std::move(blob));
        }
    }
    return blobs;
}

std::vector<Blob> split_merged(const Blob& blob, double median_plant_extent_px,
                               double split_factor, bool row_axis_is_y) {
    const double extent = row_axis_is_y ? blob.extent_y() : blob.extent_x();
    if (median_plant_extent_px <= 0.0 || extent <= split_factor * median_plant_extent_px) {
        return {blob};
    }
    const int n = std::max(2, static_cast<int>(std::lround(extent / median_plant_extent_px)));
    const double lo = row_axis_is_y ? blob.min_y : blob.min_x;
    const double slice = extent / n;

    std::vector<Blob> slices(n);
    for (const auto& [x, y] : blob.pixels) {
        const double coord = row_axis_is_y ? y : x;
        int k = static_cast<int>((coord - lo) / slice);
        k = std::clamp(k, 0, n - 1);
        Blob& b = slices[k];
        if (b.pixels.empty()) {
            b.min_x = b.max_x = x;
            b.min_y = b.max_y = y;
        } else {
            b.min_x = std::min(b.min_x, x);
            b.max_x = std::max(b.max_x, x);
            b.min_y = std::min(b.min_y, y);
            b.max_y = std::max(b.max_y, y);
        }
        b.pixels.emplace_back(x, y);
    }
    std::erase_if(slices, [](const Blob& b) { return b.pixels.empty(); });
    return slices;
}

PointSet detect_plants(const PlotImage& plot, const DetectParams& params) {
    const ImageRGB8& img = plot.image;
    const std::vector<double> exg = exg_map(img);
    const std::vector<std::uint8_t> mask = segment(exg, img.width, img.height, params);

    const int min_area = std::max(
        1, static_cast<int>(std::lround(params.min_area_fraction * img.width * img.height)));
    std::vector<Blob> blobs = detect_blobs(mask, img.width, img.height, min_area);

    const bool row_axis_is_y = img.height >= img.width;
    std::sort(blobs.begin(), blobs.end(), [&](const Blob& a, const Blob& b) {
        return row_axis_is_y ? a.centroid_y() < b.centroid_y() : a.centroid_x() < b.centroid_x();
    });

    std::vector<double> extents;
    extents.reserve(blobs.size());
    for (const auto& b : blobs) {
        extents.push_back(row_axis_is_y ? b.extent_y() : b.extent_x());
    }
    double median_extent = 0.0;
    if (!extents.empty()) {
        std::vector<double> sorted = extents;
        std::sort(sorted.begin(), sorted.end());
        const std::size_t mid = sorted.size() / 2;
        median_extent = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    }

    PointSet out;
    out.extent_w_m = plot.extent_w_m;
    out.extent_h_m = plot.extent_h_m;
    for (const auto& blob : blobs) {
        for (const auto& piece : split_merged(blob, median_extent, params.split_factor, row_axis_is_y)) {
            // pixel-index centroid -> continuous coordinate at pixel centers
            out.points.push_back(continuous_px_to_meters(piece.centroid_x() + 0.5,
                                                         piece.centroid_y() + 0.5, img.width,
                                                         img.height, plot.extent_w_m,
                                                         plot.extent_h_m));
        }
    }
    return out;
}

}  // namespace plotbench
