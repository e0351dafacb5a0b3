#include "plotbench/geometry.hpp"

#include <cmath>
#include <limits>

namespace plotbench {

namespace {

// average nearest-neighbor distance from p to q
double directed_avg_nn(const std::vector<Point2>& p, const std::vector<Point2>& q) {
    double sum = 0.0;
    for (const auto& a : p) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& b : q) {
            const double dx = a.x - b.x;
            const double dy = a.y - b.y;
            const double d2 = dx * dx + dy * dy;
            if (d2 < best) best = d2;
        }
        sum += std::sqrt(best);
    }
    return sum / static_cast<double>(p.size());
}

}  // namespace

double chamfer_distance(const std::vector<Point2>& s1, const std::vector<Point2>& s2) {
    if (s1.empty() || s2.empty()) {
        throw EmptySetError("chamfer_distance: empty point set");
    }
    return directed_avg_nn(s1, s2) + directed_avg_nn(s2, s1);
}

double chamfer_distance(const PointSet& s1, const PointSet& s2) {
    return chamfer_distance(s1.points, s2.points);
}

double mae(const std::vector<double>& pred, const std::vector<double>& truth) {
    if (pred.size() != truth.size() || pred.empty()) {
        throw LengthMismatchError("mae: length mismatch or empty input");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        sum += std::fabs(pred[i] - truth[i]);
    }
    return sum / static_cast<double>(pred.size());
}

double circular_mae_deg(const std::vector<double>& pred_deg, const std::vector<double>& truth_deg) {
    if (pred_deg.size() != truth_deg.size() || pred_deg.empty()) {
        throw LengthMismatchError("circular_mae_deg: length mismatch or empty input");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < pred_deg.size(); ++i) {
        double d = std::fabs(pred_deg[i] - truth_deg[i]);
        if (d > 360.0) d = std::fmod(d, 360.0);
        sum += std::min(d, 360.0 - d);
    }
    return sum / static_cast<double>(pred_deg.size());
}

Point2 rel_to_meters(double rx, double ry, double extent_w_m, double extent_h_m) {
    return {(rx - 0.5) * extent_w_m, -(ry - 0.5) * extent_h_m};
}

void meters_to_rel(const Point2& p, double extent_w_m, double extent_h_m, double& rx, double& ry) {
    rx = p.x / extent_w_m + 0.5;
    ry = 0.5 - p.y / extent_h_m;
}

Point2 continuous_px_to_meters(double cx, double cy, int img_w_px, int img_h_px,
                               double extent_w_m, double extent_h_m) {
    return rel_to_meters(cx / img_w_px, cy / img_h_px, extent_w_m, extent_h_m);
}

Point2 pixel_to_meters(int px, int py, int img_w_px, int img_h_px,
                       double extent_w_m, double extent_h_m) {
    if (px < 0 || px >= img_w_px || py < 0 || py >= img_h_px) {
        throw std::out_of_range("pixel_to_meters: pixel outside image");
    }
    return continuous_px_to_meters(px + 0.5, py + 0.5, img_w_px, img_h_px, extent_w_m, extent_h_m);
}

void meters_to_continuous_px(const Point2& p, int img_w_px, int img_h_px,
                             double extent_w_m, double extent_h_m, double& cx, double& cy) {
    double rx = 0.0;
    double ry = 0.0;
    meters_to_rel(p, extent_w_m, extent_h_m, rx, ry);
    cx = rx * img_w_px;
    cy = ry * img_h_px;
}

}  // namespace plotbench
