#pragma once

#include <stdexcept>
#include <vector>

namespace plotbench {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }

// Plant positions in meters in the plot-local frame: origin at the image
// center, x across the row, y along the row, image-down mapping to -y.
struct PointSet {
    std::vector<Point2> points;
    double extent_w_m = 0.0;
    double extent_h_m = 0.0;

    [[nodiscard]] bool empty() const { return points.empty(); }
    [[nodiscard]] std::size_t size() const { return points.size(); }
};

class EmptySetError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class LengthMismatchError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// d(P,Q) + d(Q,P), where d is the average nearest-neighbor distance from one
// set to the other. Throws EmptySetError if either set is empty; callers that
// treat an empty prediction as its own outcome must check before calling.
double chamfer_distance(const std::vector<Point2>& s1, const std::vector<Point2>& s2);
double chamfer_distance(const PointSet& s1, const PointSet& s2);

double mae(const std::vector<double>& pred, const std::vector<double>& truth);

// Angular MAE with wraparound: per-pair error min(|d|, 360-|d|). Inputs in degrees.
double circular_mae_deg(const std::vector<double>& pred_deg, const std::vector<double>& truth_deg);

// Relative image coordinates (rx right, ry down, in [0,1]) to plot-local meters:
// x = (rx - 0.5) * extent_w, y = -(ry - 0.5) * extent_h.
Point2 rel_to_meters(double rx, double ry, double extent_w_m, double extent_h_m);

// Inverse of rel_to_meters.
void meters_to_rel(const Point2& p, double extent_w_m, double extent_h_m, double& rx, double& ry);

// Continuous pixel coordinates (origin at the top-left corner of the image,
// pixel index i spanning [i, i+1)) to meters.
Point2 continuous_px_to_meters(double cx, double cy, int img_w_px, int img_h_px,
                               double extent_w_m, double extent_h_m);

// Integer pixel index to meters, using the pixel center. Throws std::out_of_range
// for pixels outside the image.
Point2 pixel_to_meters(int px, int py, int img_w_px, int img_h_px,
                       double extent_w_m, double extent_h_m);

// Meters back to continuous pixel coordinates.
void meters_to_continuous_px(const Point2& p, int img_w_px, int img_h_px,
                             double extent_w_m, double extent_h_m, double& cx, double& cy);

}  // namespace plotbench
