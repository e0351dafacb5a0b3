#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "plotbench/config.hpp"
#include "plotbench/detect.hpp"
#include "plotbench/geometry.hpp"
#include "plotbench/raster.hpp"

namespace plotbench {

struct UniformRange {
    double low = 0.0;
    double high = 0.0;
};

// Sampling ranges for the scalar config fields, keyed by dotted path, plus
// categorical choices and fixed values. Loaded from the dataset manifest.
struct ParamRanges {
    std::map<std::string, UniformRange> uniform;
    std::map<std::string, std::vector<std::string>> choices;
    json fixed = json::object();  // dotted path -> fixed JSON value
};

// Deterministic for a fixed seed: every sampled scalar uniform within its
// range, categorical fields uniform over their choices, plants copied from
// the layout, plot extents from the layout's extents.
SimulationConfig sample_config(std::uint64_t seed, const ParamRanges& ranges,
                               const PointSet& layout, int dap);

// Theoretical MAE of always guessing the midpoint of a uniform range.
double mean_guess_mae_uniform(double low, double high);

// Empirical mean-guess MAE for non-uniform parameters: mean |x_i - mean(x)|.
double mean_guess_mae_empirical(const std::vector<double>& xs);

// Per-parameter mean-guess baseline for every uniform range.
std::map<std::string, double> mean_guess_mae(const ParamRanges& ranges);

// n points evenly spaced along y within 90% of the extent (cell centers),
// x jittered around 0. Deterministic per seed.
PointSet synth_row_layout(int n_plants, double extent_h_m, std::uint64_t jitter_seed,
                          double jitter_half_width_m = 0.075);

struct ImageEntry {
    std::string id;
    std::string path;          // image file, relative to the manifest
    std::string truth_config;  // ground-truth config JSON, relative to the manifest
    int dap = 0;
};

struct RealImageEntry {
    std::string id;
    std::string path;
    std::string coco;  // COCO annotation file holding this image's boxes
    int dap = 0;
    std::string capture_utc;  // ISO-8601, for the solar ground truth
};

struct FewShotEntry {
    std::string image;   // image reference for method 4/5 turns
    std::string answer;  // answer-document JSON file
};

struct SunSite {
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
    double utc_offset_hours = 0.0;
};

struct LayoutSettings {
    std::string source = "synthetic";  // "synthetic" | "detected"
    int plant_count_low = 5;
    int plant_count_high = 20;
    double row_jitter_frac = 0.05;  // of plot width
};

// Everything the harness needs to run on one dataset: geometry of the images,
// sampling ranges, detection and raster settings, and the image lists.
struct DatasetManifest {
    std::string base_dir;  // directory of the manifest file; resolves relative paths
    std::string schema_manifest_path;
    double extent_w_m = 1.3521;
    double extent_h_m = 3.8405;
    int image_w_px = 381;
    int image_h_px = 1080;
    std::vector<int> dap_stages{10, 30, 50, 70, 90};
    DetectParams detection;
    RasterParams raster;
    ParamRanges ranges;
    LayoutSettings layout;
    SunSite sun;
    std::vector<ImageEntry> images;
    std::vector<RealImageEntry> real_images;
    std::vector<FewShotEntry> fewshot;

    static DatasetManifest load(const std::string& path);
    json to_json() const;
    void save(const std::string& path) const;

    std::string resolve(const std::string& relative) const;
    SchemaManifest load_schema() const;
};

}  // namespace plotbench
