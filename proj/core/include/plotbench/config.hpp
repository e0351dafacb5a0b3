#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "plotbench/geometry.hpp"

namespace plotbench {

// insertion-ordered JSON everywhere; key order is part of the serialization contract
using json = nlohmann::ordered_json;

struct Metadata {
    int year = 0;
    std::string location;
    std::string plant_type;
    int dap = 0;  // days after planting
};

struct Environment {
    std::string soil_category;
    double soil_specular_coefficient = 0.0;
    double sun_elevation_deg = 0.0;
    double sun_azimuth_deg = 0.0;  // clockwise from north, [0, 360)
};

struct Plot {
    int bed_id = 0;
    int row_id = 0;
    std::vector<Point2> plants;  // meters, plot-local frame
};

struct FieldLayout {
    double plot_width_m = 0.0;
    double plot_length_m = 0.0;
    int num_beds = 1;
    std::vector<Plot> plots;
};

struct PlantProperties {
    double prospect_n = 1.0;  // mesophyll layers
    double chlorophyll_ug_cm2 = 0.0;
    double carotenoid_ug_cm2 = 0.0;
    double anthocyanin_ug_cm2 = 0.0;
    double water_g_cm2 = 0.0;
    double dry_matter_g_cm2 = 0.0;
    double leaf_pitch_deg = 0.0;
};

struct Camera {
    double shutter_speed_s = 0.002;
    int iso = 100;
    int resolution_w_px = 0;
    int resolution_h_px = 0;
    std::string model;
    double height_m = 1.0;
    std::array<double, 3> lookat{0.0, 0.0, -1.0};
};

// The full plot-simulation document. Serialization follows the schema
// manifest's key order exactly.
struct SimulationConfig {
    long long seed = 0;
    Metadata metadata;
    Environment environment;
    FieldLayout field;
    PlantProperties plant_properties;
    Camera camera;
};

// A model answer: free-text reasoning plus the config. Serialized with
// "reasoning" as the first key and the config sections inlined after it.
struct ResponseDocument {
    std::string reasoning;
    SimulationConfig config;
};

struct Violation {
    std::string path;  // dotted key path, e.g. "environment.sun_elevation_deg"
    std::string message;
};

struct FieldSpec {
    std::string type;  // integer | number | string | object | array
    std::string unit;
    std::string items;  // free-text shape hint for arrays
    std::string description;
    std::optional<double> min;
    std::optional<double> max;
    bool min_exclusive = false;
    bool max_exclusive = false;
};

// Machine-readable schema description shipped with the repo; the single source
// of truth for key order, types, units, ranges, and soil category labels.
struct SchemaManifest {
    std::vector<std::string> key_order;  // dotted paths, schema order
    std::map<std::string, FieldSpec> fields;
    std::vector<std::string> soil_categories;

    static SchemaManifest from_json(const json& j);
    static SchemaManifest load(const std::string& path);
};

// Violations are data, not failures: empty result iff every invariant holds.
// Soil category labels are checked only when a manifest with a non-empty
// label list is supplied.
std::vector<Violation> validate(const SimulationConfig& c, const SchemaManifest* manifest = nullptr);

// Dotted key paths of a JSON object: every object member yields a path and is
// recursed into; an array-valued member yields exactly one path. Order is
// document order, unique.
std::vector<std::string> flatten_keys(const json& doc);

json to_json(const SimulationConfig& c);
json to_json(const ResponseDocument& d);

// Strict struct extraction; throws std::runtime_error naming the offending key.
SimulationConfig config_from_json(const json& j);

// Deterministic dump: schema key order, 2-space indent, shortest round-trip
// float formatting. Throws std::invalid_argument on non-finite numbers.
std::string canonical_dump(const json& j);
std::string canonical_serialize(const SimulationConfig& c);
std::string canonical_serialize(const ResponseDocument& d);

}  // namespace plotbench
