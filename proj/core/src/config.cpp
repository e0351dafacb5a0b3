#include "plotbench/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace plotbench {

namespace {

void require(const json& j, const char* key, const char* ctx) {
    if (!j.is_object() || !j.contains(key)) {
        throw std::runtime_error(std::string("config: missing key '") + ctx + "'");
    }
}

template <typename T>
T get_field(const json& j, const char* key, const char* ctx) {
    require(j, key, ctx);
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw std::runtime_error(std::string("config: wrong type at '") + ctx + "'");
    }
}

void collect_paths(const json& node, const std::string& prefix, std::vector<std::string>& out) {
    for (const auto& [key, value] : node.items()) {
        const std::string path = prefix.empty() ? key : prefix + "." + key;
        out.push_back(path);
        if (value.is_object()) {
            collect_paths(value, path, out);
        }
        // arrays count once: no recursion into elements
    }
}

void check_finite(const json& node, const std::string& path) {
    if (node.is_number_float()) {
        const double v = node.get<double>();
        if (!std::isfinite(v)) {
            throw std::invalid_argument("canonical_dump: non-finite number at '" + path + "'");
        }
    } else if (node.is_object()) {
        for (const auto& [key, value] : node.items()) {
            check_finite(value, path.empty() ? key : path + "." + key);
        }
    } else if (node.is_array()) {
        int i = 0;
        for (const auto& value : node) {
            check_finite(value, path + "[" + std::to_string(i++) + "]");
        }
    }
}

void check_range(std::vector<Violation>& out, const std::string& path, double v,
                 std::optional<double> lo, std::optional<double> hi,
                 bool lo_exclusive = false, bool hi_exclusive = false) {
    if (!std::isfinite(v)) {
        out.push_back({path, "value is not finite"});
        return;
    }
    if (lo && (lo_exclusive ? v <= *lo : v < *lo)) {
        out.push_back({path, "value " + std::to_string(v) + " below " +
                                 (lo_exclusive ? "or at exclusive minimum " : "minimum ") +
                                 std::to_string(*lo)});
    }
    if (hi && (hi_exclusive ? v >= *hi : v > *hi)) {
        out.push_back({path, "value " + std::to_string(v) + " above " +
                                 (hi_exclusive ? "or at exclusive maximum " : "maximum ") +
                                 std::to_string(*hi)});
    }
}

}  // namespace

SchemaManifest SchemaManifest::from_json(const json& j) {
    SchemaManifest m;
    m.key_order = j.at("key_order").get<std::vector<std::string>>();
    for (const auto& [key, spec] : j.at("fields").items()) {
        FieldSpec f;
        f.type = spec.value("type", "");
        if (spec.contains("unit") && spec.at("unit").is_string()) f.unit = spec.at("unit").get<std::string>();
        f.items = spec.value("items", "");
        f.description = spec.value("description", "");
        if (spec.contains("min")) f.min = spec.at("min").get<double>();
        if (spec.contains("max")) f.max = spec.at("max").get<double>();
        if (spec.contains("min_exclusive")) {
            // "min_exclusive": 0.0 means min is 0.0 and exclusive
            f.min = spec.at("min_exclusive").get<double>();
            f.min_exclusive = true;
        }
        f.max_exclusive = spec.value("max_exclusive", false);
        m.fields[key] = f;
    }
    if (j.contains("soil_categories")) {
        m.soil_categories = j.at("soil_categories").get<std::vector<std::string>>();
    }
    return m;
}

SchemaManifest SchemaManifest::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("schema manifest: cannot open " + path);
    json j = json::parse(in);
    return from_json(j);
}

std::vector<Violation> validate(const SimulationConfig& c, const SchemaManifest* manifest) {
    std::vector<Violation> v;
    if (c.seed < 0) v.push_back({"seed", "seed must be >= 0"});

    check_range(v, "metadata.dap", c.metadata.dap, 0.0, 200.0);

    if (manifest && !manifest->soil_categories.empty()) {
        bool known = false;
        for (const auto& label : manifest->soil_categories) {
            if (label == c.environment.soil_category) known = true;
        }
        if (!known) v.push_back({"environment.soil_category",
                                 "unknown label '" + c.environment.soil_category + "'"});
    }
    check_range(v, "environment.soil_specular_coefficient", c.environment.soil_specular_coefficient, 0.0, 1.0);
    check_range(v, "environment.sun_elevation_deg", c.environment.sun_elevation_deg, 0.0, 90.0);
    check_range(v, "environment.sun_azimuth_deg", c.environment.sun_azimuth_deg, 0.0, 360.0, false, true);

    check_range(v, "field.plot_width_m", c.field.plot_width_m, 0.0, std::nullopt, true);
    check_range(v, "field.plot_length_m", c.field.plot_length_m, 0.0, std::nullopt, true);
    if (c.field.num_beds < 1) v.push_back({"field.num_beds", "must be >= 1"});

    const double half_w = c.field.plot_width_m / 2.0;
    const double half_l = c.field.plot_length_m / 2.0;
    for (std::size_t pi = 0; pi < c.field.plots.size(); ++pi) {
        const auto& plot = c.field.plots[pi];
        for (std::size_t i = 0; i < plot.plants.size(); ++i) {
            const auto& pt = plot.plants[i];
            const std::string path = "field.plots[" + std::to_string(pi) + "].plants[" + std::to_string(i) + "]";
            if (!std::isfinite(pt.x) || !std::isfinite(pt.y)) {
                v.push_back({path, "coordinates must be finite"});
            } else if (pt.x < -half_w || pt.x > half_w || pt.y < -half_l || pt.y > half_l) {
                v.push_back({path, "plant outside plot extents"});
            }
        }
    }

    check_range(v, "plant_properties.prospect_n", c.plant_properties.prospect_n, 1.0, std::nullopt);
    check_range(v, "plant_properties.chlorophyll_ug_cm2", c.plant_properties.chlorophyll_ug_cm2, 0.0, std::nullopt);
    check_range(v, "plant_properties.carotenoid_ug_cm2", c.plant_properties.carotenoid_ug_cm2, 0.0, std::nullopt);
    check_range(v, "plant_properties.anthocyanin_ug_cm2", c.plant_properties.anthocyanin_ug_cm2, 0.0, std::nullopt);
    check_range(v, "plant_properties.water_g_cm2", c.plant_properties.water_g_cm2, 0.0, std::nullopt);
    check_range(v, "plant_properties.dry_matter_g_cm2", c.plant_properties.dry_matter_g_cm2, 0.0, std::nullopt);
    check_range(v, "plant_properties.leaf_pitch_deg", c.plant_properties.leaf_pitch_deg, 0.0, 90.0);

    check_range(v, "camera.shutter_speed_s", c.camera.shutter_speed_s, 0.0, std::nullopt, true);
    if (c.camera.iso <= 0) v.push_back({"camera.iso", "must be > 0"});
    if (c.camera.resolution_w_px <= 0 || c.camera.resolution_h_px <= 0) {
        v.push_back({"camera.resolution", "resolution components must be positive"});
    }
    check_range(v, "camera.height_m", c.camera.height_m, 0.0, std::nullopt, true);
    for (double comp : c.camera.lookat) {
        if (!std::isfinite(comp)) {
            v.push_back({"camera.lookat", "components must be finite"});
            break;
        }
    }
    return v;
}

std::vector<std::string> flatten_keys(const json& doc) {
    std::vector<std::string> out;
    if (doc.is_object()) collect_paths(doc, "", out);
    return out;
}

json to_json(const SimulationConfig& c) {
    json j = json::object();
    j["seed"] = c.seed;
    j["metadata"] = {
        {"year", c.metadata.year},
        {"location", c.metadata.location},
        {"plant_type", c.metadata.plant_type},
        {"dap", c.metadata.dap},
    };
    j["environment"] = {
        {"soil_category", c.environment.soil_category},
        {"soil_specular_coefficient", c.environment.soil_specular_coefficient},
        {"sun_elevation_deg", c.environment.sun_elevation_deg},
        {"sun_azimuth_deg", c.environment.sun_azimuth_deg},
    };
    json plots = json::array();
    for (const auto& plot : c.field.plots) {
        json plants = json::array();
        for (const auto& pt : plot.plants) {
            plants.push_back(json::array({pt.x, pt.y}));
        }
        plots.push_back({{"bed_id", plot.bed_id}, {"row_id", plot.row_id}, {"plants", plants}});
    }
    j["field"] = {
        {"plot_width_m", c.field.plot_width_m},
        {"plot_length_m", c.field.plot_length_m},
        {"num_beds", c.field.num_beds},
        {"plots", plots},
    };
    j["plant_properties"] = {
        {"prospect_n", c.plant_properties.prospect_n},
        {"chlorophyll_ug_cm2", c.plant_properties.chlorophyll_ug_cm2},
        {"carotenoid_ug_cm2", c.plant_properties.carotenoid_ug_cm2},
        {"anthocyanin_ug_cm2", c.plant_properties.anthocyanin_ug_cm2},
        {"water_g_cm2", c.plant_properties.water_g_cm2},
        {"dry_matter_g_cm2", c.plant_properties.dry_matter_g_cm2},
        {"leaf_pitch_deg", c.plant_properties.leaf_pitch_deg},
    };
    j["camera"] = {
        {"shutter_speed_s", c.camera.shutter_speed_s},
        {"iso", c.camera.iso},
        {"resolution", json::array({c.camera.resolution_w_px, c.camera.resolution_h_px})},
        {"model", c.camera.model},
        {"height_m", c.camera.height_m},
        {"lookat", json::array({c.camera.lookat[0], c.camera.lookat[1], c.camera.lookat[2]})},
    };
    return j;
}

json to_json(const ResponseDocument& d) {
    json j = json::object();
    j["reasoning"] = d.reasoning;
    json cfg = to_json(d.config);
    for (auto& [key, value] : cfg.items()) {
        j[key] = value;
    }
    return j;
}

SimulationConfig config_from_json(const json& j) {
    SimulationConfig c;
    c.seed = get_field<long long>(j, "seed", "seed");

    require(j, "metadata", "metadata");
    const json& md = j.at("metadata");
    c.metadata.year = get_field<int>(md, "year", "metadata.year");
    c.metadata.location = get_field<std::string>(md, "location", "metadata.location");
    c.metadata.plant_type = get_field<std::string>(md, "plant_type", "metadata.plant_type");
    c.metadata.dap = get_field<int>(md, "dap", "metadata.dap");

    require(j, "environment", "environment");
    const json& env = j.at("environment");
    c.environment.soil_category = get_field<std::string>(env, "soil_category", "environment.soil_category");
    c.environment.soil_specular_coefficient =
        get_field<double>(env, "soil_specular_coefficient", "environment.soil_specular_coefficient");
    c.environment.sun_elevation_deg = get_field<double>(env, "sun_elevation_deg", "environment.sun_elevation_deg");
    c.environment.sun_azimuth_deg = get_field<double>(env, "sun_azimuth_deg", "environment.sun_azimuth_deg");

    require(j, "field", "field");
    const json& fl = j.at("field");
    c.field.plot_width_m = get_field<double>(fl, "plot_width_m", "field.plot_width_m");
    c.field.plot_length_m = get_field<double>(fl, "plot_length_m", "field.plot_length_m");
    c.field.num_beds = get_field<int>(fl, "num_beds", "field.num_beds");
    require(fl, "plots", "field.plots");
    if (!fl.at("plots").is_array()) throw std::runtime_error("config: wrong type at 'field.plots'");
    for (const auto& pj : fl.at("plots")) {
        Plot plot;
        plot.bed_id = get_field<int>(pj, "bed_id", "field.plots[].bed_id");
        plot.row_id = get_field<int>(pj, "row_id", "field.plots[].row_id");
        require(pj, "plants", "field.plots[].plants");
        for (const auto& pt : pj.at("plants")) {
            if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number()) {
                throw std::runtime_error("config: plant entries must be [x, y] numbers");
            }
            plot.plants.push_back({pt[0].get<double>(), pt[1].get<double>()});
        }
        c.field.plots.push_back(std::move(plot));
    }

    require(j, "plant_properties", "plant_properties");
    const json& pp = j.at("plant_properties");
    c.plant_properties.prospect_n = get_field<double>(pp, "prospect_n", "plant_properties.prospect_n");
    c.plant_properties.chlorophyll_ug_cm2 =
        get_field<double>(pp, "chlorophyll_ug_cm2", "plant_properties.chlorophyll_ug_cm2");
    c.plant_properties.carotenoid_ug_cm2 =
        get_field<double>(pp, "carotenoid_ug_cm2", "plant_properties.carotenoid_ug_cm2");
    c.plant_properties.anthocyanin_ug_cm2 =
        get_field<double>(pp, "anthocyanin_ug_cm2", "plant_properties.anthocyanin_ug_cm2");
    c.plant_properties.water_g_cm2 = get_field<double>(pp, "water_g_cm2", "plant_properties.water_g_cm2");
    c.plant_properties.dry_matter_g_cm2 =
        get_field<double>(pp, "dry_matter_g_cm2", "plant_properties.dry_matter_g_cm2");
    c.plant_properties.leaf_pitch_deg = get_field<double>(pp, "leaf_pitch_deg", "plant_properties.leaf_pitch_deg");

    require(j, "camera", "camera");
    const json& cam = j.at("camera");
    c.camera.shutter_speed_s = get_field<double>(cam, "shutter_speed_s", "camera.shutter_speed_s");
    c.camera.iso = get_field<int>(cam, "iso", "camera.iso");
    require(cam, "resolution", "camera.resolution");
    const json& res = cam.at("resolution");
    if (!res.is_array() || res.size() != 2) throw std::runtime_error("config: camera.resolution must be [w, h]");
    c.camera.resolution_w_px = res[0].get<int>();
    c.camera.resolution_h_px = res[1].get<int>();
    c.camera.model = get_field<std::string>(cam, "model", "camera.model");
    c.camera.height_m = get_field<double>(cam, "height_m", "camera.height_m");
    require(cam, "lookat", "camera.lookat");
    const json& la = cam.at("lookat");
    if (!la.is_array() || la.size() != 3) throw std::runtime_error("config: camera.lookat must be [x, y, z]");
    for (int i = 0; i < 3; ++i) c.camera.lookat[i] = la[i].get<double>();

    return c;
}

std::string canonical_dump(const json& j) {
    check_finite(j, "");
    return j.dump(2);
}

std::string canonical_serialize(const SimulationConfig& c) { return canonical_dump(to_json(c)); }

std::string canonical_serialize(const ResponseDocument& d) { return canonical_dump(to_json(d)); }

}  // namespace plotbench
