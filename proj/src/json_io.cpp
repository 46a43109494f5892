#include "reslab/json_io.hpp"

#include <fstream>
#include <vector>

#include "reslab/errors.hpp"

namespace reslab {

PointConfig parse_config(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ValidationError("config: top level must be an object");
    if (!doc.contains("alpha") || !doc["alpha"].is_number()) {
        throw ValidationError("config: missing numeric field \"alpha\"");
    }
    if (!doc.contains("points") || !doc["points"].is_array()) {
        throw ValidationError("config: missing array field \"points\"");
    }
    std::vector<Vec3> points;
    points.reserve(doc["points"].size());
    for (const auto& entry : doc["points"]) {
        if (!entry.is_array() || entry.size() != 3) {
            throw ValidationError("config: each point must be an [x, y, z] triple");
        }
        Vec3 p;
        for (int i = 0; i < 3; ++i) {
            if (!entry[static_cast<size_t>(i)].is_number()) {
                throw ValidationError("config: point coordinates must be numbers");
            }
            p[static_cast<size_t>(i)] = entry[static_cast<size_t>(i)].get<double>();
        }
        points.push_back(p);
    }
    return make_config(std::move(points), doc["alpha"].get<double>());
}

PointConfig read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("config: " + std::string(e.what()));
    }
    return parse_config(doc);
}

nlohmann::json config_to_json(const PointConfig& config) {
    nlohmann::json doc;
    doc["alpha"] = config.alpha;
    doc["points"] = nlohmann::json::array();
    for (const Vec3& p : config.points) {
        doc["points"].push_back({p[0], p[1], p[2]});
    }
    return doc;
}

void write_config(const std::string& path, const PointConfig& config) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open file for writing: " + path);
    out << config_to_json(config).dump(2) << "\n";
    if (!out) throw IoError("failed writing config to: " + path);
}

}  // namespace reslab
