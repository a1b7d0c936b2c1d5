#include "combimots/objective.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

namespace combimots {

Transform Transform::affine(double a, double b) {
    if (a == 0.0) {
        throw ConfigError("affine transform requires a != 0");
    }
    return {TransformKind::Affine, a, b};
}

double Transform::operator()(double raw) const {
    if (!std::isfinite(raw)) {
        throw ValueError("transform: non-finite raw value");
    }
    double t = 0.0;
    switch (kind) {
        case TransformKind::Identity:
            t = raw;
            break;
        case TransformKind::Docking:
            t = -raw / 20.0;
            break;
        case TransformKind::SyntheticAccessibility:
            t = (10.0 - raw) / 9.0;
            break;
        case TransformKind::Affine:
            t = a * raw + b;
            break;
    }
    return std::clamp(t, 0.0, 1.0);
}

ObjectiveVector ObjectiveSpec::transform(const ObjectiveVector& raw) const {
    if (raw.size() != count()) {
        throw DimensionError("raw vector has dimension " +
                             std::to_string(raw.size()) + ", spec has " +
                             std::to_string(count()));
    }
    ObjectiveVector out(count());
    for (Index d = 0; d < count(); ++d) {
        out[d] = objectives[static_cast<std::size_t>(d)].transform(raw[d]);
    }
    return out;
}

ObjectiveVector ObjectiveSpec::utopia() const {
    ObjectiveVector u(count());
    for (Index d = 0; d < count(); ++d) {
        u[d] = objectives[static_cast<std::size_t>(d)].utopia;
    }
    return u;
}

ObjectiveSpec ObjectiveSpec::default_four() {
    ObjectiveSpec spec;
    spec.objectives = {
        {"activity_1", RawDirection::Maximize, Transform::identity(), 1.0},
        {"activity_2", RawDirection::Maximize, Transform::identity(), 1.0},
        {"docking_1", RawDirection::Minimize, Transform::docking(), 1.0},
        {"docking_2", RawDirection::Minimize, Transform::docking(), 1.0},
    };
    return spec;
}

namespace {

Transform parse_transform(const nlohmann::json& j) {
    const std::string kind = j.is_string() ? j.get<std::string>()
                                           : j.at("kind").get<std::string>();
    if (kind == "identity") return Transform::identity();
    if (kind == "docking") return Transform::docking();
    if (kind == "synthetic_accessibility" || kind == "sa") {
        return Transform::synthetic_accessibility();
    }
    if (kind == "affine") {
        return Transform::affine(j.at("a").get<double>(), j.at("b").get<double>());
    }
    throw ConfigError("unknown transform kind: " + kind);
}

}  // namespace

ObjectiveSpec ObjectiveSpec::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open objective spec file: " + path);
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("objective spec parse failure in " + path + ": " + e.what());
    }
    ObjectiveSpec spec;
    for (const auto& item : doc.at("objectives")) {
        Objective obj;
        obj.name = item.at("name").get<std::string>();
        const std::string dir = item.value("direction", std::string("maximize"));
        if (dir == "maximize") {
            obj.raw_direction = RawDirection::Maximize;
        } else if (dir == "minimize") {
            obj.raw_direction = RawDirection::Minimize;
        } else {
            throw ConfigError("unknown objective direction: " + dir);
        }
        obj.transform = parse_transform(item.value("transform", nlohmann::json("identity")));
        obj.utopia = item.value("utopia", 1.0);
        spec.objectives.push_back(std::move(obj));
    }
    if (spec.objectives.empty()) {
        throw ConfigError("objective spec must define at least one objective");
    }
    return spec;
}

}  // namespace combimots
