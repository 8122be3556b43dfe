#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <yaml-cpp/yaml.h>

#include "io.hpp"

namespace wallcross {

// Either a blowup spec (fan + hypersurfaces on rays) or an explicit initial diagram.
struct RunConfig {
    int order = 3;
    int workers = 1;
    std::optional<BlowupSpec> spec;
    std::optional<ScatteringDiagram> initial;
    std::optional<VariableNames> names;

    ExponentMonoid monoid() const { return spec ? spec->monoid() : initial->monoid; }
    VariableNames variable_names() const { return names ? *names : VariableNames::defaults(monoid()); }

    ScatteringDiagram initial_diagram() const {
        if (spec) return wallcross::initial_diagram(*spec, order);
        ScatteringDiagram d{initial->monoid, order, {}, nullptr};
        for (const auto& w : initial->walls) d.walls.push_back(make_wall(w.support, w.function.rebound(order)));
        return d;
    }
};

namespace detail {

template <class T>
T yaml_as(const YAML::Node& node, const std::string& what) {
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        fail("ConfigError", "bad value for " + what);
    }
}

inline LatticeVector yaml_vector(const YAML::Node& node, const std::string& what) {
    return yaml_as<std::vector<Int>>(node, what);
}

inline Fan parse_fan(const YAML::Node& node) {
    if (!node["rays"] || !node["cones"]) fail("ConfigError", "fan needs rays and cones");
    Fan fan;
    for (const auto& r : node["rays"]) fan.rays.push_back(yaml_vector(r, "fan ray"));
    if (fan.rays.empty()) fail("ConfigError", "fan has no rays");
    fan.rank = static_cast<int>(fan.rays[0].size());
    for (const auto& c : node["cones"]) {
        auto idx = yaml_as<std::vector<int>>(c, "fan cone");
        std::sort(idx.begin(), idx.end());
        fan.maximal_cones.push_back(idx);
    }
    if (node["labels"]) fan.ray_labels = yaml_as<std::vector<std::string>>(node["labels"], "ray labels");
    return fan;
}

inline BlowupComponent parse_component(const Fan& fan, const YAML::Node& node) {
    if (!node["ray"]) fail("ConfigError", "blowup entry needs a ray");
    int ray = yaml_as<int>(node["ray"], "blowup ray");
    if (ray < 0 || ray >= static_cast<int>(fan.rays.size())) fail("ConfigError", "blowup ray index out of range");
    if (node["weights"]) {
        TropicalHypersurface t{quotient_fan(fan, ray), {}};
        for (const auto& entry : node["weights"]) {
            auto cone = yaml_as<std::vector<int>>(entry["cone"], "weighted cone");
            std::sort(cone.begin(), cone.end());
            t.weights[cone] = yaml_as<Int>(entry["weight"], "weight");
        }
        return {ray, t};
    }
    Int w = node["weight"] ? yaml_as<Int>(node["weight"], "weight") : 1;
    return {ray, constant_weight_hypersurface(fan, ray, w)};
}

}  // namespace detail

inline RunConfig parse_config(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        fail("ConfigError", std::string("invalid YAML: ") + e.what());
    }
    RunConfig cfg;
    if (root["order"]) cfg.order = detail::yaml_as<int>(root["order"], "order");
    if (root["workers"]) cfg.workers = detail::yaml_as<int>(root["workers"], "workers");
    if (root["fan"] && root["diagram"]) fail("ConfigError", "give either a fan or a diagram, not both");
    if (root["fan"]) {
        BlowupSpec spec{detail::parse_fan(root["fan"]), {}};
        for (const auto& b : root["blowups"]) spec.components.push_back(detail::parse_component(spec.fan, b));
        cfg.spec = spec;
    } else if (root["diagram"]) {
        cfg.initial = diagram_from_string(detail::yaml_as<std::string>(root["diagram"], "diagram"));
    } else {
        fail("ConfigError", "config needs a fan or a diagram");
    }
    if (root["variables"]) {
        VariableNames names = VariableNames::defaults(cfg.monoid());
        if (root["variables"]["m"]) names.m = detail::yaml_as<std::vector<std::string>>(root["variables"]["m"], "m variables");
        if (root["variables"]["t"]) names.t = detail::yaml_as<std::vector<std::string>>(root["variables"]["t"], "t variables");
        if (static_cast<int>(names.m.size()) != cfg.monoid().m_rank || static_cast<int>(names.t.size()) != cfg.monoid().t_rank())
            fail("ConfigError", "variable name lists do not match the monoid");
        cfg.names = names;
    }
    if (cfg.order < 1) fail("ConfigError", "order must be at least 1");
    if (cfg.workers < 1) fail("ConfigError", "workers must be at least 1");
    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("ConfigError", "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

inline const char* preset_text(const std::string& name) {
    if (name == "p3-two-lines")
        return R"(order: 6
fan:
  rays: [[1,0,0], [0,1,0], [0,0,1], [-1,-1,-1]]
  labels: [e1, e2, e3, e4]
  cones: [[0,1,2], [0,1,3], [0,2,3], [1,2,3]]
blowups:
  - ray: 0
    weight: 1
  - ray: 1
    weight: 1
)";
    if (name == "2d-basic")
        return R"(order: 3
diagram: |
  rank 2
  t_blocks 1 1
  order 3
  (1,0) (-1,0) | (-1,0) | 1 + t1*x
  (0,1) (0,-1) | (0,-1) | 1 + t2*y
)";
    fail("ConfigError", "unknown preset " + name);
}

inline RunConfig preset(const std::string& name) { return parse_config(preset_text(name)); }

}  // namespace wallcross
