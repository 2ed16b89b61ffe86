// hfce - hybrid-field channel estimation for extremely large aperture arrays
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef HFCE_SCENE_IO_HPP
#define HFCE_SCENE_IO_HPP

#include "types.hpp"

#include <json.hpp>

#include <fstream>
#include <string>

namespace hfce {

// JSON persistence for generated scenes. Doubles serialize with
// shortest-round-trip formatting, so a load reproduces the scene exactly.

inline nlohmann::json to_json(const SystemConfig& cfg) {
    return {{"n", cfg.array.n_antennas},
            {"lambda", cfg.array.wavelength},
            {"d", cfg.array.element_spacing},
            {"l", cfg.n_paths},
            {"gamma", cfg.ff_ratio},
            {"kappa", cfg.rician_kappa},
            {"r_min", cfg.r_min},
            {"r_max", cfg.r_max},
            {"theta_min", cfg.angle_min},
            {"theta_max", cfg.angle_max}};
}

inline SystemConfig system_config_from_json(const nlohmann::json& j) {
    SystemConfig cfg;
    cfg.array.n_antennas = j.at("n").get<int>();
    cfg.array.wavelength = j.at("lambda").get<double>();
    cfg.array.element_spacing = j.at("d").get<double>();
    cfg.n_paths = j.at("l").get<int>();
    cfg.ff_ratio = j.at("gamma").get<double>();
    cfg.rician_kappa = j.at("kappa").get<double>();
    cfg.r_min = j.at("r_min").get<double>();
    cfg.r_max = j.at("r_max").get<double>();
    cfg.angle_min = j.at("theta_min").get<double>();
    cfg.angle_max = j.at("theta_max").get<double>();
    cfg.validate();
    return cfg;
}

inline nlohmann::json to_json(const Scene& scene) {
    nlohmann::json paths = nlohmann::json::array();
    for (const auto& p : scene.paths) {
        nlohmann::json jp = {{"kind", to_string(p.kind)},
                             {"gain", {p.gain.real(), p.gain.imag()}},
                             {"angle", p.angle}};
        if (p.distance.has_value()) jp["distance"] = *p.distance;
        paths.push_back(std::move(jp));
    }
    nlohmann::json channel = nlohmann::json::array();
    for (Eigen::Index n = 0; n < scene.channel.size(); ++n)
        channel.push_back({scene.channel(n).real(), scene.channel(n).imag()});
    return {{"config", to_json(scene.config)}, {"paths", std::move(paths)},
            {"channel", std::move(channel)}};
}

inline Scene scene_from_json(const nlohmann::json& j) {
    Scene scene;
    scene.config = system_config_from_json(j.at("config"));
    for (const auto& jp : j.at("paths")) {
        PathComponent p;
        const std::string kind = jp.at("kind").get<std::string>();
        if (kind == "far_field")
            p.kind = PathKind::FarField;
        else if (kind == "near_field")
            p.kind = PathKind::NearField;
        else if (kind == "line_of_sight")
            p.kind = PathKind::LineOfSight;
        else
            throw std::invalid_argument("scene_from_json: unknown path kind '" + kind + "'");
        p.gain = cplx(jp.at("gain").at(0).get<double>(), jp.at("gain").at(1).get<double>());
        p.angle = jp.at("angle").get<double>();
        if (jp.contains("distance")) p.distance = jp.at("distance").get<double>();
        scene.paths.push_back(std::move(p));
    }
    const auto& jc = j.at("channel");
    scene.channel.resize(static_cast<Eigen::Index>(jc.size()));
    for (std::size_t n = 0; n < jc.size(); ++n)
        scene.channel(static_cast<Eigen::Index>(n)) =
            cplx(jc.at(n).at(0).get<double>(), jc.at(n).at(1).get<double>());
    return scene;
}

inline void save_scene(const Scene& scene, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("save_scene: cannot open '" + path + "'");
    out << to_json(scene).dump(2) << '\n';
    if (!out.flush()) throw std::runtime_error("save_scene: write failed for '" + path + "'");
}

inline Scene load_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_scene: cannot open '" + path + "'");
    nlohmann::json j;
    in >> j;
    return scene_from_json(j);
}

} // namespace hfce

#endif // HFCE_SCENE_IO_HPP
