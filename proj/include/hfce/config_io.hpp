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

#ifndef HFCE_CONFIG_IO_HPP
#define HFCE_CONFIG_IO_HPP

#include "estimator.hpp"
#include "harness.hpp"
#include "types.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace hfce {

/// Flat "[section] key = value" configuration, keys stored as "section.key".
/// Lines starting with '#' or ';' are comments.
using ConfigMap = std::map<std::string, std::string>;

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace detail

inline ConfigMap parse_config_text(const std::string& text) {
    ConfigMap map;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw std::invalid_argument("config: malformed section header at line " +
                                            std::to_string(lineno));
            section = detail::trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value at line " +
                                        std::to_string(lineno));
        const std::string key = detail::trim(t.substr(0, eq));
        const std::string value = detail::trim(t.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config: empty key at line " + std::to_string(lineno));
        map[section.empty() ? key : section + "." + key] = value;
    }
    return map;
}

inline ConfigMap load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

inline bool config_has(const ConfigMap& m, const std::string& key) { return m.count(key) > 0; }

inline std::string config_string(const ConfigMap& m, const std::string& key,
                                 const std::string& fallback) {
    const auto it = m.find(key);
    return it == m.end() ? fallback : it->second;
}

inline double config_double(const ConfigMap& m, const std::string& key, double fallback) {
    const auto it = m.find(key);
    if (it == m.end()) return fallback;
    char* end = nullptr;
    const double v = std::strtod(it->second.c_str(), &end);
    if (end == it->second.c_str())
        throw std::invalid_argument("config: '" + key + "' is not a number: " + it->second);
    return v;
}

inline long config_int(const ConfigMap& m, const std::string& key, long fallback) {
    const auto it = m.find(key);
    if (it == m.end()) return fallback;
    char* end = nullptr;
    const long v = std::strtol(it->second.c_str(), &end, 10);
    if (end == it->second.c_str())
        throw std::invalid_argument("config: '" + key + "' is not an integer: " + it->second);
    return v;
}

inline bool config_bool(const ConfigMap& m, const std::string& key, bool fallback) {
    const auto it = m.find(key);
    if (it == m.end()) return fallback;
    const std::string& v = it->second;
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw std::invalid_argument("config: '" + key + "' is not a boolean: " + v);
}

inline std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string t = detail::trim(item);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

inline std::vector<double> config_double_list(const ConfigMap& m, const std::string& key) {
    std::vector<double> out;
    for (const auto& s : split_list(config_string(m, key, ""))) {
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (end == s.c_str())
            throw std::invalid_argument("config: list '" + key + "' has a non-number: " + s);
        out.push_back(v);
    }
    return out;
}

/// [system] section: n, lambda or f_c, d (default lambda/2), l, gamma, kappa,
/// r_min, r_max, theta_min, theta_max.
inline SystemConfig system_config_from(const ConfigMap& m) {
    SystemConfig cfg;
    cfg.array.n_antennas = static_cast<int>(config_int(m, "system.n", cfg.array.n_antennas));
    if (config_has(m, "system.lambda"))
        cfg.array.wavelength = config_double(m, "system.lambda", cfg.array.wavelength);
    else if (config_has(m, "system.f_c"))
        cfg.array.wavelength = kSpeedOfLight / config_double(m, "system.f_c", 0.0);
    cfg.array.element_spacing =
        config_double(m, "system.d", 0.5 * cfg.array.wavelength);
    cfg.n_paths = static_cast<int>(config_int(m, "system.l", cfg.n_paths));
    cfg.ff_ratio = config_double(m, "system.gamma", cfg.ff_ratio);
    cfg.rician_kappa = config_double(m, "system.kappa", cfg.rician_kappa);
    cfg.r_min = config_double(m, "system.r_min", cfg.r_min);
    cfg.r_max = config_double(m, "system.r_max", cfg.r_max);
    cfg.angle_min = config_double(m, "system.theta_min", cfg.angle_min);
    cfg.angle_max = config_double(m, "system.theta_max", cfg.angle_max);
    cfg.validate();
    return cfg;
}

/// [estimator] section, keys named after the algorithm symbols:
/// epsilon, i_max, n_iter, zeta_theta, zeta_rho, zeta_th, tau_th.
inline EstimatorParams estimator_params_from(const ConfigMap& m) {
    EstimatorParams p;
    p.epsilon = config_double(m, "estimator.epsilon", p.epsilon);
    p.max_outer_iters = static_cast<int>(config_int(m, "estimator.i_max", p.max_outer_iters));
    p.n_refine_iters = static_cast<int>(config_int(m, "estimator.n_iter", p.n_refine_iters));
    p.step_theta = config_double(m, "estimator.zeta_theta", p.step_theta);
    p.step_rho = config_double(m, "estimator.zeta_rho", p.step_rho);
    p.step_floor = config_double(m, "estimator.zeta_th", p.step_floor);
    p.gain_tol = config_double(m, "estimator.tau_th", p.gain_tol);
    p.validate();
    return p;
}

/// [dictionary], [pilot] and [sweep] sections on top of system + estimator.
inline SweepSpec sweep_spec_from(const ConfigMap& m) {
    SweepSpec spec;
    spec.system = system_config_from(m);
    spec.estimator = estimator_params_from(m);
    spec.q_far = static_cast<int>(config_int(m, "dictionary.q_f", spec.system.array.n_antennas));
    spec.q_angle =
        static_cast<int>(config_int(m, "dictionary.q_angle", spec.system.array.n_antennas));
    spec.n_rings = static_cast<int>(config_int(m, "dictionary.n_rings", 1));
    spec.pilot_length = static_cast<int>(config_int(m, "pilot.tau", 1));
    spec.snr_grid_db = config_double_list(m, "sweep.snr_db");
    spec.n_trials = static_cast<int>(config_int(m, "sweep.n_trials", 1));
    spec.schemes = split_list(config_string(m, "sweep.schemes", "epsilon-omp-ssigw"));
    spec.seed = static_cast<std::uint64_t>(config_int(m, "sweep.seed", 1));
    spec.output_path = config_string(m, "sweep.output", "sweep.csv");
    spec.cov_train_scenes = static_cast<int>(config_int(m, "sweep.cov_train", 1000));
    spec.power_probe_scenes = static_cast<int>(config_int(m, "sweep.power_probe", 500));
    spec.epsilon_scale = config_double(m, "sweep.epsilon_scale", 1.0);
    spec.measure_runtime = config_bool(m, "sweep.measure_runtime", true);
    spec.validate();
    return spec;
}

} // namespace hfce

#endif // HFCE_CONFIG_IO_HPP
