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

#ifndef HFCE_CHANNEL_HPP
#define HFCE_CHANNEL_HPP

#include "random.hpp"
#include "steering.hpp"
#include "types.hpp"

#include <cmath>
#include <cstdint>

namespace hfce {

/// Steering vector of a single path: exact spherical model when a distance
/// below the Rayleigh boundary is present, plane-wave model otherwise.
/// A line-of-sight path beyond the Rayleigh distance reduces to the
/// far-field form.
inline cvec path_steering(const PathComponent& path, const ArrayGeometry& geom) {
    const bool near = path.distance.has_value() &&
                      *path.distance < rayleigh_distance(geom);
    if (path.kind == PathKind::NearField || (path.kind == PathKind::LineOfSight && near)) {
        if (!path.distance.has_value())
            throw std::invalid_argument("path_steering: near-field path without distance");
        return near_steering_exact(path.angle, *path.distance, geom);
    }
    return far_steering(path.angle, geom.n_antennas);
}

/// Superposes the path list into a channel vector:
///   h = sum_{LoS} gain * a(theta, r) + sqrt(1/L) * sum_{NLoS} gain * a(.)
/// with L the number of non-line-of-sight paths. The Rician power split is
/// carried by the stored gains (see sample_scene), not re-applied here.
inline cvec synthesize_channel(const std::vector<PathComponent>& paths, const SystemConfig& config) {
    if (paths.empty()) throw std::invalid_argument("synthesize_channel: empty path list");
    const ArrayGeometry& geom = config.array;
    int n_nlos = 0;
    for (const auto& p : paths)
        if (p.kind != PathKind::LineOfSight) ++n_nlos;
    const double nlos_scale = n_nlos > 0 ? std::sqrt(1.0 / n_nlos) : 0.0;

    cvec h = cvec::Zero(geom.n_antennas);
    for (const auto& p : paths) {
        if (p.kind == PathKind::NearField) {
            if (!p.distance.has_value() || !(*p.distance < rayleigh_distance(geom)))
                throw std::invalid_argument(
                    "synthesize_channel: near-field path requires distance below the Rayleigh boundary");
        } else if (p.kind == PathKind::FarField) {
            if (p.distance.has_value() && *p.distance < rayleigh_distance(geom))
                throw std::invalid_argument(
                    "synthesize_channel: far-field path carries a distance below the Rayleigh boundary");
        }
        const double scale = p.kind == PathKind::LineOfSight ? 1.0 : nlos_scale;
        h += (scale * p.gain) * path_steering(p, geom);
    }
    return h;
}

/// Draws a random hybrid-field scene: round(gamma*L) far-field paths and the
/// remaining near-field paths, plus one deterministic line-of-sight path when
/// kappa > 0. Angles are uniform over the configured sine range; near-field
/// distances uniform over [r_min, min(r_max, rayleigh)). Deterministic in the
/// seed.
inline Scene sample_scene(const SystemConfig& config, std::uint64_t rng_seed) {
    config.validate();
    const int l_total = config.n_paths;
    const int l_far = static_cast<int>(std::lround(config.ff_ratio * l_total));
    const int l_near = l_total - l_far;

    const double d_rayleigh = rayleigh_distance(config.array);
    const double nf_hi = std::min(config.r_max, d_rayleigh);
    if (l_near > 0 && !(nf_hi > config.r_min))
        throw std::invalid_argument(
            "sample_scene: empty near-field distance interval (Rayleigh distance below r_min)");

    std::mt19937_64 rng(rng_seed);
    const double nlos_var = 1.0 / (config.rician_kappa + 1.0);

    Scene scene;
    scene.config = config;
    scene.paths.reserve(static_cast<std::size_t>(l_total) + 1);
    for (int i = 0; i < l_far; ++i) {
        PathComponent p;
        p.kind = PathKind::FarField;
        p.angle = uniform_in(rng, config.angle_min, config.angle_max);
        p.gain = complex_gaussian(rng, nlos_var);
        scene.paths.push_back(p);
    }
    for (int i = 0; i < l_near; ++i) {
        PathComponent p;
        p.kind = PathKind::NearField;
        p.angle = uniform_in(rng, config.angle_min, config.angle_max);
        p.distance = uniform_in(rng, config.r_min, nf_hi);
        p.gain = complex_gaussian(rng, nlos_var);
        scene.paths.push_back(p);
    }
    if (config.rician_kappa > 0.0) {
        PathComponent p;
        p.kind = PathKind::LineOfSight;
        p.angle = uniform_in(rng, config.angle_min, config.angle_max);
        p.distance = uniform_in(rng, config.r_min, config.r_max);
        p.gain = std::sqrt(config.rician_kappa / (config.rician_kappa + 1.0));
        scene.paths.push_back(p);
    }
    scene.channel = synthesize_channel(scene.paths, config);
    return scene;
}

} // namespace hfce

#endif // HFCE_CHANNEL_HPP
