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

#ifndef HFCE_DICTIONARY_HPP
#define HFCE_DICTIONARY_HPP

#include "steering.hpp"
#include "types.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace hfce {

enum class AtomDomain { Angular, Polar };

inline const char* to_string(AtomDomain d) {
    return d == AtomDomain::Angular ? "angular" : "polar";
}

/// Grid parameters behind one dictionary column. Angular atoms live on the
/// sine grid with inv_distance = 0; polar atoms add an inverse-distance ring.
struct AtomMeta {
    AtomDomain domain = AtomDomain::Angular;
    double angle = 0.0;        // sine-of-angle grid point
    double inv_distance = 0.0; // rho = 1/r grid point; 0 for Angular

    bool operator==(const AtomMeta&) const = default;
};

/// Cell-centered sine grid on [-1, 1]: avoids duplicated atoms at the
/// endpoints and keeps |theta| < 1 strictly.
inline double grid_angle(int q, int q_total) {
    return -1.0 + (2.0 * q + 1.0) / q_total;
}

/// Unit-norm column for the given atom parameters. Dictionary construction
/// and atom refinement both go through here, so a column is always bit-exactly
/// reproducible from its parameters.
inline cvec make_atom_column(AtomDomain domain, double angle, double inv_distance,
                             const ArrayGeometry& geom) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(geom.n_antennas));
    if (domain == AtomDomain::Angular)
        return scale * far_steering(angle, geom.n_antennas);
    return scale * near_steering_fresnel(angle, inv_distance, geom);
}

inline cvec atom_column(const AtomMeta& meta, const ArrayGeometry& geom) {
    return make_atom_column(meta.domain, meta.angle, meta.inv_distance, geom);
}

/// Column-normalized measurement dictionary [U, V]: q_far plane-wave atoms on
/// the angular grid followed by q_near Fresnel atoms on the angle x ring grid.
/// Carries the geometry and the refinement bound on rho so estimation needs
/// nothing else from the generating configuration.
struct HybridDictionary {
    cmat columns;                // N x (q_far + q_near)
    std::vector<AtomMeta> meta;  // size q_far + q_near
    int q_far = 0;
    int q_near = 0;
    ArrayGeometry geometry;
    double rho_max = 0.0;        // 1/r_min; upper bound for rho refinement

    int size() const { return q_far + q_near; }
};

inline std::pair<cmat, std::vector<AtomMeta>> build_angular_dictionary(int q_far,
                                                                       const SystemConfig& config) {
    if (q_far < 1) throw std::invalid_argument("build_angular_dictionary: q_far must be >= 1");
    config.array.validate();
    const int n = config.array.n_antennas;
    cmat cols(n, q_far);
    std::vector<AtomMeta> meta(q_far);
    for (int q = 0; q < q_far; ++q) {
        meta[q] = AtomMeta{AtomDomain::Angular, grid_angle(q, q_far), 0.0};
        cols.col(q) = atom_column(meta[q], config.array);
    }
    return {std::move(cols), std::move(meta)};
}

/// One atom per (grid angle, ring) pair, rings uniform in rho = 1/r:
/// rho_s = (s - 1/2) * rho_max / n_rings, s = 1..n_rings, rho_max = 1/r_min.
inline std::pair<cmat, std::vector<AtomMeta>> build_polar_dictionary(int q_angle, int n_rings,
                                                                     const SystemConfig& config) {
    if (q_angle < 1) throw std::invalid_argument("build_polar_dictionary: q_angle must be >= 1");
    if (n_rings < 1) throw std::invalid_argument("build_polar_dictionary: n_rings must be >= 1");
    config.array.validate();
    if (!(config.r_min > 0.0)) throw std::invalid_argument("build_polar_dictionary: r_min must be > 0");
    const int n = config.array.n_antennas;
    const double rho_max = 1.0 / config.r_min;
    cmat cols(n, q_angle * n_rings);
    std::vector<AtomMeta> meta(static_cast<std::size_t>(q_angle) * n_rings);
    int j = 0;
    for (int q = 0; q < q_angle; ++q) {
        const double angle = grid_angle(q, q_angle);
        for (int s = 1; s <= n_rings; ++s, ++j) {
            const double rho = (s - 0.5) * rho_max / n_rings;
            meta[j] = AtomMeta{AtomDomain::Polar, angle, rho};
            cols.col(j) = atom_column(meta[j], config.array);
        }
    }
    return {std::move(cols), std::move(meta)};
}

/// Concatenates the angular and polar blocks. q_angle * n_rings == 0 yields an
/// angular-only dictionary.
inline HybridDictionary build_hybrid_dictionary(const SystemConfig& config, int q_far,
                                                int q_angle, int n_rings) {
    HybridDictionary dict;
    dict.geometry = config.array;
    dict.rho_max = 1.0 / config.r_min;

    auto [u, u_meta] = build_angular_dictionary(q_far, config);
    dict.q_far = q_far;
    if (q_angle > 0 && n_rings > 0) {
        auto [v, v_meta] = build_polar_dictionary(q_angle, n_rings, config);
        if (v.rows() != u.rows())
            throw std::invalid_argument("build_hybrid_dictionary: block dimension mismatch");
        dict.q_near = static_cast<int>(v.cols());
        dict.columns.resize(u.rows(), u.cols() + v.cols());
        dict.columns << u, v;
        dict.meta = std::move(u_meta);
        dict.meta.insert(dict.meta.end(), v_meta.begin(), v_meta.end());
    } else {
        dict.q_near = 0;
        dict.columns = std::move(u);
        dict.meta = std::move(u_meta);
    }
    return dict;
}

inline const AtomMeta& atom_meta(const HybridDictionary& dict, int index) {
    if (index < 0 || index >= dict.size())
        throw std::out_of_range("atom_meta: index out of range");
    return dict.meta[static_cast<std::size_t>(index)];
}

} // namespace hfce

#endif // HFCE_DICTIONARY_HPP
