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

#ifndef HFCE_TYPES_HPP
#define HFCE_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hfce {

using cplx = std::complex<double>;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

/// Uniform linear array along one axis, element positions centered on the
/// array midpoint: offset of element n (0-based) is (n - (N-1)/2) * d.
struct ArrayGeometry {
    int n_antennas = 256;          // N
    double wavelength = 0.01;      // lambda [m]
    double element_spacing = 0.005; // d [m], lambda/2 by default

    double element_offset(int n) const {
        return (static_cast<double>(n) - 0.5 * (n_antennas - 1)) * element_spacing;
    }
    double aperture() const { return (n_antennas - 1) * element_spacing; }

    void validate() const {
        if (n_antennas < 2) throw std::invalid_argument("ArrayGeometry: n_antennas must be >= 2");
        if (!(wavelength > 0.0)) throw std::invalid_argument("ArrayGeometry: wavelength must be > 0");
        if (!(element_spacing > 0.0)) throw std::invalid_argument("ArrayGeometry: element_spacing must be > 0");
    }

    bool operator==(const ArrayGeometry&) const = default;
};

/// Generation-side system description. n_paths and ff_ratio drive scene
/// sampling only; the estimator never sees them.
struct SystemConfig {
    ArrayGeometry array;
    int n_paths = 10;        // L
    double ff_ratio = 0.5;   // gamma in [0,1], fraction of far-field paths
    double rician_kappa = 0.0;
    double r_min = 10.0;     // [m]
    double r_max = 500.0;    // [m]
    double angle_min = -1.0; // sine-of-angle units
    double angle_max = 1.0;

    double carrier_freq() const { return kSpeedOfLight / array.wavelength; }

    void validate() const {
        array.validate();
        if (n_paths < 1) throw std::invalid_argument("SystemConfig: n_paths must be >= 1");
        if (ff_ratio < 0.0 || ff_ratio > 1.0)
            throw std::invalid_argument("SystemConfig: ff_ratio must lie in [0, 1]");
        if (rician_kappa < 0.0) throw std::invalid_argument("SystemConfig: rician_kappa must be >= 0");
        if (!(r_min > 0.0)) throw std::invalid_argument("SystemConfig: r_min must be > 0");
        if (r_max < r_min) throw std::invalid_argument("SystemConfig: r_max must be >= r_min");
        if (angle_min < -1.0 || angle_max > 1.0 || angle_min > angle_max)
            throw std::invalid_argument("SystemConfig: angle range must be a subset of [-1, 1]");
    }

    bool operator==(const SystemConfig&) const = default;
};

enum class PathKind { FarField, NearField, LineOfSight };

inline const char* to_string(PathKind k) {
    switch (k) {
        case PathKind::FarField: return "far_field";
        case PathKind::NearField: return "near_field";
        case PathKind::LineOfSight: return "line_of_sight";
    }
    return "?";
}

/// One propagation path. Far-field paths carry no distance. Gains are the
/// effective per-path gains: line-of-sight sqrt(kappa/(kappa+1)), scattered
/// paths CN(0, 1/(kappa+1)).
struct PathComponent {
    PathKind kind = PathKind::FarField;
    cplx gain{0.0, 0.0};
    double angle = 0.0;                 // sine-of-angle, in [-1, 1]
    std::optional<double> distance{};   // [m]; unset for FarField

    bool operator==(const PathComponent&) const = default;
};

/// Ground-truth path list plus the channel vector it synthesizes to.
struct Scene {
    std::vector<PathComponent> paths;
    cvec channel;
    SystemConfig config;

    bool operator==(const Scene& o) const {
        return paths == o.paths && config == o.config &&
               channel.size() == o.channel.size() && channel == o.channel;
    }
};

} // namespace hfce

#endif // HFCE_TYPES_HPP
