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

#ifndef HFCE_STEERING_HPP
#define HFCE_STEERING_HPP

#include "types.hpp"

#include <cmath>

namespace hfce {

// Sign conventions, fixed library-wide:
//   - far_steering(theta)[n]           = exp(-j*pi*n*theta), n = 0..N-1
//   - near_steering_exact(theta, r)[n] = exp(-j*2*pi/lambda * (r_n - r)),
//     r_n the exact element-to-source distance with centered element offsets
//   - near_steering_fresnel is the second-order expansion of the exact model
//     in the inverse distance rho = 1/r, so fresnel(theta, 1/r) tracks
//     exact(theta, r) as r grows. Its rho -> 0 limit therefore matches
//     far_steering(-theta) up to a global unit-modulus phase; the two
//     families are only ever compared up to that global factor.

/// Plane-wave steering vector, unnormalized (unit-modulus entries, norm sqrt(N)).
/// `angle` is the sine of the azimuth angle.
inline cvec far_steering(double angle, int n_antennas) {
    if (angle < -1.0 || angle > 1.0)
        throw std::invalid_argument("far_steering: angle must lie in [-1, 1] (sine units)");
    if (n_antennas < 1) throw std::invalid_argument("far_steering: n_antennas must be >= 1");
    cvec a(n_antennas);
    for (int n = 0; n < n_antennas; ++n) {
        const double phase = -M_PI * n * angle;
        a(n) = cplx(std::cos(phase), std::sin(phase));
    }
    return a;
}

/// Spherical-wave steering vector for a source at the given distance,
/// unnormalized. Element-to-source distances come from the exact law of
/// cosines with centered element offsets.
inline cvec near_steering_exact(double angle, double distance, const ArrayGeometry& geom) {
    if (angle < -1.0 || angle > 1.0)
        throw std::invalid_argument("near_steering_exact: angle must lie in [-1, 1]");
    if (!(distance > 0.0))
        throw std::invalid_argument("near_steering_exact: distance must be > 0");
    const int n_ant = geom.n_antennas;
    const double two_pi_over_lambda = 2.0 * M_PI / geom.wavelength;
    cvec a(n_ant);
    for (int n = 0; n < n_ant; ++n) {
        const double offset = geom.element_offset(n);
        const double r_n = std::sqrt(distance * distance - 2.0 * distance * offset * angle +
                                     offset * offset);
        const double phase = -two_pi_over_lambda * (r_n - distance);
        a(n) = cplx(std::cos(phase), std::sin(phase));
    }
    return a;
}

/// Second-order (Fresnel) spherical-wave model parametrized by the inverse
/// distance rho = 1/r; rho = 0 encodes the far-field limit. Unnormalized.
inline cvec near_steering_fresnel(double angle, double inv_distance, const ArrayGeometry& geom) {
    if (angle < -1.0 || angle > 1.0)
        throw std::invalid_argument("near_steering_fresnel: angle must lie in [-1, 1]");
    if (inv_distance < 0.0)
        throw std::invalid_argument("near_steering_fresnel: inv_distance must be >= 0");
    const int n_ant = geom.n_antennas;
    const double two_pi_over_lambda = 2.0 * M_PI / geom.wavelength;
    cvec a(n_ant);
    for (int n = 0; n < n_ant; ++n) {
        const double md = geom.element_offset(n);
        const double r_m = -md * angle + 0.5 * md * md * (1.0 - angle * angle) * inv_distance;
        const double phase = -two_pi_over_lambda * r_m;
        a(n) = cplx(std::cos(phase), std::sin(phase));
    }
    return a;
}

/// Near/far boundary 2*R^2/lambda with R the array aperture.
inline double rayleigh_distance(const ArrayGeometry& geom) {
    const double r = geom.aperture();
    return 2.0 * r * r / geom.wavelength;
}

} // namespace hfce

#endif // HFCE_STEERING_HPP
