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

#ifndef HFCE_OBSERVATION_HPP
#define HFCE_OBSERVATION_HPP

#include "random.hpp"
#include "types.hpp"

#include <cmath>
#include <cstdint>

namespace hfce {

/// Pilot length and per-entry noise variance of the post-correlation
/// observation. The orthogonal pilot itself is never materialized: with
/// ||Phi||^2 = tau, correlating by Phi/sqrt(tau) preserves the per-entry
/// noise variance, so the sufficient statistic is y = sqrt(tau)*h + n.
struct PilotConfig {
    int pilot_length = 1;      // tau
    double noise_variance = 0; // sigma^2

    void validate() const {
        if (pilot_length < 1) throw std::invalid_argument("PilotConfig: pilot_length must be >= 1");
        if (noise_variance < 0.0)
            throw std::invalid_argument("PilotConfig: noise_variance must be >= 0");
    }

    bool operator==(const PilotConfig&) const = default;
};

struct Observation {
    cvec y;            // length N
    PilotConfig pilot;
};

/// y = sqrt(tau)*h + n with n i.i.d. CN(0, sigma^2). Deterministic in the seed.
inline Observation observe(const cvec& h, const PilotConfig& pilot, std::uint64_t rng_seed) {
    pilot.validate();
    Observation obs;
    obs.pilot = pilot;
    obs.y = std::sqrt(static_cast<double>(pilot.pilot_length)) * h;
    if (pilot.noise_variance > 0.0) {
        std::mt19937_64 rng(rng_seed);
        for (Eigen::Index n = 0; n < obs.y.size(); ++n)
            obs.y(n) += complex_gaussian(rng, pilot.noise_variance);
    }
    return obs;
}

/// Noise variance realizing a per-antenna post-correlation receive SNR:
/// sigma^2 = tau * avg_power / 10^(snr_db/10), avg_power = E||h||^2 / N.
inline double sigma_for_snr(double snr_db, int tau, double avg_power) {
    if (!(avg_power > 0.0)) throw std::invalid_argument("sigma_for_snr: avg_power must be > 0");
    if (tau < 1) throw std::invalid_argument("sigma_for_snr: tau must be >= 1");
    return tau * avg_power / std::pow(10.0, snr_db / 10.0);
}

} // namespace hfce

#endif // HFCE_OBSERVATION_HPP
