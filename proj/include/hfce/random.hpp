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

#ifndef HFCE_RANDOM_HPP
#define HFCE_RANDOM_HPP

#include "types.hpp"

#include <cstdint>
#include <random>

namespace hfce {

/// splitmix64 finalizer; used to derive independent substream seeds from a
/// master seed so Monte-Carlo trials are reproducible under any ordering.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
    return mix64(mix64(mix64(master ^ stream) + a) + b);
}

/// Circularly symmetric complex Gaussian CN(0, variance).
inline cplx complex_gaussian(std::mt19937_64& rng, double variance) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5 * variance));
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    if (lo == hi) return lo;
    std::uniform_real_distribution<double> u(lo, hi);
    return u(rng);
}

} // namespace hfce

#endif // HFCE_RANDOM_HPP
