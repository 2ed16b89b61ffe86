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

#ifndef HFCE_HARNESS_HPP
#define HFCE_HARNESS_HPP

#include "baselines.hpp"
#include "channel.hpp"
#include "dictionary.hpp"
#include "estimator.hpp"
#include "observation.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace hfce {

inline double nmse(const cvec& h_hat, const cvec& h) {
    if (h_hat.size() != h.size()) throw std::invalid_argument("nmse: length mismatch");
    const double denom = h.squaredNorm();
    if (denom == 0.0) throw std::invalid_argument("nmse: zero reference channel");
    return (h_hat - h).squaredNorm() / denom;
}

inline const std::vector<std::string>& known_schemes() {
    static const std::vector<std::string> names = {
        "ls", "mmse", "ff-omp", "hf-omp-gamma", "epsilon-omp", "epsilon-omp-ssigw"};
    return names;
}

/// Full description of one Monte-Carlo experiment. Per SNR point the stopping
/// threshold tracks the post-correlation noise floor, epsilon =
/// epsilon_scale * sigma^2 / tau; estimator.epsilon itself is not consulted
/// during sweeps. measure_runtime=false writes zero runtimes, which makes
/// repeated runs byte-identical.
struct SweepSpec {
    SystemConfig system;
    EstimatorParams estimator;
    int q_far = 256;
    int q_angle = 256;
    int n_rings = 1;
    int pilot_length = 1; // tau
    std::vector<double> snr_grid_db;
    int n_trials = 1;
    std::vector<std::string> schemes;
    std::uint64_t seed = 1;
    std::string output_path = "sweep.csv";
    int cov_train_scenes = 1000;  // LMMSE training set, held out from evaluation
    int power_probe_scenes = 500; // scenes used to estimate E||h||^2 / N
    double epsilon_scale = 1.0;
    bool measure_runtime = true;

    void validate() const {
        system.validate();
        if (snr_grid_db.empty()) throw std::invalid_argument("SweepSpec: empty SNR grid");
        if (n_trials < 1) throw std::invalid_argument("SweepSpec: n_trials must be >= 1");
        if (schemes.empty()) throw std::invalid_argument("SweepSpec: no schemes requested");
        for (const auto& s : schemes)
            if (std::find(known_schemes().begin(), known_schemes().end(), s) ==
                known_schemes().end())
                throw std::invalid_argument("SweepSpec: unknown scheme '" + s + "'");
        if (q_far < 1) throw std::invalid_argument("SweepSpec: q_far must be >= 1");
        if (q_angle < 0 || n_rings < 0)
            throw std::invalid_argument("SweepSpec: q_angle and n_rings must be >= 0");
        if (pilot_length < 1) throw std::invalid_argument("SweepSpec: pilot_length must be >= 1");
        if (!(epsilon_scale > 0.0))
            throw std::invalid_argument("SweepSpec: epsilon_scale must be > 0");
        if (power_probe_scenes < 1)
            throw std::invalid_argument("SweepSpec: power_probe_scenes must be >= 1");
    }
};

struct SweepRow {
    std::string scheme;
    double snr_db = 0.0;
    double mean_nmse = 0.0;
    double mean_iterations = 0.0;
    double mean_runtime_s = 0.0;
    int trials = 0;

    bool operator==(const SweepRow&) const = default;
};

struct SweepResult {
    std::vector<SweepRow> rows;         // sorted by (scheme, snr_db)
    std::vector<double> stderr_nmse;    // parallel to rows; plot data only, not in the CSV

    bool operator==(const SweepResult& o) const { return rows == o.rows; }
};

namespace detail {

// substream tags for seed derivation
inline constexpr std::uint64_t kSceneStream = 0x5ce7e5eedULL;
inline constexpr std::uint64_t kNoiseStream = 0x7015e5eedULL;
inline constexpr std::uint64_t kPowerStream = 0x90e25eedULL;
inline constexpr std::uint64_t kCovStream = 0xc0f5eedULL;

struct TrialAccumulator {
    double nmse_sum = 0.0;
    double nmse_sq_sum = 0.0;
    double iter_sum = 0.0;
    double runtime_sum = 0.0;
    int count = 0;

    void add(double v, double iters, double runtime) {
        nmse_sum += v;
        nmse_sq_sum += v * v;
        iter_sum += iters;
        runtime_sum += runtime;
        ++count;
    }
    double mean_nmse() const { return count > 0 ? nmse_sum / count : 0.0; }
    double stderr_nmse() const {
        if (count < 2) return 0.0;
        const double m = mean_nmse();
        const double var = (nmse_sq_sum - count * m * m) / (count - 1);
        return std::sqrt(std::max(0.0, var) / count);
    }
};

} // namespace detail

/// Runs every requested scheme on identical per-trial observations and
/// averages NMSE, iteration count and wall-clock time per (scheme, SNR) pair.
/// Fully deterministic in the seed: scene and noise seeds derive from it by a
/// fixed splitting rule, independent of the scheme list and its order.
/// A scheme failing on one trial is dropped from that trial only; the row's
/// trial count records how many succeeded.
inline SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    const SystemConfig& cfg = spec.system;

    const HybridDictionary dict =
        build_hybrid_dictionary(cfg, spec.q_far, spec.q_angle, spec.n_rings);
    const bool want_ff = std::find(spec.schemes.begin(), spec.schemes.end(), "ff-omp") !=
                         spec.schemes.end();
    HybridDictionary dict_ff;
    if (want_ff) dict_ff = build_hybrid_dictionary(cfg, spec.q_far, 0, 0);

    // Average per-antenna channel power over a probe set, for the SNR mapping.
    double avg_power = 0.0;
    for (int k = 0; k < spec.power_probe_scenes; ++k) {
        const Scene s = sample_scene(cfg, derive_seed(spec.seed, detail::kPowerStream, k));
        avg_power += s.channel.squaredNorm() / cfg.array.n_antennas;
    }
    avg_power /= spec.power_probe_scenes;

    CovarianceModel cov;
    if (std::find(spec.schemes.begin(), spec.schemes.end(), "mmse") != spec.schemes.end()) {
        std::vector<Scene> train;
        train.reserve(spec.cov_train_scenes);
        for (int k = 0; k < spec.cov_train_scenes; ++k)
            train.push_back(sample_scene(cfg, derive_seed(spec.seed, detail::kCovStream, k)));
        cov = empirical_covariance(train);
    }

    const double tau = static_cast<double>(spec.pilot_length);
    std::map<std::pair<std::string, double>, detail::TrialAccumulator> acc;

    for (std::size_t si = 0; si < spec.snr_grid_db.size(); ++si) {
        const double snr_db = spec.snr_grid_db[si];
        const double sigma2 = sigma_for_snr(snr_db, spec.pilot_length, avg_power);
        EstimatorParams params = spec.estimator;
        // Noiseless points get a tiny positive floor so the stopping rule
        // stays well-defined.
        params.epsilon = spec.epsilon_scale * std::max(sigma2, 1e-24 * avg_power) / tau;

        for (int trial = 0; trial < spec.n_trials; ++trial) {
            const Scene scene =
                sample_scene(cfg, derive_seed(spec.seed, detail::kSceneStream, si, trial));
            const Observation obs =
                observe(scene.channel, PilotConfig{spec.pilot_length, sigma2},
                        derive_seed(spec.seed, detail::kNoiseStream, si, trial));

            for (const auto& scheme : spec.schemes) {
                double iters = 0.0;
                cvec h_hat;
                const auto t0 = std::chrono::steady_clock::now();
                try {
                    if (scheme == "ls") {
                        h_hat = ls_estimate(obs);
                    } else if (scheme == "mmse") {
                        h_hat = mmse_estimate(obs, cov);
                    } else if (scheme == "ff-omp") {
                        auto res = ff_omp(obs, dict_ff, cfg.n_paths);
                        h_hat = std::move(res.h_hat);
                        iters = res.iterations;
                    } else if (scheme == "hf-omp-gamma") {
                        auto res = hf_omp_gamma(obs, dict, cfg.n_paths, cfg.ff_ratio);
                        h_hat = std::move(res.h_hat);
                        iters = res.iterations;
                    } else if (scheme == "epsilon-omp") {
                        EstimatorParams p0 = params;
                        p0.n_refine_iters = 0;
                        auto res = estimate(obs, dict, p0);
                        h_hat = std::move(res.h_hat);
                        iters = res.iterations;
                    } else { // epsilon-omp-ssigw
                        auto res = estimate(obs, dict, params);
                        h_hat = std::move(res.h_hat);
                        iters = res.iterations;
                    }
                } catch (const std::exception&) {
                    continue; // recorded through the row's trial count
                }
                const auto t1 = std::chrono::steady_clock::now();
                const double runtime =
                    spec.measure_runtime ? std::chrono::duration<double>(t1 - t0).count() : 0.0;
                acc[{scheme, snr_db}].add(nmse(h_hat, scene.channel), iters, runtime);
            }
        }
    }

    SweepResult result;
    for (const auto& [key, a] : acc) {
        SweepRow row;
        row.scheme = key.first;
        row.snr_db = key.second;
        row.mean_nmse = a.mean_nmse();
        row.mean_iterations = a.count > 0 ? a.iter_sum / a.count : 0.0;
        row.mean_runtime_s = a.count > 0 ? a.runtime_sum / a.count : 0.0;
        row.trials = a.count;
        result.rows.push_back(std::move(row));
        result.stderr_nmse.push_back(a.stderr_nmse());
    }
    return result; // std::map iteration order is already (scheme, snr_db)
}

// --------------------------------------------------------------------------
// Closed-form operation counts of the compared estimators.
// --------------------------------------------------------------------------

using ComplexityParams = std::map<std::string, double>;

namespace detail {

inline double need(const ComplexityParams& p, const char* key, const char* scheme) {
    const auto it = p.find(key);
    if (it == p.end())
        throw std::invalid_argument(std::string("complexity_eval: scheme '") + scheme +
                                    "' requires parameter '" + key + "'");
    return it->second;
}

} // namespace detail

/// Evaluates the dominant operation count of one scheme. Recognized schemes
/// and the parameters they consume:
///   hf-omp-gamma      N, Q_F, Q_N, L_F, L_N
///   hf-omp-no-gamma   N, Q_F, Q_N, L, N_gamma
///   hf-sd-omp         N, Q_N, L_F, L_N, O
///   hf-sgp-gamma      N, L, Q_F, Q_N
///   hf-sgp-no-gamma   N, Q_F, Q_N, L, N_gamma, N_iter
///   epsilon-omp-ssigw N, Q, i, B, N_iter
inline double complexity_eval(const std::string& scheme, const ComplexityParams& params) {
    using detail::need;
    const char* s = scheme.c_str();
    if (scheme == "hf-omp-gamma") {
        const double n = need(params, "N", s), qf = need(params, "Q_F", s),
                     qn = need(params, "Q_N", s), lf = need(params, "L_F", s),
                     ln = need(params, "L_N", s);
        return n * (qf * lf + lf * lf) + lf * lf * lf + n * (qn * ln + ln * ln) + ln * ln * ln;
    }
    if (scheme == "hf-omp-no-gamma") {
        const double n = need(params, "N", s), qf = need(params, "Q_F", s),
                     qn = need(params, "Q_N", s), l = need(params, "L", s),
                     ng = need(params, "N_gamma", s);
        return n * qf * l + n * l * l + l * l * l +
               ng * (n * qn + n * l * l + l * l * l + n * n * l);
    }
    if (scheme == "hf-sd-omp") {
        const double n = need(params, "N", s), qn = need(params, "Q_N", s),
                     lf = need(params, "L_F", s), ln = need(params, "L_N", s),
                     o = need(params, "O", s);
        return n * lf * o * o + (lf * o) * (lf * o) + qn * (ln * o) * (ln * o) * (ln * o) +
               n * qn;
    }
    if (scheme == "hf-sgp-gamma") {
        const double n = need(params, "N", s), l = need(params, "L", s),
                     qf = need(params, "Q_F", s), qn = need(params, "Q_N", s);
        return n * l * l + n * l * (qf + qn);
    }
    if (scheme == "hf-sgp-no-gamma") {
        const double n = need(params, "N", s), qf = need(params, "Q_F", s),
                     qn = need(params, "Q_N", s), l = need(params, "L", s),
                     ng = need(params, "N_gamma", s), ni = need(params, "N_iter", s);
        return n * qf * l + n * l * l + ng * (n * qn + n * l * l) +
               ni * (n * n + n * l * l + l * l * l + n * n * l);
    }
    if (scheme == "epsilon-omp-ssigw") {
        const double n = need(params, "N", s), q = need(params, "Q", s),
                     i = need(params, "i", s), b = need(params, "B", s),
                     ni = need(params, "N_iter", s);
        return i * n * (q + b * ni + 1.0);
    }
    throw std::invalid_argument("complexity_eval: unknown scheme '" + scheme + "'");
}

// --------------------------------------------------------------------------
// Result persistence
// --------------------------------------------------------------------------

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string plot_path_for(const std::string& csv_path) {
    const auto dot = csv_path.find_last_of('.');
    const auto slash = csv_path.find_last_of("/\\");
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return csv_path + "_plot.dat";
    return csv_path.substr(0, dot) + "_plot.dat";
}

} // namespace detail

/// Writes the CSV table (full double precision, rows sorted by scheme then
/// SNR) plus a gnuplot-friendly companion file with one block per scheme.
inline void write_results(const SweepResult& result, const std::string& path) {
    std::ofstream csv(path, std::ios::trunc);
    if (!csv) throw std::runtime_error("write_results: cannot open '" + path + "'");
    csv << "scheme,snr_db,mean_nmse,mean_iterations,mean_runtime_s,trials\n";
    for (const auto& r : result.rows) {
        csv << r.scheme << ',' << detail::format_double(r.snr_db) << ','
            << detail::format_double(r.mean_nmse) << ','
            << detail::format_double(r.mean_iterations) << ','
            << detail::format_double(r.mean_runtime_s) << ',' << r.trials << '\n';
    }
    if (!csv.flush()) throw std::runtime_error("write_results: write failed for '" + path + "'");

    const std::string plot_path = detail::plot_path_for(path);
    std::ofstream plot(plot_path, std::ios::trunc);
    if (!plot) throw std::runtime_error("write_results: cannot open '" + plot_path + "'");
    plot << "# columns: snr_db mean_nmse stderr_nmse mean_iterations\n";
    std::string current;
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const auto& r = result.rows[i];
        if (r.scheme != current) {
            if (!current.empty()) plot << "\n\n";
            plot << "# scheme: " << r.scheme << '\n';
            current = r.scheme;
        }
        const double se = i < result.stderr_nmse.size() ? result.stderr_nmse[i] : 0.0;
        plot << detail::format_double(r.snr_db) << ' ' << detail::format_double(r.mean_nmse)
             << ' ' << detail::format_double(se) << ' '
             << detail::format_double(r.mean_iterations) << '\n';
    }
    if (!plot.flush())
        throw std::runtime_error("write_results: write failed for '" + plot_path + "'");
}

inline SweepResult read_results(const std::string& path) {
    std::ifstream csv(path);
    if (!csv) throw std::runtime_error("read_results: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(csv, line))
        throw std::runtime_error("read_results: empty file '" + path + "'");
    SweepResult result;
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        SweepRow row;
        std::getline(ss, row.scheme, ',');
        std::getline(ss, field, ',');
        row.snr_db = std::strtod(field.c_str(), nullptr);
        std::getline(ss, field, ',');
        row.mean_nmse = std::strtod(field.c_str(), nullptr);
        std::getline(ss, field, ',');
        row.mean_iterations = std::strtod(field.c_str(), nullptr);
        std::getline(ss, field, ',');
        row.mean_runtime_s = std::strtod(field.c_str(), nullptr);
        std::getline(ss, field, ',');
        row.trials = static_cast<int>(std::strtol(field.c_str(), nullptr, 10));
        result.rows.push_back(std::move(row));
    }
    return result;
}

} // namespace hfce

#endif // HFCE_HARNESS_HPP
