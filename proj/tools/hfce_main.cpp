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
//
// Command-line front end:
//   hfce generate   --config cfg --out scene.json [--seed S]
//   hfce estimate   --config cfg --scheme NAME --snr-db X [--seed S] [--scene f]
//   hfce sweep      --config cfg [--out results.csv]
//   hfce complexity --scheme NAME -p KEY=VALUE ...

#include <hfce/hfce.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace {

hfce::ConfigMap load_config_or_default(const std::string& path) {
    if (path.empty()) return {};
    return hfce::load_config_file(path);
}

int cmd_generate(const std::string& config_path, std::uint64_t seed, const std::string& out) {
    const auto map = load_config_or_default(config_path);
    const hfce::SystemConfig cfg = hfce::system_config_from(map);
    const hfce::Scene scene = hfce::sample_scene(cfg, seed);
    hfce::save_scene(scene, out);
    std::printf("wrote scene with %zu paths (N=%d) to %s\n", scene.paths.size(),
                cfg.array.n_antennas, out.c_str());
    return 0;
}

int cmd_estimate(const std::string& config_path, const std::string& scene_path,
                 const std::string& scheme, double snr_db, std::uint64_t seed) {
    const auto map = load_config_or_default(config_path);
    hfce::SystemConfig cfg = hfce::system_config_from(map);
    hfce::Scene scene;
    if (!scene_path.empty()) {
        scene = hfce::load_scene(scene_path);
        cfg = scene.config;
    } else {
        scene = hfce::sample_scene(cfg, hfce::derive_seed(seed, 0x5ce7eULL));
    }

    const int q_far = static_cast<int>(hfce::config_int(map, "dictionary.q_f", cfg.array.n_antennas));
    const int q_angle =
        static_cast<int>(hfce::config_int(map, "dictionary.q_angle", cfg.array.n_antennas));
    const int n_rings = static_cast<int>(hfce::config_int(map, "dictionary.n_rings", 1));
    const int tau = static_cast<int>(hfce::config_int(map, "pilot.tau", 1));

    const double avg_power = scene.channel.squaredNorm() / cfg.array.n_antennas;
    const double sigma2 = hfce::sigma_for_snr(snr_db, tau, avg_power);
    const hfce::Observation obs = hfce::observe(
        scene.channel, hfce::PilotConfig{tau, sigma2}, hfce::derive_seed(seed, 0x7015eULL));

    const hfce::HybridDictionary dict = hfce::build_hybrid_dictionary(cfg, q_far, q_angle, n_rings);
    hfce::EstimatorParams params = hfce::estimator_params_from(map);
    if (!hfce::config_has(map, "estimator.epsilon"))
        params.epsilon = hfce::config_double(map, "sweep.epsilon_scale", 1.0) * sigma2 / tau;

    hfce::cvec h_hat;
    double iterations = 0.0;
    double final_mse = 0.0;
    double backtracks = 0.0;
    const auto t0 = std::chrono::steady_clock::now();
    if (scheme == "ls") {
        h_hat = hfce::ls_estimate(obs);
    } else if (scheme == "mmse") {
        std::vector<hfce::Scene> train;
        const int n_train = static_cast<int>(hfce::config_int(map, "sweep.cov_train", 1000));
        for (int k = 0; k < n_train; ++k)
            train.push_back(hfce::sample_scene(cfg, hfce::derive_seed(seed, 0xc0fULL, k)));
        h_hat = hfce::mmse_estimate(obs, hfce::empirical_covariance(train));
    } else if (scheme == "ff-omp") {
        const auto dict_ff = hfce::build_hybrid_dictionary(cfg, q_far, 0, 0);
        auto res = hfce::ff_omp(obs, dict_ff, cfg.n_paths);
        h_hat = std::move(res.h_hat);
        iterations = res.iterations;
    } else if (scheme == "hf-omp-gamma") {
        auto res = hfce::hf_omp_gamma(obs, dict, cfg.n_paths, cfg.ff_ratio);
        h_hat = std::move(res.h_hat);
        iterations = res.iterations;
    } else if (scheme == "epsilon-omp" || scheme == "epsilon-omp-ssigw") {
        if (scheme == "epsilon-omp") params.n_refine_iters = 0;
        auto res = hfce::estimate(obs, dict, params);
        h_hat = std::move(res.h_hat);
        iterations = res.iterations;
        final_mse = res.residual_mse_history.back();
        backtracks = res.op_counters.mean_backtracks();
    } else {
        throw std::invalid_argument("unknown scheme '" + scheme + "'");
    }
    const double runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::printf("scheme=%s snr_db=%g nmse=%.6e iterations=%g final_mse=%.6e mean_backtracks=%.3f runtime_s=%.6f\n",
                scheme.c_str(), snr_db, hfce::nmse(h_hat, scene.channel), iterations, final_mse,
                backtracks, runtime);
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_override) {
    const auto map = hfce::load_config_file(config_path);
    hfce::SweepSpec spec = hfce::sweep_spec_from(map);
    if (!out_override.empty()) spec.output_path = out_override;
    const hfce::SweepResult result = hfce::run_sweep(spec);
    hfce::write_results(result, spec.output_path);
    std::printf("%-20s %8s %14s %12s %12s %7s\n", "scheme", "snr_db", "mean_nmse", "mean_iters",
                "runtime_s", "trials");
    for (const auto& r : result.rows)
        std::printf("%-20s %8g %14.6e %12.3f %12.6f %7d\n", r.scheme.c_str(), r.snr_db,
                    r.mean_nmse, r.mean_iterations, r.mean_runtime_s, r.trials);
    std::printf("wrote %s\n", spec.output_path.c_str());
    return 0;
}

int cmd_complexity(const std::string& scheme, const std::vector<std::string>& assignments) {
    hfce::ComplexityParams params;
    for (const auto& a : assignments) {
        const auto eq = a.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("expected KEY=VALUE, got '" + a + "'");
        params[a.substr(0, eq)] = std::strtod(a.c_str() + eq + 1, nullptr);
    }
    const double ops = hfce::complexity_eval(scheme, params);
    std::printf("%s: %.17g operations\n", scheme.c_str(), ops);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid-field channel estimation simulator"};
    app.require_subcommand(1);

    std::string config_path, scene_path, scheme, out_path;
    std::uint64_t seed = 1;
    double snr_db = 10.0;
    std::vector<std::string> assignments;

    auto* generate = app.add_subcommand("generate", "sample a scene and write it to a file");
    generate->add_option("--config", config_path, "configuration file");
    generate->add_option("--seed", seed, "random seed");
    generate->add_option("--out", out_path, "output scene file")->required();

    auto* estimate = app.add_subcommand("estimate", "run one scheme on one observation");
    estimate->add_option("--config", config_path, "configuration file");
    estimate->add_option("--scene", scene_path, "scene file from 'generate' (fresh scene if absent)");
    estimate->add_option("--scheme", scheme, "ls | mmse | ff-omp | hf-omp-gamma | epsilon-omp | epsilon-omp-ssigw")
        ->required();
    estimate->add_option("--snr-db", snr_db, "receive SNR in dB");
    estimate->add_option("--seed", seed, "random seed");

    auto* sweep = app.add_subcommand("sweep", "run a Monte-Carlo sweep from a configuration file");
    sweep->add_option("--config", config_path, "configuration file")->required();
    sweep->add_option("--out", out_path, "override the configured output path");

    auto* complexity = app.add_subcommand("complexity", "evaluate closed-form operation counts");
    complexity->add_option("--scheme", scheme, "scheme identifier")->required();
    complexity->add_option("-p,--param", assignments, "parameter assignment KEY=VALUE");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return cmd_generate(config_path, seed, out_path);
        if (estimate->parsed()) return cmd_estimate(config_path, scene_path, scheme, snr_db, seed);
        if (sweep->parsed()) return cmd_sweep(config_path, out_path);
        if (complexity->parsed()) return cmd_complexity(scheme, assignments);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
