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

#include <hfce/baselines.hpp>
#include <hfce/channel.hpp>
#include <hfce/harness.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace hfce;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SystemConfig config_with(int n, double r_min = 10.0) {
    SystemConfig cfg;
    cfg.array = ArrayGeometry{n, 0.01, 0.005};
    cfg.r_min = r_min;
    return cfg;
}

cvec random_vec(int n, std::mt19937_64& rng, double var = 1.0) {
    cvec v(n);
    for (int k = 0; k < n; ++k) v(k) = complex_gaussian(rng, var);
    return v;
}

} // namespace

TEST_CASE("ls_estimate: inversion and analytic error level") {
    std::mt19937_64 rng(1);
    const cvec h = random_vec(16, rng);

    REQUIRE(ls_estimate(Observation{h, PilotConfig{1, 0.0}}) == h);
    REQUIRE(cvec(ls_estimate(Observation{cvec(2.0 * h), PilotConfig{4, 0.0}})) == h);

    // mean NMSE over noise draws matches N sigma^2 / (tau ||h||^2) within 5%
    const int n = 64, draws = 2000, tau = 2;
    const cvec h_fixed = random_vec(n, rng);
    const double sigma2 = 0.3;
    double acc = 0.0;
    for (int k = 0; k < draws; ++k) {
        const Observation obs = observe(h_fixed, PilotConfig{tau, sigma2}, 5000 + k);
        acc += nmse(ls_estimate(obs), h_fixed);
    }
    const double expected = n * sigma2 / (tau * h_fixed.squaredNorm());
    REQUIRE_THAT(acc / draws, WithinRel(expected, 0.05));
}

TEST_CASE("empirical_covariance") {
    const SystemConfig cfg = config_with(16, 0.5);
    std::vector<Scene> same(3, sample_scene(cfg, 4));
    const CovarianceModel rank1 = empirical_covariance(same);
    const cmat expected = same[0].channel * same[0].channel.adjoint();
    REQUIRE((rank1.matrix - expected).norm() < 1e-12 * expected.norm());
    REQUIRE(rank1.n_train == 3);

    std::vector<Scene> train;
    for (int k = 0; k < 300; ++k) train.push_back(sample_scene(cfg, 100 + k));
    const CovarianceModel cov = empirical_covariance(train);
    REQUIRE((cov.matrix - cov.matrix.adjoint()).norm() < 1e-10);
    Eigen::SelfAdjointEigenSolver<cmat> eig(cov.matrix);
    REQUIRE(eig.eigenvalues().minCoeff() > -1e-10);

    // trace tracks the mean channel energy
    double energy = 0.0;
    for (const auto& s : train) energy += s.channel.squaredNorm();
    REQUIRE_THAT(std::real(cov.matrix.trace()), WithinRel(energy / train.size(), 1e-10));

    REQUIRE_THROWS_AS(empirical_covariance({}), std::invalid_argument);
}

TEST_CASE("mmse_estimate: limits and scalar case") {
    // scalar case: R = 1, tau = 1, sigma^2 = 1, y = 2 -> 1
    CovarianceModel scalar{cmat::Ones(1, 1), 1};
    cvec y1(1);
    y1(0) = 2.0;
    const cvec h1 = mmse_estimate(Observation{y1, PilotConfig{1, 1.0}}, scalar);
    REQUIRE_THAT(std::abs(h1(0) - cplx(1.0, 0.0)), WithinAbs(0.0, 1e-14));

    const SystemConfig cfg = config_with(16, 0.5);
    std::vector<Scene> train;
    for (int k = 0; k < 200; ++k) train.push_back(sample_scene(cfg, 100 + k));
    const CovarianceModel cov = empirical_covariance(train);

    std::mt19937_64 rng(9);
    const cvec y = random_vec(16, rng);
    // vanishing noise, full-rank covariance: LS limit
    const cvec near_ls = mmse_estimate(Observation{y, PilotConfig{1, 1e-12}}, cov);
    REQUIRE((near_ls - y).norm() < 1e-8 * y.norm());
    // exploding noise: estimate shrinks to zero
    const cvec shrunk = mmse_estimate(Observation{y, PilotConfig{1, 1e12}}, cov);
    REQUIRE(shrunk.norm() < 1e-9 * y.norm());
}

TEST_CASE("mmse_estimate: rank-1 oracle covariance recovers the channel") {
    const SystemConfig cfg = config_with(32, 1.0);
    const Scene scene = sample_scene(cfg, 11);
    const cvec& h = scene.channel;
    const CovarianceModel oracle{h * h.adjoint(), 1};
    const Observation obs{h, PilotConfig{1, 1e-9 * h.squaredNorm()}};
    const cvec h_hat = mmse_estimate(obs, oracle);
    REQUIRE((h_hat - h).norm() < 1e-6 * h.norm());
}

TEST_CASE("mmse_estimate: singular system") {
    // zero noise with a rank-deficient covariance cannot be inverted
    cmat r = cmat::Zero(4, 4);
    r(0, 0) = 1.0;
    CovarianceModel cov{r, 1};
    cvec y(4);
    y << cplx(1, 0), cplx(1, 0), cplx(0, 1), cplx(0, 0);
    REQUIRE_THROWS(mmse_estimate(Observation{y, PilotConfig{1, 0.0}}, cov));
}

TEST_CASE("ls_solve: oracles and diagnostics") {
    const SystemConfig cfg = config_with(8);
    const HybridDictionary dict = build_hybrid_dictionary(cfg, 8, 0, 0);
    std::mt19937_64 rng(21);
    const cvec y = random_vec(8, rng);

    // single unit-norm column matches the scalar gain
    const cvec single = ls_solve(dict.columns.col(3), y);
    REQUIRE(std::abs(single(0) - compute_gain(dict.columns.col(3), y)) < 1e-12);

    // orthonormal active set: g = A^H y
    cmat ortho(8, 3);
    ortho << dict.columns.col(1), dict.columns.col(4), dict.columns.col(6);
    const cvec g_ortho = ls_solve(ortho, y);
    REQUIRE((g_ortho - ortho.adjoint() * y).norm() < 1e-12);

    // random system vs the normal-equations oracle
    cmat a(8, 3);
    for (int j = 0; j < 3; ++j) a.col(j) = random_vec(8, rng);
    const cvec g = ls_solve(a, y);
    const cvec g_normal = (a.adjoint() * a).ldlt().solve(a.adjoint() * y);
    REQUIRE((g - g_normal).norm() < 1e-10);

    // LS residual is orthogonal to the active columns
    const cvec resid = y - a * g;
    REQUIRE((a.adjoint() * resid).cwiseAbs().maxCoeff() < 1e-8);

    cmat dup(8, 2);
    dup << a.col(0), a.col(0);
    REQUIRE_THROWS(ls_solve(dup, y));
}

TEST_CASE("ff_omp: exact recovery and basis completeness") {
    const SystemConfig cfg = config_with(16, 0.5);
    const HybridDictionary dict = build_hybrid_dictionary(cfg, 16, 0, 0);

    const cvec h = cplx(1.1, -0.6) * cvec(dict.columns.col(5));
    const EstimateResult rec = ff_omp(Observation{h, PilotConfig{1, 0.0}}, dict, 1);
    REQUIRE(rec.iterations == 1);
    REQUIRE((rec.h_hat - h).norm() < 1e-12);

    std::mt19937_64 rng(31);
    const cvec dense = random_vec(16, rng);
    const EstimateResult full = ff_omp(Observation{dense, PilotConfig{1, 0.0}}, dict, 16);
    REQUIRE(std::sqrt(full.residual_mse_history.back() * 16.0) < 1e-10);
}

TEST_CASE("ff_omp floors on a pure near-field channel; the blind estimator does not") {
    SystemConfig cfg = config_with(64);
    cfg.n_paths = 4;
    cfg.ff_ratio = 0.0; // near-field only
    const HybridDictionary dict = build_hybrid_dictionary(cfg, 64, 64, 1);
    const HybridDictionary dict_ff = build_hybrid_dictionary(cfg, 64, 0, 0);

    EstimatorParams params;
    double nmse_ff = 0.0, nmse_blind = 0.0;
    const int trials = 25;
    for (int t = 0; t < trials; ++t) {
        const Scene scene = sample_scene(cfg, 400 + t);
        const double sigma2 = 0.01 * scene.channel.squaredNorm() / 64.0; // 20 dB
        const Observation obs = observe(scene.channel, PilotConfig{1, sigma2}, 800 + t);
        params.epsilon = sigma2;
        nmse_ff += nmse(ff_omp(obs, dict_ff, cfg.n_paths).h_hat, scene.channel);
        nmse_blind += nmse(estimate(obs, dict, params).h_hat, scene.channel);
    }
    REQUIRE(nmse_blind / trials < nmse_ff / trials);
}

TEST_CASE("hf_omp_gamma: degenerate splits and mixed recovery") {
    const SystemConfig cfg = config_with(64);
    const HybridDictionary dict = build_hybrid_dictionary(cfg, 64, 64, 1);
    const HybridDictionary dict_ff = build_hybrid_dictionary(cfg, 64, 0, 0);
    std::mt19937_64 rng(41);
    const cvec y = random_vec(64, rng);
    const Observation obs{y, PilotConfig{1, 0.0}};

    // gamma = 1 equals ff_omp bit-for-bit on the same angular-only dictionary
    const EstimateResult via_ff = ff_omp(obs, dict_ff, 4);
    const EstimateResult via_hf = hf_omp_gamma(obs, dict_ff, 4, 1.0);
    REQUIRE(via_ff.h_hat == via_hf.h_hat);
    REQUIRE(via_ff.iterations == via_hf.iterations);
    for (int k = 0; k < 4; ++k)
        REQUIRE(via_ff.atoms[k].source_index == via_hf.atoms[k].source_index);

    // gamma = 0 selects only polar atoms
    const EstimateResult polar_only = hf_omp_gamma(obs, dict, 3, 0.0);
    for (const auto& atom : polar_only.atoms) REQUIRE(atom.source_index >= dict.q_far);

    // noiseless mixed two-path scene built from near-orthogonal grid atoms.
    // The far-field gain dominates: a weakly curved polar atom is close to a
    // mirrored plane wave, so a stronger near-field path would hijack the
    // angular stage of the split selection.
    const int j_ff = 10, j_nf = dict.q_far + 50;
    REQUIRE(std::abs(cvec(dict.columns.col(j_ff)).dot(dict.columns.col(j_nf))) < 0.05);
    const cplx g1(1.4, 0.3), g2(-0.3, 0.5);
    const cvec h = g1 * cvec(dict.columns.col(j_ff)) + g2 * cvec(dict.columns.col(j_nf));
    const EstimateResult mixed = hf_omp_gamma(Observation{h, PilotConfig{1, 0.0}}, dict, 2, 0.5);
    REQUIRE(mixed.iterations == 2);
    REQUIRE((mixed.h_hat - h).norm() < 1e-10);
    REQUIRE(mixed.atoms[0].source_index == j_ff);
    REQUIRE(mixed.atoms[1].source_index == j_nf);
}

TEST_CASE("omp baselines: residual norms never increase across rounds") {
    const SystemConfig cfg = config_with(32, 1.0);
    const HybridDictionary dict = build_hybrid_dictionary(cfg, 32, 32, 1);
    for (int t = 0; t < 5; ++t) {
        const Scene scene = sample_scene(cfg, 50 + t);
        const Observation obs = observe(scene.channel, PilotConfig{1, 0.1}, 150 + t);
        for (const auto& res :
             {ff_omp(obs, dict, 6), hf_omp_gamma(obs, dict, 6, 0.5)}) {
            for (std::size_t k = 1; k < res.residual_mse_history.size(); ++k)
                REQUIRE(res.residual_mse_history[k] <=
                        res.residual_mse_history[k - 1] + 1e-15);
        }
    }
}
