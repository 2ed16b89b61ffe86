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

#ifndef HFCE_BASELINES_HPP
#define HFCE_BASELINES_HPP

#include "estimator.hpp"
#include "types.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <vector>

namespace hfce {

/// Channel second-moment model for the linear MMSE baseline.
struct CovarianceModel {
    cmat matrix;     // N x N Hermitian PSD
    int n_train = 0; // channels averaged into it
};

/// Unbiased inversion of the observation model: h_hat = y / sqrt(tau).
inline cvec ls_estimate(const Observation& obs) {
    obs.pilot.validate();
    return obs.y / std::sqrt(static_cast<double>(obs.pilot.pilot_length));
}

/// Sample covariance (1/K) sum h_k h_k^H over training channels.
inline CovarianceModel empirical_covariance(const std::vector<Scene>& scenes) {
    if (scenes.empty()) throw std::invalid_argument("empirical_covariance: empty scene list");
    const Eigen::Index n = scenes.front().channel.size();
    cmat acc = cmat::Zero(n, n);
    for (const auto& s : scenes) {
        if (s.channel.size() != n)
            throw std::invalid_argument("empirical_covariance: inconsistent channel lengths");
        acc.noalias() += s.channel * s.channel.adjoint();
    }
    acc /= static_cast<double>(scenes.size());
    return {std::move(acc), static_cast<int>(scenes.size())};
}

/// Linear MMSE for y = sqrt(tau) h + n:
///   h_hat = sqrt(tau) R (tau R + sigma^2 I)^{-1} y.
inline cvec mmse_estimate(const Observation& obs, const CovarianceModel& cov) {
    obs.pilot.validate();
    const Eigen::Index n = obs.y.size();
    if (cov.matrix.rows() != n || cov.matrix.cols() != n)
        throw std::invalid_argument("mmse_estimate: covariance dimension mismatch");
    const double tau = static_cast<double>(obs.pilot.pilot_length);
    cmat system = tau * cov.matrix;
    system.diagonal().array() += obs.pilot.noise_variance;
    Eigen::LDLT<cmat> ldlt(system);
    const cvec x = ldlt.solve(obs.y);
    // LDLT does not flag semidefinite failures reliably; check the solve.
    if ((system * x - obs.y).norm() > 1e-8 * (obs.y.norm() + 1e-300))
        throw std::runtime_error("mmse_estimate: singular system (zero noise with rank-deficient covariance)");
    return std::sqrt(tau) * (cov.matrix * x);
}

/// Dense least squares over an explicit active set, rank-revealing QR.
inline cvec ls_solve(const cmat& columns, const cvec& y) {
    if (columns.rows() != y.size())
        throw std::invalid_argument("ls_solve: dimension mismatch");
    if (columns.cols() > columns.rows())
        throw std::invalid_argument("ls_solve: more columns than rows");
    Eigen::ColPivHouseholderQR<cmat> qr(columns);
    if (qr.rank() < columns.cols())
        throw std::runtime_error("ls_solve: rank-deficient active set (duplicate atom?)");
    return qr.solve(y);
}

namespace detail {

/// Standard OMP rounds restricted to dictionary columns [first, last): select
/// the most correlated unselected atom, then re-fit all gains jointly. An
/// argmax landing on an already-selected column falls through to the next
/// best unselected one.
inline void omp_rounds(const HybridDictionary& dict, const cvec& target, int first, int last,
                       int rounds, std::vector<int>& support, cvec& gains, cvec& residual,
                       EstimateResult& result) {
    for (int round = 0; round < rounds; ++round) {
        ++result.op_counters.correlations;
        const cvec corr = dict.columns.middleCols(first, last - first).adjoint() * residual;
        int best = -1;
        double best_energy = -1.0;
        for (int j = 0; j < corr.size(); ++j) {
            const int col = first + j;
            if (std::find(support.begin(), support.end(), col) != support.end()) continue;
            const double e = std::norm(corr(j));
            if (e > best_energy) {
                best_energy = e;
                best = col;
            }
        }
        if (best < 0) throw std::runtime_error("omp_rounds: dictionary block exhausted");
        support.push_back(best);

        cmat active(dict.columns.rows(), support.size());
        for (std::size_t k = 0; k < support.size(); ++k)
            active.col(static_cast<Eigen::Index>(k)) = dict.columns.col(support[k]);
        gains = ls_solve(active, target);
        residual = target - active * gains;
        result.residual_mse_history.push_back(residual_mse(residual));
        ++result.iterations;
    }
}

inline EstimateResult finish_omp(const HybridDictionary& dict, const std::vector<int>& support,
                                 const cvec& gains, EstimateResult result) {
    result.h_hat = cvec::Zero(dict.columns.rows());
    for (std::size_t k = 0; k < support.size(); ++k) {
        const AtomMeta& meta = dict.meta[static_cast<std::size_t>(support[k])];
        SelectedAtom atom;
        atom.source_index = support[k];
        atom.domain = meta.domain;
        atom.angle = meta.angle;
        atom.inv_distance = meta.inv_distance;
        atom.gain = gains(static_cast<Eigen::Index>(k));
        atom.column = dict.columns.col(support[k]);
        result.h_hat += atom.gain * atom.column;
        result.atoms.push_back(std::move(atom));
    }
    return result;
}

} // namespace detail

/// Conventional OMP over the angular block with oracle path count: n_paths
/// selection rounds, gains re-fit by least squares after every selection.
inline EstimateResult ff_omp(const Observation& obs, const HybridDictionary& dict, int n_paths) {
    if (n_paths < 1) throw std::invalid_argument("ff_omp: n_paths must be >= 1");
    if (obs.y.size() != dict.columns.rows())
        throw std::invalid_argument("ff_omp: observation length mismatch");
    const cvec target = obs.y / std::sqrt(static_cast<double>(obs.pilot.pilot_length));

    EstimateResult result;
    std::vector<int> support;
    cvec gains;
    cvec residual = target;
    result.residual_mse_history.push_back(residual_mse(residual));
    detail::omp_rounds(dict, target, 0, dict.q_far, n_paths, support, gains, residual, result);
    return detail::finish_omp(dict, support, gains, std::move(result));
}

/// Two-stage OMP with oracle path count and far/near split: round(gamma * L)
/// rounds over the angular block, the rest over the polar block against the
/// stage-one residual, gains always re-fit over the joint active set.
inline EstimateResult hf_omp_gamma(const Observation& obs, const HybridDictionary& dict,
                                   int n_paths, double gamma) {
    if (n_paths < 1) throw std::invalid_argument("hf_omp_gamma: n_paths must be >= 1");
    if (gamma < 0.0 || gamma > 1.0)
        throw std::invalid_argument("hf_omp_gamma: gamma must lie in [0, 1]");
    if (obs.y.size() != dict.columns.rows())
        throw std::invalid_argument("hf_omp_gamma: observation length mismatch");
    const cvec target = obs.y / std::sqrt(static_cast<double>(obs.pilot.pilot_length));
    const int n_far = static_cast<int>(std::lround(gamma * n_paths));

    EstimateResult result;
    std::vector<int> support;
    cvec gains;
    cvec residual = target;
    result.residual_mse_history.push_back(residual_mse(residual));
    detail::omp_rounds(dict, target, 0, dict.q_far, n_far, support, gains, residual, result);
    detail::omp_rounds(dict, target, dict.q_far, dict.size(), n_paths - n_far, support, gains,
                       residual, result);
    return detail::finish_omp(dict, support, gains, std::move(result));
}

} // namespace hfce

#endif // HFCE_BASELINES_HPP
