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

#ifndef HFCE_ESTIMATOR_HPP
#define HFCE_ESTIMATOR_HPP

#include "dictionary.hpp"
#include "observation.hpp"
#include "types.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace hfce {

/// Knobs of the residual-stopped greedy estimator. Note there is no sparsity
/// level and no far/near split here: the stopping threshold epsilon (normally
/// the noise variance) is the only scene-dependent input.
struct EstimatorParams {
    double epsilon = 1e-3;     // residual-MSE stopping threshold
    int max_outer_iters = 20;  // I_max
    int n_refine_iters = 5;    // N_iter, refinement rounds per selected atom
    double step_theta = 5e-4;  // zeta_theta, initial angle step
    double step_rho = 5e-4;    // zeta_rho, initial inverse-distance step
    double step_floor = 1e-5;  // zeta_th, backtracking gives up below this
    double gain_tol = 1e-1;    // tau_th, gain-stabilization break

    void validate() const {
        if (!(epsilon > 0.0)) throw std::invalid_argument("EstimatorParams: epsilon must be > 0");
        if (max_outer_iters < 0)
            throw std::invalid_argument("EstimatorParams: max_outer_iters must be >= 0");
        if (n_refine_iters < 0)
            throw std::invalid_argument("EstimatorParams: n_refine_iters must be >= 0");
        if (!(step_theta > 0.0) || !(step_rho > 0.0) || !(step_floor > 0.0) || !(gain_tol > 0.0))
            throw std::invalid_argument("EstimatorParams: steps and tolerances must be > 0");
        if (step_floor >= step_theta || step_floor >= step_rho)
            throw std::invalid_argument("EstimatorParams: step_floor must be below the initial steps");
    }

    bool operator==(const EstimatorParams&) const = default;
};

enum class RefineParameter { Theta, Rho };

/// One active atom: its dictionary origin, current (possibly refined)
/// parameters, scalar gain, and the unit-norm column those parameters rebuild.
struct SelectedAtom {
    int source_index = -1;     // dictionary column the atom started from
    AtomDomain domain = AtomDomain::Angular;
    double angle = 0.0;
    double inv_distance = 0.0; // Polar only; stays 0 for Angular
    cplx gain{0.0, 0.0};
    cvec column;
};

struct OpCounters {
    long correlations = 0;   // dictionary-wide correlation products A^H r
    long refine_rounds = 0;  // gradient rounds executed
    long armijo_trials = 0;  // candidate atoms built during backtracking
    long accepted_steps = 0;

    /// Mean Armijo attempts per refinement round (the B of the complexity model).
    double mean_backtracks() const {
        return refine_rounds > 0 ? static_cast<double>(armijo_trials) / refine_rounds : 0.0;
    }
};

struct EstimateResult {
    cvec h_hat;
    std::vector<SelectedAtom> atoms;
    int iterations = 0;                       // L_est, adaptive path-count estimate
    std::vector<double> residual_mse_history; // initial MSE plus one entry per iteration
    OpCounters op_counters;
};

inline double residual_mse(const cvec& residual) {
    return residual.squaredNorm() / static_cast<double>(residual.size());
}

/// Greedy selection: index maximizing |[A^H r]_j|^2, ties to the lowest index.
inline int select_atom(const HybridDictionary& dict, const cvec& residual) {
    if (residual.size() != dict.columns.rows())
        throw std::invalid_argument("select_atom: residual length mismatch");
    if (residual.squaredNorm() == 0.0)
        throw std::invalid_argument("select_atom: zero residual, nothing left to explain");
    const cvec corr = dict.columns.adjoint() * residual;
    int best = 0;
    double best_energy = std::norm(corr(0));
    for (int j = 1; j < dict.size(); ++j) {
        const double e = std::norm(corr(j));
        if (e > best_energy) {
            best_energy = e;
            best = j;
        }
    }
    return best;
}

/// Scalar least-squares gain of a unit-norm atom against the residual: a^H r.
inline cplx compute_gain(const cvec& atom, const cvec& residual) {
    if (std::abs(atom.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("compute_gain: atom must be unit-norm");
    return atom.dot(residual); // Eigen's dot conjugates the left operand
}

/// cost = ||r||^2 - |a^H r|^2 = r^H (I - a a^H) r, energy = |a^H r|^2.
/// Minimizing the cost over the atom parameters maximizes the projected energy.
inline std::pair<double, double> cost_and_projected_energy(const cvec& atom, const cvec& residual) {
    if (std::abs(atom.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("cost_and_projected_energy: atom must be unit-norm");
    const double energy = std::norm(atom.dot(residual));
    return {residual.squaredNorm() - energy, energy};
}

/// Element-wise derivative of the (normalized) atom column with respect to
/// one of its parameters:
///   angular, d/dtheta: [-j*pi*n] a_n
///   polar,   d/dtheta: [-j*2*pi/lambda * (-m*d - (m*d)^2*theta*rho)] a_n
///   polar,   d/drho:   [-j*pi/lambda * (m*d)^2 * (1 - theta^2)] a_n
/// with m = n - (N-1)/2 the centered element index.
inline cvec atom_derivative(const SelectedAtom& atom, RefineParameter which,
                            const ArrayGeometry& geom) {
    if (atom.domain == AtomDomain::Angular && which == RefineParameter::Rho)
        throw std::invalid_argument("atom_derivative: angular atoms have no rho parameter");
    const cvec a = make_atom_column(atom.domain, atom.angle, atom.inv_distance, geom);
    const int n_ant = geom.n_antennas;
    cvec d(n_ant);
    if (atom.domain == AtomDomain::Angular) {
        for (int n = 0; n < n_ant; ++n)
            d(n) = cplx(0.0, -M_PI * n) * a(n);
        return d;
    }
    const double k = 2.0 * M_PI / geom.wavelength;
    for (int n = 0; n < n_ant; ++n) {
        const double md = geom.element_offset(n);
        const double factor = which == RefineParameter::Theta
                                  ? k * (-md - md * md * atom.angle * atom.inv_distance)
                                  : 0.5 * k * md * md * (1.0 - atom.angle * atom.angle);
        d(n) = cplx(0.0, -factor) * a(n);
    }
    return d;
}

/// Derivative of the projection cost with respect to an atom parameter,
/// reduced to two inner products: dL/du = -2 Re{ conj(a^H r) * (da^H r) }.
inline double scalar_gradient(const cvec& atom, const cvec& d_atom, const cvec& residual) {
    if (atom.size() != d_atom.size() || atom.size() != residual.size())
        throw std::invalid_argument("scalar_gradient: length mismatch");
    const cplx z = atom.dot(residual);
    const cplx w = d_atom.dot(residual);
    return -2.0 * std::real(std::conj(z) * w);
}

/// Backtracked gradient refinement of a single atom against a fixed residual
/// (the signal with all previously accepted atoms removed). Per round: one
/// angle update, then for polar atoms one inverse-distance update; a trial
/// step is accepted only if rebuilding the atom and its gain strictly reduces
/// ||r - a_try * gain_try||^2, otherwise the step halves until it falls below
/// step_floor. Rounds stop early once the gain stabilizes within gain_tol.
inline SelectedAtom refine_atom(SelectedAtom atom, const cvec& residual,
                                const EstimatorParams& params, const ArrayGeometry& geom,
                                double rho_max, OpCounters* counters = nullptr) {
    params.validate();
    double best_norm2 = (residual - atom.column * atom.gain).squaredNorm();

    auto try_parameter = [&](RefineParameter which, double initial_step) {
        const double grad =
            scalar_gradient(atom.column, atom_derivative(atom, which, geom), residual);
        double step = initial_step;
        while (step > params.step_floor) {
            if (counters) ++counters->armijo_trials;
            double angle_try = atom.angle;
            double rho_try = atom.inv_distance;
            if (which == RefineParameter::Theta)
                angle_try = std::clamp(atom.angle - step * grad, -1.0, 1.0);
            else
                rho_try = std::clamp(atom.inv_distance - step * grad, 0.0, rho_max);
            cvec column_try = make_atom_column(atom.domain, angle_try, rho_try, geom);
            const cplx gain_try = column_try.dot(residual);
            const double norm2_try = (residual - column_try * gain_try).squaredNorm();
            if (norm2_try < best_norm2) {
                atom.angle = angle_try;
                atom.inv_distance = rho_try;
                atom.column = std::move(column_try);
                atom.gain = gain_try;
                best_norm2 = norm2_try;
                if (counters) ++counters->accepted_steps;
                break;
            }
            step *= 0.5;
        }
    };

    cplx gain_prev{0.0, 0.0};
    for (int round = 0; round < params.n_refine_iters; ++round) {
        if (counters) ++counters->refine_rounds;
        try_parameter(RefineParameter::Theta, params.step_theta);
        if (atom.domain == AtomDomain::Polar)
            try_parameter(RefineParameter::Rho, params.step_rho);
        if (std::abs(atom.gain - gain_prev) < params.gain_tol) break;
        gain_prev = atom.gain;
    }
    return atom;
}

/// Residual-stopped greedy estimation with single-column refinement.
///
/// The observation is first scaled by 1/sqrt(tau) so the output estimates the
/// channel itself. While the residual MSE ||r||^2/N exceeds epsilon (and the
/// iteration cap is not hit), the most correlated atom is appended, its gain
/// set by the closed-form scalar least squares, the column refined in its
/// continuous parameters, and its contribution removed from the residual.
/// The number of iterations is the adaptive estimate of the path count; no
/// sparsity level or far/near ratio is provided.
inline EstimateResult estimate(const Observation& obs, const HybridDictionary& dict,
                               const EstimatorParams& params) {
    params.validate();
    if (obs.y.size() != dict.columns.rows())
        throw std::invalid_argument("estimate: observation length does not match the dictionary");

    EstimateResult result;
    cvec r = obs.y / std::sqrt(static_cast<double>(obs.pilot.pilot_length));
    double mse = residual_mse(r);
    result.residual_mse_history.push_back(mse);

    // epsilon > 0, so the residual is nonzero whenever the loop runs
    while (mse > params.epsilon && result.iterations <= params.max_outer_iters) {
        ++result.op_counters.correlations;
        const int index = select_atom(dict, r);
        const AtomMeta& meta = dict.meta[static_cast<std::size_t>(index)];

        SelectedAtom atom;
        atom.source_index = index;
        atom.domain = meta.domain;
        atom.angle = meta.angle;
        atom.inv_distance = meta.inv_distance;
        atom.column = dict.columns.col(index);
        atom.gain = compute_gain(atom.column, r);

        atom = refine_atom(std::move(atom), r, params, dict.geometry, dict.rho_max,
                           &result.op_counters);

        r -= atom.column * atom.gain;
        mse = residual_mse(r);
        result.residual_mse_history.push_back(mse);
        result.atoms.push_back(std::move(atom));
        ++result.iterations;
    }

    result.h_hat = cvec::Zero(obs.y.size());
    for (const auto& atom : result.atoms) result.h_hat += atom.gain * atom.column;
    return result;
}

} // namespace hfce

#endif // HFCE_ESTIMATOR_HPP
