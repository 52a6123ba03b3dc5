#pragma once

#include <vector>

#include "weylflow/flows.hpp"

namespace weylflow {

/// An isokinetic trajectory with E = -grad U in the coordinates
/// p = e^{-U} g v, dt/dtau = e^{U}, where it is Hamiltonian with
/// H = 1/2 e^{2U} |p|^2.
struct DettmannMorrissRecord {
    std::vector<double> tau;
    std::vector<Vec> q;
    std::vector<Vec> p;
    std::vector<double> hamiltonian;
    /// max |dq/dtau - dH/dp|, |dp/dtau + dH/dq| with fourth-order differences.
    double hamilton_residual = 0.0;
    /// max |phi + dU| and |d phi| seen along the input path.
    double potential_residual = 0.0;
};

/// Resamples at uniform tau with step traj.dt. Throws NotLocallyPotentialError
/// when phi = -dU fails at a trajectory point (threshold 1e-8).
DettmannMorrissRecord dettmann_morriss(const Flow& flow, const Trajectory& traj, const FourierField& potential);

/// omega((xi1, eta1), (xi2, eta2)) = <eta1, xi2> - <eta2, xi1>
///                                   - [dU(xi1) <v, xi2> - dU(xi2) <v, xi1>]
/// with eta = nabla_xi v and inner products taken with g.
double omega_form(const Vec& q, const Vec& v, const Vec& xi1, const Vec& eta1, const Vec& xi2, const Vec& eta2,
                  const FourierField& potential, const Mat& g);

}  // namespace weylflow
