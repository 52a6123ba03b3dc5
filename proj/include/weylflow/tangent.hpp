#pragma once

#include <vector>

#include "weylflow/flows.hpp"

namespace weylflow {

/// Normalized Weyl-parallel frame along a W-flow trajectory. The columns of
/// frame are e_1..e_{n-1}; together with v they are g-orthonormal. They obey
/// de/dt = -Gammahat(v, e) + phi(v) e, i.e. Weyl transport rescaled by
/// e^{int phi}.
struct MovingFrame {
    PhaseState base;
    Mat frame;
    double int_phi = 0.0;
    /// max |<a, b> - delta_ab| over {v, e_i} just before the last cleanup.
    double orthogonality_defect = 0.0;
};

/// Jacobi data in frame coordinates: xi = xi0 v + sum xi_i e_i, chi the
/// frame coordinates of eta + <E,v> xi - <xi,v> E with eta = nabla_xi v.
struct TangentVector {
    double xi0 = 0.0;
    Vec xi;
    Vec chi;
};

struct TangentDerivative {
    double dxi0 = 0.0;
    Vec dxi;
    Vec dchi;
};

/// Frame with v first, completed by Gram-Schmidt in g from the coordinate axes.
Mat initial_frame(const Mat& g, const Vec& v);

/// Gram-Schmidt in g with v fixed; returns the orthogonality defect before
/// cleanup. Throws FrameCollapseError when the Gram matrix of {v, e_i} has
/// condition number above 1e6.
double reorthonormalize(const Mat& g, const Vec& v, Mat& frame);

/// Frame derivative -Gammahat(v, e) + phi(v) e, column by column.
Mat frame_rhs(const LocalGeometry& geo, const Vec& v, const Mat& frame);

/// The (n-1)x(n-1) matrix of xi~ -> frame coordinates of Rhat_a(xi, v) v.
Mat quotient_curvature(const LocalGeometry& geo, const Vec& v, const Mat& frame);

/// dxi0/dt = phi(xi - <xi,v> v), dxi~/dt = -phi(v) xi~ + chi~, dchi~/dt = -R xi~.
TangentDerivative linearized_rhs(const WeylScenario& scenario, const MovingFrame& frame, const TangentVector& t);

/// Co-integrates the isokinetic flow and the normalized frame with the
/// trajectory's dt, starting at its first state. The base states reproduce
/// integrate() exactly. cleanup_every <= 0 disables cleanup.
std::vector<MovingFrame> transport_frame(const Flow& flow, const Trajectory& traj, int cleanup_every = 10);

/// J = xi~ . chi~.
double jform(const Vec& xi, const Vec& chi);

/// Samples of one linearized solution along a run.
struct LinearizedRun {
    double dt = 0.0;
    std::vector<double> t;
    std::vector<PhaseState> base;
    std::vector<Mat> frame;
    std::vector<TangentVector> tangent;
    std::vector<double> phi_v;
    std::vector<Mat> curvature;  // quotient_curvature at each sample
};

/// Integrates base, frame and one tangent vector (including xi0) without
/// rescaling. Throws OverflowError on non-finite growth.
LinearizedRun linearized_run(const Flow& flow, const PhaseState& initial, const TangentVector& t0, double T,
                             double dt, int cleanup_every = 10);

/// Right side of the J identity: |chi~|^2 - phi(v) J - xi~ . R xi~.
double jform_identity_rhs(const TangentVector& t, double phi_v, const Mat& curvature);

/// Max over interior samples of |dJ/dt (fourth-order differences) - identity rhs|.
double jform_derivative_check(const LinearizedRun& run);

/// Smallest eigenvalue of -sym(R): positive exactly when dJ/dt > 0 on the
/// whole cone J = 0 (strict J-separation at that point).
double jseparation_margin(const Mat& curvature);

}  // namespace weylflow
