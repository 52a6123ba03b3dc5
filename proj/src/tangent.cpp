#include "weylflow/tangent.hpp"

#include <cmath>
#include <string>

#include "cointegrate.hpp"
#include "weylflow/curvature.hpp"
#include "weylflow/errors.hpp"

namespace weylflow {

Mat initial_frame(const Mat& g, const Vec& v) {
    const int n = static_cast<int>(v.size());
    Mat basis(n, n);
    basis.col(0) = v / std::sqrt(v.dot(g * v));
    int filled = 1;
    for (int k = 0; k < n && filled < n; ++k) {
        Vec c = Vec::Unit(n, k);
        for (int pass = 0; pass < 2; ++pass) {
            for (int j = 0; j < filled; ++j) c -= basis.col(j).dot(g * c) * basis.col(j);
        }
        const double norm = std::sqrt(c.dot(g * c));
        if (norm < 1e-6) continue;
        basis.col(filled++) = c / norm;
    }
    return basis.rightCols(n - 1);
}

double reorthonormalize(const Mat& g, const Vec& v, Mat& frame) {
    const int n = static_cast<int>(v.size());
    Mat all(n, n);
    all.col(0) = v;
    all.rightCols(n - 1) = frame;
    const Mat gram = all.transpose() * g * all;
    const double defect = (gram - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
    const Eigen::SelfAdjointEigenSolver<Mat> eig(gram);
    const double cond = eig.eigenvalues().maxCoeff() / eig.eigenvalues().minCoeff();
    if (!(cond > 0.0) || cond > 1e6) {
        throw FrameCollapseError("frame Gram matrix condition number " + std::to_string(cond) + " exceeds 1e6");
    }
    all.col(0) /= std::sqrt(v.dot(g * v));
    for (int j = 1; j < n; ++j) {
        Vec c = all.col(j);
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i < j; ++i) c -= all.col(i).dot(g * c) * all.col(i);
        }
        all.col(j) = c / std::sqrt(c.dot(g * c));
    }
    frame = all.rightCols(n - 1);
    return defect;
}

Mat frame_rhs(const LocalGeometry& geo, const Vec& v, const Mat& frame) {
    const double phi_v = geo.phi(v);
    Mat out(frame.rows(), frame.cols());
    for (int j = 0; j < frame.cols(); ++j) out.col(j) = -contract(geo.weyl, v, frame.col(j)) + phi_v * frame.col(j);
    return out;
}

Mat quotient_curvature(const LocalGeometry& geo, const Vec& v, const Mat& frame) {
    const int m = static_cast<int>(frame.cols());
    Mat images(frame.rows(), m);
    for (int j = 0; j < m; ++j) {
        const Mat op = geo.weyl_riemann.operator_matrix(frame.col(j), v);
        images.col(j) = metric_antisymmetric_part(op, geo.metric.g, geo.g_inv) * v;
    }
    return frame.transpose() * geo.metric.g * images;
}

TangentDerivative linearized_rhs(const WeylScenario& scenario, const MovingFrame& frame, const TangentVector& t) {
    const LocalGeometry geo = evaluate_geometry(scenario, frame.base.q, GeometryOrder::Curvature);
    const Vec& v = frame.base.v;
    const double phi_v = geo.phi(v);
    TangentDerivative d;
    d.dxi0 = geo.phi(frame.frame * t.xi);
    d.dxi = -phi_v * t.xi + t.chi;
    d.dchi = -quotient_curvature(geo, v, frame.frame) * t.xi;
    return d;
}

namespace detail {

// A derivative is stored in a CoState too: base.q holds dq, base.v holds dv.
CoState co_derivative(const Flow& flow, const CoState& s) {
    CoState d;
    const PhaseDerivative b = flow.rhs(s.base);
    d.base = {b.dq, b.dv, 1.0};
    const bool tangent = s.xi.cols() > 0;
    const LocalGeometry geo = evaluate_geometry(flow.scenario(), s.base.q,
                                                tangent ? GeometryOrder::Curvature : GeometryOrder::Connection);
    const Vec& v = s.base.v;
    const double phi_v = geo.phi(v);
    d.frame = frame_rhs(geo, v, s.frame);
    d.phi_int = phi_v;
    if (tangent) {
        const Mat r = quotient_curvature(geo, v, s.frame);
        d.xi = -phi_v * s.xi + s.chi;
        d.chi = -r * s.xi;
        d.xi0 = (s.frame * s.xi).transpose() * geo.field.form;
    } else {
        d.xi = s.xi;
        d.chi = s.chi;
        d.xi0 = s.xi0;
    }
    return d;
}

namespace {

CoState stage(const CoState& s, const CoState& k, double h) {
    CoState o;
    o.base = {s.base.q + h * k.base.q, s.base.v + h * k.base.v, s.base.t + h};
    if (!o.base.q.allFinite() || !o.base.v.allFinite()) throw IntegrationError("non-finite RK4 stage");
    o.frame = s.frame + h * k.frame;
    o.xi = s.xi + h * k.xi;
    o.chi = s.chi + h * k.chi;
    o.xi0 = s.xi0 + h * k.xi0;
    o.phi_int = s.phi_int + h * k.phi_int;
    return o;
}

}  // namespace

CoState co_step(const Flow& flow, const CoState& s, double dt) {
    const CoState k1 = co_derivative(flow, s);
    const CoState k2 = co_derivative(flow, stage(s, k1, 0.5 * dt));
    const CoState k3 = co_derivative(flow, stage(s, k2, 0.5 * dt));
    const CoState k4 = co_derivative(flow, stage(s, k3, dt));
    const double w = dt / 6.0;
    CoState o;
    // same operation order as rk4_step so the base reproduces integrate()
    o.base.q = s.base.q + w * (k1.base.q + 2.0 * k2.base.q + 2.0 * k3.base.q + k4.base.q);
    o.base.v = s.base.v + w * (k1.base.v + 2.0 * k2.base.v + 2.0 * k3.base.v + k4.base.v);
    o.base.t = s.base.t + dt;
    o.frame = s.frame + w * (k1.frame + 2.0 * k2.frame + 2.0 * k3.frame + k4.frame);
    o.xi = s.xi + w * (k1.xi + 2.0 * k2.xi + 2.0 * k3.xi + k4.xi);
    o.chi = s.chi + w * (k1.chi + 2.0 * k2.chi + 2.0 * k3.chi + k4.chi);
    o.xi0 = s.xi0 + w * (k1.xi0 + 2.0 * k2.xi0 + 2.0 * k3.xi0 + k4.xi0);
    o.phi_int = s.phi_int + w * (k1.phi_int + 2.0 * k2.phi_int + 2.0 * k3.phi_int + k4.phi_int);
    flow.project(o.base);
    return o;
}

bool admits_recentring(const WeylScenario& scenario) {
    const auto* cc = std::get_if<ConstantCurvatureMetric>(&scenario.metric().family());
    if (!cc || !(cc->curvature < 0.0)) return false;
    const VectorField& f = scenario.field();
    if (f.identically_zero()) return true;
    const auto* grad = std::get_if<GradientField>(&f.kind());
    if (!grad) return false;
    const LogHeightPotential* lh = grad->potential.log_height();
    return lh && lh->axis == scenario.dim() - 1;
}

void recentre(CoState& s) {
    const long last = s.base.q.size() - 1;
    const double y = s.base.q[last];
    if (y >= 0.25 && y <= 4.0) return;
    s.base.q.head(last).setZero();
    s.base.q[last] = 1.0;
    s.base.v /= y;
    s.frame /= y;
}

CoState co_initial(const Flow& flow, const PhaseState& initial, int tangent_columns) {
    if (flow.kind() != FlowKind::Isokinetic) {
        throw UnsupportedConfigurationError(
            "tangent dynamics run on W-flows (isokinetic); reduce isoenergetic problems first");
    }
    const int n = flow.scenario().dim();
    CoState s;
    s.base = initial;
    flow.project(s.base);
    s.frame = initial_frame(flow.scenario().metric().g(s.base.q), s.base.v);
    s.xi = Mat::Zero(n - 1, tangent_columns);
    s.chi = Mat::Zero(n - 1, tangent_columns);
    s.xi0 = Vec::Zero(tangent_columns);
    return s;
}

}  // namespace detail

std::vector<MovingFrame> transport_frame(const Flow& flow, const Trajectory& traj, int cleanup_every) {
    if (traj.size() < 1) throw TooFewSamplesError("empty trajectory");
    detail::CoState s = detail::co_initial(flow, traj.states.front(), 0);
    s.base = traj.states.front();
    const Mat g0 = flow.scenario().metric().g(s.base.q);
    s.frame = initial_frame(g0, s.base.v);
    std::vector<MovingFrame> out;
    out.reserve(traj.size());
    out.push_back({s.base, s.frame, traj.int_phi.empty() ? 0.0 : traj.int_phi[0], 0.0});
    double defect = 0.0;
    for (std::size_t i = 1; i < traj.size(); ++i) {
        try {
            s = detail::co_step(flow, s, traj.dt);
        } catch (const IntegrationError& e) {
            throw IntegrationError(std::string(e.what()) + " at step " + std::to_string(i));
        }
        s.base.t = traj.states.front().t + static_cast<double>(i) * traj.dt;
        if (cleanup_every > 0 && i % static_cast<std::size_t>(cleanup_every) == 0) {
            defect = reorthonormalize(flow.scenario().metric().g(s.base.q), s.base.v, s.frame);
        }
        out.push_back({s.base, s.frame, traj.int_phi.size() > i ? traj.int_phi[i] : s.phi_int, defect});
    }
    return out;
}

double jform(const Vec& xi, const Vec& chi) { return xi.dot(chi); }

}  // namespace weylflow

namespace weylflow {

LinearizedRun linearized_run(const Flow& flow, const PhaseState& initial, const TangentVector& t0, double T,
                             double dt, int cleanup_every) {
    if (!(dt > 0.0) || !(T >= dt)) throw ConfigError("linearized run needs dt > 0 and T >= dt");
    const int n = flow.scenario().dim();
    if (t0.xi.size() != n - 1 || t0.chi.size() != n - 1) throw ConfigError("tangent vector must have n - 1 components");
    detail::CoState s = detail::co_initial(flow, initial, 1);
    s.xi.col(0) = t0.xi;
    s.chi.col(0) = t0.chi;
    s.xi0[0] = t0.xi0;

    LinearizedRun run;
    run.dt = dt;
    auto record = [&]() {
        const LocalGeometry geo = evaluate_geometry(flow.scenario(), s.base.q, GeometryOrder::Curvature);
        run.t.push_back(s.base.t);
        run.base.push_back(s.base);
        run.frame.push_back(s.frame);
        run.tangent.push_back({s.xi0[0], s.xi.col(0), s.chi.col(0)});
        run.phi_v.push_back(geo.phi(s.base.v));
        run.curvature.push_back(quotient_curvature(geo, s.base.v, s.frame));
    };
    record();
    const long steps = static_cast<long>(std::ceil(T / dt - 1e-9));
    for (long i = 1; i <= steps; ++i) {
        try {
            s = detail::co_step(flow, s, dt);
        } catch (const IntegrationError& e) {
            throw IntegrationError(std::string(e.what()) + " at step " + std::to_string(i));
        }
        s.base.t = initial.t + static_cast<double>(i) * dt;
        if (!s.xi.allFinite() || !s.chi.allFinite() || !std::isfinite(s.xi0[0])) {
            throw OverflowError("non-finite tangent growth at step " + std::to_string(i));
        }
        if (cleanup_every > 0 && i % cleanup_every == 0) {
            reorthonormalize(flow.scenario().metric().g(s.base.q), s.base.v, s.frame);
        }
        record();
    }
    return run;
}

double jform_identity_rhs(const TangentVector& t, double phi_v, const Mat& curvature) {
    return t.chi.squaredNorm() - phi_v * jform(t.xi, t.chi) - t.xi.dot(curvature * t.xi);
}

double jform_derivative_check(const LinearizedRun& run) {
    const std::size_t m = run.tangent.size();
    if (m < 5) throw TooFewSamplesError("J-form check needs at least five samples");
    std::vector<double> j(m);
    for (std::size_t k = 0; k < m; ++k) j[k] = jform(run.tangent[k].xi, run.tangent[k].chi);
    double worst = 0.0;
    for (std::size_t k = 2; k + 2 < m; ++k) {
        const double dj = (-j[k + 2] + 8.0 * j[k + 1] - 8.0 * j[k - 1] + j[k - 2]) / (12.0 * run.dt);
        worst = std::max(worst, std::abs(dj - jform_identity_rhs(run.tangent[k], run.phi_v[k], run.curvature[k])));
    }
    return worst;
}

double jseparation_margin(const Mat& curvature) {
    const Mat sym = -0.5 * (curvature + curvature.transpose());
    return Eigen::SelfAdjointEigenSolver<Mat>(sym).eigenvalues().minCoeff();
}

}  // namespace weylflow
