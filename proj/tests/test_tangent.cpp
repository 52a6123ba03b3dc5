#include <gtest/gtest.h>

#include <cmath>

#include "weylflow/curvature.hpp"
#include "weylflow/errors.hpp"
#include "weylflow/lyapunov.hpp"
#include "weylflow/rng.hpp"
#include "weylflow/scenarios.hpp"
#include "weylflow/tangent.hpp"

using namespace weylflow;

namespace {

Vec vec(std::initializer_list<double> xs) {
    Vec v(static_cast<int>(xs.size()));
    int i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

PhaseState unit_state(const WeylScenario& s, const Vec& q, const Vec& v) {
    const Mat g = s.metric().g(q);
    return {q, v / std::sqrt(v.dot(g * v)), 0.0};
}

WeylScenario conformal_mixed() {
    const FourierField sigma(2, {{{1, 0}, 0.1, 0.05}, {{0, 1}, -0.08, 0.0}});
    return WeylScenario("conf", Metric(ConformalTorusMetric{sigma}),
                        VectorField(2, FourierVectorField{{FourierField(2, {{{0, 1}, 0.2, 0.1}, {{0, 0}, 0.3, 0.0}}),
                                                           FourierField(2, {{{1, 1}, -0.15, 0.2}})}}));
}

WeylScenario hyperbolic3_field() {
    return WeylScenario("h3", Metric(ConstantCurvatureMetric{3, -1.0}),
                        VectorField(3, FourierVectorField{{FourierField(3, {{{0, 1, 0}, 0.2, 0.1}}),
                                                           FourierField(3, {{{0, 0, 0}, 0.1, 0.0}}),
                                                           FourierField(3, {{{1, 0, 0}, 0.0, 0.15}})}}));
}

// Frame coordinates of the Jacobi data of the flow map, by central differences.
struct FdTangent {
    double xi0;
    Vec xi, chi;
};

FdTangent fd_tangent(const WeylScenario& s, const PhaseState& plus, const PhaseState& minus, double eps,
                     const Mat& frame) {
    const Vec q = 0.5 * (plus.q + minus.q);
    const Vec v = 0.5 * (plus.v + minus.v);
    const LocalGeometry geo = evaluate_geometry(s, q, GeometryOrder::Connection);
    const Vec xi = (plus.q - minus.q) / (2 * eps);
    const Vec dv = (plus.v - minus.v) / (2 * eps);
    const Vec eta = dv + contract(geo.levi_civita, xi, v);
    const Vec chi = eta + geo.phi(v) * xi - geo.inner(xi, v) * geo.field.vector;
    return {geo.inner(xi, v), frame.transpose() * geo.metric.g * xi, frame.transpose() * geo.metric.g * chi};
}

// Perturbed initial states realising (xi0, xi~, chi~) to first order.
std::pair<PhaseState, PhaseState> perturbed(const WeylScenario& s, const PhaseState& base, const Mat& frame,
                                            const TangentVector& t, double eps) {
    const LocalGeometry geo = evaluate_geometry(s, base.q, GeometryOrder::Connection);
    const Vec& v = base.v;
    const Vec xi = t.xi0 * v + frame * t.xi;
    Vec eta_coords(t.xi.size());
    for (int i = 0; i < t.xi.size(); ++i) {
        eta_coords[i] = t.chi[i] - geo.phi(v) * t.xi[i] + t.xi0 * geo.inner(geo.field.vector, frame.col(i));
    }
    const Vec eta = frame * eta_coords;
    const Vec dv = eta - contract(geo.levi_civita, xi, v);
    return {{base.q + eps * xi, base.v + eps * dv, base.t}, {base.q - eps * xi, base.v - eps * dv, base.t}};
}

}  // namespace

// ---------------------------------------------------------------------------
// transport_frame

TEST(TransportFrame, FlatTorusZeroFieldFrameIsConstant) {
    const Flow f = Flow::isokinetic(scenarios::flat_torus(vec({0.0, 0.0, 0.0})));
    const Trajectory tr = integrate(f, {vec({0.1, 0.2, 0.3}), vec({0.6, 0.8, 0.0}), 0.0}, 5.0, 0.01);
    const auto frames = transport_frame(f, tr);
    for (const auto& fr : frames) EXPECT_LT((fr.frame - frames.front().frame).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(TransportFrame, NormalizedNormsStayOneWhileRawTransportDecays) {
    const double a = 0.7;
    const WeylScenario s = scenarios::example_1_2(a);
    const Flow f = Flow::isokinetic(s);
    const double dt = 1e-3;
    const Trajectory tr = integrate(f, {vec({0.0, 0.4}), vec({1.0, 0.0}), 0.0}, 4.0, dt);
    const auto frames = transport_frame(f, tr);
    // raw Weyl transport de/dt = -Gammahat(v, e), integrated independently
    Vec e = vec({0.0, 1.0});
    for (std::size_t i = 0; i < frames.size(); ++i) {
        EXPECT_NEAR(frames[i].frame.col(0).norm(), 1.0, 1e-12);
        EXPECT_NEAR(e.norm(), std::exp(-a * tr.states[i].t), 1e-10);
        EXPECT_NEAR(e.norm() * std::exp(frames[i].int_phi), 1.0, 1e-10);
        const Vec v = tr.states[i].v;
        auto rhs = [&](const Vec& x) { return Vec(-contract(weyl_connection(s, tr.states[i].q).weyl, v, x)); };
        const Vec k1 = rhs(e), k2 = rhs(e + 0.5 * dt * k1), k3 = rhs(e + 0.5 * dt * k2), k4 = rhs(e + dt * k3);
        e += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
}

TEST(TransportFrame, StaysOrthonormalBetweenCleanups) {
    for (const WeylScenario& s : {conformal_mixed(), hyperbolic3_field(), scenarios::sol_scan()}) {
        const Flow f = Flow::isokinetic(s);
        const Vec q0 = s.dim() == 2 ? vec({0.2, 0.3}) : vec({0.1, -0.2, 1.0});
        const Trajectory tr = integrate(f, unit_state(s, q0, Vec::Ones(s.dim())), 5.0, 1e-3);
        const auto frames = transport_frame(f, tr, 10);
        for (std::size_t i = 0; i < frames.size(); ++i) {
            EXPECT_LT(frames[i].orthogonality_defect, 1e-8) << s.name();
            EXPECT_TRUE(frames[i].base.q == tr.states[i].q) << s.name();
            EXPECT_TRUE(frames[i].base.v == tr.states[i].v) << s.name();
        }
        // even without cleanup the conformal transport keeps angles
        const auto raw = transport_frame(f, tr, 0);
        const MovingFrame& last = raw.back();
        Mat all(s.dim(), s.dim());
        all << last.base.v, last.frame;
        const Mat gram = all.transpose() * s.metric().g(last.base.q) * all;
        EXPECT_LT((gram - Mat::Identity(s.dim(), s.dim())).cwiseAbs().maxCoeff(), 1e-8) << s.name();
    }
}

TEST(TransportFrame, CollapsedFrameIsReported) {
    Mat frame(3, 2);
    frame << 0, 0, 1, 1, 0, 1e-9;
    EXPECT_THROW(reorthonormalize(Mat::Identity(3, 3), vec({1, 0, 0}), frame), FrameCollapseError);
}

// ---------------------------------------------------------------------------
// linearized_rhs

TEST(LinearizedRhs, FreeJacobiFieldsOnFlatTorus) {
    const WeylScenario s = scenarios::flat_torus(vec({0.0, 0.0, 0.0}));
    const PhaseState b{vec({0.1, 0.2, 0.3}), vec({1.0, 0.0, 0.0}), 0.0};
    const MovingFrame fr{b, initial_frame(Mat::Identity(3, 3), b.v)};
    const TangentVector t{0.3, vec({0.5, -1.0}), vec({2.0, 0.25})};
    const TangentDerivative d = linearized_rhs(s, fr, t);
    EXPECT_LT((d.dxi - t.chi).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT(d.dchi.cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(d.dxi0, 0.0);
}

TEST(LinearizedRhs, ConstantCurvatureJacobiEquation) {
    for (double K : {-1.0, 0.5}) {
        for (int n : {2, 3}) {
            const WeylScenario s = scenarios::constant_curvature(n, K);
            Vec q = Vec::Zero(n);
            q[n - 1] = K < 0 ? 1.3 : 0.2;
            const PhaseState b = unit_state(s, q, Vec::LinSpaced(n, 0.3, 1.0));
            const MovingFrame fr{b, initial_frame(s.metric().g(q), b.v)};
            const TangentVector t{0.0, Vec::LinSpaced(n - 1, 1.0, -0.5), Vec::Zero(n - 1)};
            const TangentDerivative d = linearized_rhs(s, fr, t);
            EXPECT_LT((d.dchi + K * t.xi).cwiseAbs().maxCoeff(), 1e-9) << K << " " << n;
        }
    }
}

TEST(LinearizedRhs, AttractorLineHasTransverseContraction) {
    const double a = 1.3;
    const WeylScenario s = scenarios::example_1_2(a);
    const PhaseState b{vec({0.2, 0.2}), vec({1.0, 0.0}), 0.0};
    const MovingFrame fr{b, initial_frame(Mat::Identity(2, 2), b.v)};
    const LocalGeometry geo = evaluate_geometry(s, b.q, GeometryOrder::Curvature);
    EXPECT_DOUBLE_EQ(geo.phi(b.v), a);
    EXPECT_LT(quotient_curvature(geo, b.v, fr.frame).cwiseAbs().maxCoeff(), 1e-14);
    const TangentDerivative d = linearized_rhs(s, fr, {0.0, vec({1.0}), vec({0.0})});
    EXPECT_DOUBLE_EQ(d.dxi[0], -a);
}

TEST(LinearizedRhs, SurfaceCurvatureMatrixIsWeylSectional) {
    const WeylScenario s = conformal_mixed();
    CounterRng rng(9);
    for (int i = 0; i < 20; ++i) {
        const PhaseState b = unit_state(s, vec({rng.uniform(), rng.uniform()}), rng.normal_vector(2));
        const LocalGeometry geo = evaluate_geometry(s, b.q, GeometryOrder::Curvature);
        const Mat frame = initial_frame(geo.metric.g, b.v);
        const double r = quotient_curvature(geo, b.v, frame)(0, 0);
        EXPECT_NEAR(r, sectional_weyl(geo, b.v, frame.col(0)).weyl_tensor, 1e-10);
    }
}

TEST(LinearizedRhs, MatchesFiniteDifferenceOfFlowMap) {
    const double eps = 1e-6, dt = 1e-3, T = 2.0;
    for (const WeylScenario& s : {conformal_mixed(), hyperbolic3_field(), scenarios::sol_scan()}) {
        const int n = s.dim();
        const Flow f = Flow::isokinetic(s);
        const Vec q0 = n == 2 ? vec({0.2, 0.3}) : vec({0.1, -0.2, 1.0});
        const PhaseState b = unit_state(s, q0, Vec::LinSpaced(n, 1.0, 0.4));
        const Mat frame0 = initial_frame(s.metric().g(b.q), b.v);
        const TangentVector t0{0.4, Vec::LinSpaced(n - 1, 1.0, -0.7), Vec::LinSpaced(n - 1, -0.3, 0.8)};
        const LinearizedRun run = linearized_run(f, b, t0, T, dt);
        const auto [p, m] = perturbed(s, b, frame0, t0, eps);
        const Trajectory tp = integrate(f, p, T, dt);
        const Trajectory tm = integrate(f, m, T, dt);
        for (std::size_t k = 0; k < run.t.size(); k += 500) {
            const FdTangent fd = fd_tangent(s, tp.states[k], tm.states[k], eps, run.frame[k]);
            const TangentVector& lin = run.tangent[k];
            const double scale = std::max(1.0, lin.chi.cwiseAbs().maxCoeff());
            EXPECT_NEAR(fd.xi0, lin.xi0, 1e-5 * scale) << s.name() << " t=" << run.t[k];
            EXPECT_LT((fd.xi - lin.xi).cwiseAbs().maxCoeff(), 1e-5 * scale) << s.name() << " t=" << run.t[k];
            EXPECT_LT((fd.chi - lin.chi).cwiseAbs().maxCoeff(), 1e-5 * scale) << s.name() << " t=" << run.t[k];
        }
    }
}

// ---------------------------------------------------------------------------
// J-form

TEST(JForm, ZeroChiGivesZero) { EXPECT_EQ(jform(vec({1.0, 2.0}), vec({0.0, 0.0})), 0.0); }

TEST(JForm, StableSolutionOnHyperbolicPlane) {
    const WeylScenario s = scenarios::hyperbolic_geodesic();
    const LinearizedRun run =
        linearized_run(Flow::isokinetic(s), unit_state(s, vec({0.0, 1.0}), vec({1.0, 0.2})),
                       {0.0, vec({1.0}), vec({-1.0})}, 5.0, 1e-3);
    EXPECT_LT(jform_derivative_check(run), 1e-8);
    for (std::size_t k = 0; k < run.t.size(); k += 1000) {
        EXPECT_NEAR(run.tangent[k].xi[0], std::exp(-run.t[k]), 1e-6);
        EXPECT_NEAR(jform(run.tangent[k].xi, run.tangent[k].chi), -std::exp(-2 * run.t[k]), 1e-6);
    }
}

TEST(JForm, IdentityHoldsOnGeneralScenarios) {
    for (const WeylScenario& s : {conformal_mixed(), hyperbolic3_field()}) {
        const int n = s.dim();
        const Vec q0 = n == 2 ? vec({0.2, 0.3}) : vec({0.1, -0.2, 1.0});
        const LinearizedRun run =
            linearized_run(Flow::isokinetic(s), unit_state(s, q0, Vec::Ones(n)),
                           {0.0, Vec::LinSpaced(n - 1, 1.0, 0.5), Vec::LinSpaced(n - 1, 0.2, -0.4)}, 3.0, 1e-3);
        EXPECT_LT(jform_derivative_check(run), 1e-7) << s.name();
    }
}

TEST(JForm, StrictSeparationWhereCurvatureNegative) {
    // Khat = -1.2 everywhere, so J can only cross zero upwards.
    const WeylScenario s = scenarios::hyperbolic_potential(0.2);
    CounterRng rng(17);
    int crossings = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const double theta = rng.uniform(0, 2 * M_PI);
        const double xi = rng.normal();
        const LinearizedRun run = linearized_run(
            Flow::isokinetic(s), unit_state(s, vec({0.0, 1.0}), vec({std::cos(theta), std::sin(theta)})),
            {0.0, vec({xi}), vec({-xi * rng.uniform(0.5, 3.0)})}, 3.0, 1e-3);
        for (std::size_t k = 0; k < run.t.size(); ++k) {
            EXPECT_GT(jseparation_margin(run.curvature[k]), 0.0);
            const TangentVector& t = run.tangent[k];
            const double j = jform(t.xi, t.chi);
            if (std::abs(j) < 1e-6) EXPECT_GT(jform_identity_rhs(t, run.phi_v[k], run.curvature[k]), 0.0);
            if (k + 1 < run.t.size()) {
                const double next = jform(run.tangent[k + 1].xi, run.tangent[k + 1].chi);
                if ((j < 0) != (next < 0)) {
                    ++crossings;
                    EXPECT_LT(j, 0.0);
                    EXPECT_GT(jform_identity_rhs(t, run.phi_v[k], run.curvature[k]), 0.0);
                }
            }
        }
    }
    EXPECT_GE(crossings, 5);
    // chi = 0 puts the state on J = 0 exactly
    const LinearizedRun at_zero = linearized_run(Flow::isokinetic(s), unit_state(s, vec({0.0, 1.0}), vec({1.0, 0.0})),
                                                 {0.0, vec({1.0}), vec({0.0})}, 0.01, 1e-3);
    EXPECT_EQ(jform(at_zero.tangent[0].xi, at_zero.tangent[0].chi), 0.0);
    EXPECT_GT(jform_identity_rhs(at_zero.tangent[0], at_zero.phi_v[0], at_zero.curvature[0]), 0.0);
}

// ---------------------------------------------------------------------------
// Lyapunov spectrum

TEST(Lyapunov, FlatTorusIsNeutral) {
    const WeylScenario s = scenarios::flat_torus(vec({0.0, 0.0}));
    LyapunovOptions o;
    o.T = 500.0;
    o.dt = 1e-2;
    const LyapunovReport r = lyapunov_spectrum(Flow::isokinetic(s), {vec({0.1, 0.2}), vec({0.6, 0.8}), 0.0}, o);
    ASSERT_EQ(r.exponents.size(), 2);
    EXPECT_LT(r.exponents.cwiseAbs().maxCoeff(), 0.01);
    EXPECT_FALSE(r.finite_time);
}

TEST(Lyapunov, HyperbolicPlaneGeodesicFlow) {
    const WeylScenario s = scenarios::hyperbolic_geodesic();
    LyapunovOptions o;
    o.T = 200.0;
    o.dt = 1e-3;
    const LyapunovReport r = lyapunov_spectrum(Flow::isokinetic(s), unit_state(s, vec({0.0, 1.0}), vec({1.0, 0.3})), o);
    EXPECT_NEAR(r.exponents[0], 1.0, 0.02);
    EXPECT_NEAR(r.exponents[1], -1.0, 0.02);
    EXPECT_TRUE(r.finite_time);
    const auto [growth, decay] = splitting_volume_rates(r);
    EXPECT_NEAR(growth, 1.0, 0.02);
    EXPECT_NEAR(decay, -1.0, 0.02);
    EXPECT_LT(trace_check(r), 1e-6);
    EXPECT_GT(r.jsep_margin_min, 0.0);
    // doubling T changes the exponents by < 0.01
    o.T = 100.0;
    const LyapunovReport half =
        lyapunov_spectrum(Flow::isokinetic(s), unit_state(s, vec({0.0, 1.0}), vec({1.0, 0.3})), o);
    EXPECT_LT((half.exponents - r.exponents).cwiseAbs().maxCoeff(), 0.01);
}

TEST(Lyapunov, Example12AttractorSpectrum) {
    const double a = 1.0;
    LyapunovOptions o;
    o.T = 200.0;
    o.dt = 1e-2;
    const double theta = std::sqrt(2.0);  // irrational direction
    const LyapunovReport r = lyapunov_spectrum(Flow::isokinetic(scenarios::example_1_2(a)),
                                               {vec({0.1, 0.2}), vec({std::cos(theta), std::sin(theta)}), 0.0}, o);
    EXPECT_NEAR(r.exponents[0], 0.0, 0.02);
    EXPECT_NEAR(r.exponents[1], -a, 0.02);
    EXPECT_LT(trace_check(r), 1e-6);
    const auto [growth, decay] = splitting_volume_rates(r);
    EXPECT_NEAR(growth, 0.0, 0.02);
    EXPECT_NEAR(decay, -a, 0.02);
}

TEST(Lyapunov, TorusThreeConstantFieldPairs) {
    LyapunovOptions o;
    o.T = 100.0;
    o.dt = 1e-2;
    const LyapunovReport r = lyapunov_spectrum(Flow::isokinetic(scenarios::torus3_constant(1.0)),
                                               {vec({0.1, 0.2, 0.3}), vec({1.0, 0.0, 0.0}), 0.0}, o);
    ASSERT_EQ(r.exponents.size(), 4);
    EXPECT_NEAR(r.s_bar, -1.0, 1e-12);
    EXPECT_LT(pairing_check(r), 0.02);
    EXPECT_NEAR(r.exponents[0] + r.exponents[3], r.exponents[1] + r.exponents[2], 0.02);
}

TEST(Lyapunov, HyperbolicPlaneWithPotentialField) {
    const WeylScenario s = scenarios::hyperbolic_potential(0.2);
    LyapunovOptions o;
    o.T = 100.0;
    o.dt = 1e-3;
    const LyapunovReport r = lyapunov_spectrum(Flow::isokinetic(s), unit_state(s, vec({0.0, 1.0}), vec({1.0, 0.3})), o);
    EXPECT_LT(pairing_check(r), 0.02);
    EXPECT_LT(trace_check(r), 1e-6);
    EXPECT_GT(r.exponents[0], 0.0);
    EXPECT_LT(r.exponents[1], 0.0);
    EXPECT_GT(r.growth_rate, 0.0);
    EXPECT_LT(r.decay_rate, 0.0);
    EXPECT_GT(r.jsep_margin_min, 0.0);
}

TEST(Lyapunov, TimeReversalNegatesSpectrum) {
    const WeylScenario s = scenarios::hyperbolic_geodesic();
    LyapunovOptions o;
    o.T = 100.0;
    o.dt = 1e-3;
    const PhaseState x = unit_state(s, vec({0.0, 1.0}), vec({1.0, 0.3}));
    const LyapunovReport fwd = lyapunov_spectrum(Flow::isokinetic(s), x, o);
    const LyapunovReport bwd = lyapunov_spectrum(Flow::isokinetic(s), reversed(x), o);
    EXPECT_NEAR(bwd.exponents[0], -fwd.exponents[1], 0.02);
    EXPECT_NEAR(bwd.exponents[1], -fwd.exponents[0], 0.02);
}

TEST(Lyapunov, ThreeDimensionalTraceIdentity) {
    LyapunovOptions o;
    o.T = 20.0;
    o.dt = 1e-3;
    const WeylScenario s = hyperbolic3_field();
    const LyapunovReport r = lyapunov_spectrum(Flow::isokinetic(s), unit_state(s, vec({0.1, -0.2, 1.0}), vec({1, 1, 1})), o);
    ASSERT_EQ(r.exponents.size(), 4);
    for (int i = 0; i + 1 < 4; ++i) EXPECT_GE(r.exponents[i], r.exponents[i + 1]);
    EXPECT_LT(trace_check(r), 1e-6);
    EXPECT_FALSE(r.windows.empty());
    EXPECT_NEAR(r.windows.back().t, r.T, 1e-9);
}

TEST(Lyapunov, RejectsIsoenergeticFlow) {
    const Flow f = Flow::isoenergetic(scenarios::flat_torus(vec({0.0, 0.0})), {FourierField::zero(2), 0.5});
    LyapunovOptions o;
    o.T = 1.0;
    EXPECT_THROW(lyapunov_spectrum(f, {vec({0, 0}), vec({1, 0}), 0.0}, o), UnsupportedConfigurationError);
}
