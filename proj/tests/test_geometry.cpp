#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "weylflow/curvature.hpp"
#include "weylflow/errors.hpp"
#include "weylflow/rng.hpp"
#include "weylflow/scenarios.hpp"

using namespace weylflow;

namespace {

Vec vec(std::initializer_list<double> xs) {
    Vec v(static_cast<int>(xs.size()));
    int i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

FourierField sigma2() { return FourierField(2, {{{1, 0}, 0.1, 0.05}, {{1, 1}, -0.04, 0.08}}); }
FourierField sigma3() {
    return FourierField(3, {{{1, 0, 0}, 0.08, 0.0}, {{0, 1, -1}, 0.05, 0.03}, {{1, 1, 0}, 0.0, -0.06}});
}

VectorField fourier_field2() {
    return VectorField(2, FourierVectorField{{FourierField(2, {{{0, 1}, 0.3, 0.1}, {{0, 0}, 0.5, 0.0}}),
                                              FourierField(2, {{{1, 1}, -0.2, 0.25}})}});
}

VectorField fourier_field3() {
    return VectorField(3, FourierVectorField{{FourierField(3, {{{0, 1, 0}, 0.3, 0.1}}),
                                              FourierField(3, {{{1, 0, 1}, -0.2, 0.25}}),
                                              FourierField(3, {{{0, 0, 0}, 0.4, 0.0}, {{1, 0, 0}, 0.0, 0.2}})}});
}

// One representative of every metric family and field kind.
std::vector<WeylScenario> families() {
    std::vector<WeylScenario> out;
    out.emplace_back("flat2_fourier", Metric(FlatTorusMetric{{1.0, 1.0}}), fourier_field2());
    out.emplace_back("flat3_gradient", Metric(FlatTorusMetric{{1.0, 1.0, 1.0}}),
                     VectorField(3, GradientField{sigma3()}));
    out.emplace_back("conformal2_fourier", Metric(ConformalTorusMetric{sigma2()}), fourier_field2());
    out.emplace_back("conformal3_closed", Metric(ConformalTorusMetric{sigma3()}),
                     VectorField(3, ClosedOneFormField{vec({0.3, -0.2, 0.5})}));
    out.emplace_back("conformal3_gradient", Metric(ConformalTorusMetric{sigma3()}),
                     VectorField(3, GradientField{FourierField(3, {{{1, 1, 0}, 0.2, 0.1}})}));
    out.emplace_back("hyperbolic2_log", Metric(ConstantCurvatureMetric{2, -1.0}),
                     VectorField(2, GradientField{LogHeightPotential{2, 1, 0.3}}));
    out.emplace_back("hyperbolic3_fourier", Metric(ConstantCurvatureMetric{3, -2.0}), fourier_field3());
    out.emplace_back("sphere3_fourier", Metric(ConstantCurvatureMetric{3, 0.7}), fourier_field3());
    out.emplace_back("sol_general", Metric(SolMetric{}),
                     VectorField(3, SolLeftInvariantField{vec({0.3, -0.4, 0.8})}));
    out.emplace_back("maupertuis_const", Metric(MaupertuisMetric{sigma2(), 1.0}),
                     VectorField(2, ConstantField{vec({0.2, 0.1})}));
    {
        auto base = std::make_shared<const VectorField>(2, ConstantField{vec({0.3, -0.1})});
        out.emplace_back("flat2_reduced", Metric(FlatTorusMetric{{1.0, 1.0}}),
                         VectorField(2, ReducedField{base, FourierField(2, {{{1, 0}, 0.2, 0.0}}), 1.0}));
    }
    out.push_back(product_scenario(
        WeylScenario("c2", Metric(ConformalTorusMetric{sigma2()}), fourier_field2()),
        WeylScenario("h2", Metric(ConstantCurvatureMetric{2, -1.0}),
                     VectorField(2, GradientField{LogHeightPotential{2, 1, 0.2}}))));
    return out;
}

Vec random_point(const WeylScenario& s, CounterRng& rng) {
    const ChartDomain box = s.domain();
    Vec q(s.dim());
    for (int i = 0; i < s.dim(); ++i) q[i] = rng.uniform(box.lower[i], box.upper[i]);
    return q;
}

double max_abs_diff(const Christoffel& a, const Christoffel& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, (a[k] - b[k]).cwiseAbs().maxCoeff());
    return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Scenario invariants

TEST(Scenario, MetricPositiveDefiniteOnSampleGrid) {
    CounterRng rng(11);
    for (const auto& s : families()) {
        for (int i = 0; i < 50; ++i) {
            const Vec q = random_point(s, rng);
            EXPECT_NO_THROW(s.metric().jet(q, 2)) << s.name();
        }
    }
}

TEST(Scenario, FormIsMetricDualOfField) {
    CounterRng rng(12);
    for (const auto& s : families()) {
        for (int i = 0; i < 20; ++i) {
            const Vec q = random_point(s, rng);
            const LocalGeometry geo = evaluate_geometry(s, q, GeometryOrder::Metric);
            const Vec x = rng.normal_vector(s.dim());
            EXPECT_NEAR(geo.phi(x), geo.inner(geo.field.vector, x), 1e-12) << s.name();
        }
    }
}

TEST(Scenario, GradientFieldsAreClosed) {
    CounterRng rng(13);
    for (const auto& s : families()) {
        if (!std::holds_alternative<GradientField>(s.field().kind())) continue;
        for (int i = 0; i < 20; ++i) {
            const Vec q = random_point(s, rng);
            const LocalGeometry geo = evaluate_geometry(s, q, GeometryOrder::Metric);
            const Mat curl = geo.field.d_form.transpose() - geo.field.d_form;
            EXPECT_LT(curl.cwiseAbs().maxCoeff(), 1e-10) << s.name();
        }
    }
}

TEST(Scenario, FieldDerivativesMatchFiniteDifferences) {
    CounterRng rng(14);
    for (const auto& s : families()) {
        const Vec q = random_point(s, rng);
        const LocalGeometry geo = evaluate_geometry(s, q, GeometryOrder::Metric);
        for (int m = 0; m < s.dim(); ++m) {
            const Vec fd = oracle::richardson_derivative(
                [&](const Vec& p) -> Vec {
                    return s.field().evaluate(p, s.metric().jet(p, 1)).vector;
                },
                q, m);
            EXPECT_LT((fd - geo.field.d_vector.col(m)).cwiseAbs().maxCoeff(), 1e-7) << s.name();
        }
    }
}

TEST(Scenario, ProductIsBlockDiagonal) {
    const WeylScenario p = scenarios::product_mixed();
    EXPECT_EQ(p.dim(), 4);
    Vec q(4);
    q << 0.1, 0.2, 0.3, 0.4;
    const Mat g = p.metric().g(q);
    EXPECT_EQ(g.block(0, 2, 2, 2).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(g.block(2, 0, 2, 2).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Scenario, DegenerateMetricNamesPoint) {
    const WeylScenario s("bad", Metric(MaupertuisMetric{FourierField::single({1, 0}, 2.0), 1.0}),
                         VectorField::zero(2));
    Vec q(2);
    q << 0.0, 0.3;  // W = 2 > h
    try {
        evaluate_geometry(s, q, GeometryOrder::Connection);
        FAIL() << "expected DegenerateMetricError";
    } catch (const DegenerateMetricError& e) {
        EXPECT_NE(std::string(e.what()).find("0.29999"), std::string::npos);
    }
}

TEST(Scenario, HalfSpaceChartRejectsOutsidePoints) {
    const WeylScenario s = scenarios::hyperbolic_geodesic();
    EXPECT_THROW(evaluate_geometry(s, vec({0.0, -0.5}), GeometryOrder::Metric), DomainError);
}

// ---------------------------------------------------------------------------
// christoffel

TEST(Christoffel, FlatTorusIsZero) {
    const WeylScenario s = scenarios::torus3_constant(0.0);
    const auto c = christoffel(s, vec({0.3, 0.8, 0.1}));
    for (const auto& m : c.levi_civita) EXPECT_EQ(m.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Christoffel, HalfPlaneClosedForm) {
    // g = (dx^2 + dy^2) / y^2: Gamma^x_xy = -1/y, Gamma^y_xx = 1/y, Gamma^y_yy = -1/y.
    const WeylScenario s = scenarios::hyperbolic_geodesic();
    const double y = 0.7;
    const auto c = christoffel(s, vec({0.3, y}));
    EXPECT_NEAR(c.levi_civita[0](0, 0), 0.0, 1e-15);
    EXPECT_NEAR(c.levi_civita[0](0, 1), -1.0 / y, 1e-14);
    EXPECT_NEAR(c.levi_civita[0](1, 0), -1.0 / y, 1e-14);
    EXPECT_NEAR(c.levi_civita[0](1, 1), 0.0, 1e-15);
    EXPECT_NEAR(c.levi_civita[1](0, 0), 1.0 / y, 1e-14);
    EXPECT_NEAR(c.levi_civita[1](0, 1), 0.0, 1e-15);
    EXPECT_NEAR(c.levi_civita[1](1, 1), -1.0 / y, 1e-14);
}

TEST(Christoffel, StereographicSphereClosedForm) {
    // g = e^{2f} delta, f = ln 2 - ln(1 + K r^2):
    // Gamma^k_ij = d_ki f_j + d_kj f_i - d_ij f_k, f_k = -2 K q_k / (1 + K r^2).
    const double K = 0.7;
    const WeylScenario s = scenarios::constant_curvature(2, K);
    const Vec q = vec({0.2, -0.5});
    const double d = 1.0 + K * q.squaredNorm();
    const Vec f = (-2.0 * K / d) * q;
    const auto c = christoffel(s, q);
    for (int k = 0; k < 2; ++k) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                const double expected = (k == i ? f[j] : 0.0) + (k == j ? f[i] : 0.0) - (i == j ? f[k] : 0.0);
                EXPECT_NEAR(c.levi_civita[k](i, j), expected, 1e-14);
            }
        }
    }
}

TEST(Christoffel, MatchesFiniteDifferenceOracle) {
    CounterRng rng(21);
    for (const auto& s : families()) {
        for (int i = 0; i < 10; ++i) {
            const Vec q = random_point(s, rng);
            const auto c = christoffel(s, q);
            EXPECT_LT(max_abs_diff(c.levi_civita, oracle::fd_levi_civita(s.metric(), q)), 1e-6) << s.name();
        }
    }
}

TEST(Christoffel, SymmetricInLowerIndices) {
    CounterRng rng(22);
    for (const auto& s : families()) {
        const auto c = weyl_connection(s, random_point(s, rng));
        for (int k = 0; k < s.dim(); ++k) {
            EXPECT_EQ((c.levi_civita[k] - c.levi_civita[k].transpose()).cwiseAbs().maxCoeff(), 0.0);
            EXPECT_EQ((c.weyl[k] - c.weyl[k].transpose()).cwiseAbs().maxCoeff(), 0.0);
        }
    }
}

// ---------------------------------------------------------------------------
// weyl_connection

TEST(WeylConnection, ZeroFieldReducesToLeviCivita) {
    const WeylScenario s("conf", Metric(ConformalTorusMetric{sigma2()}), VectorField::zero(2));
    const auto c = weyl_connection(s, vec({0.31, 0.77}));
    for (int k = 0; k < 2; ++k) EXPECT_TRUE(c.weyl[k] == c.levi_civita[k]);
}

TEST(WeylConnection, FlatTorusCorrectionTensor) {
    const double a = 0.8;
    const auto c = weyl_connection(scenarios::example_1_2(a), vec({0.2, 0.9}));
    const Vec phi = vec({a, 0.0});
    for (int k = 0; k < 2; ++k) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                const double expected = (k == i ? phi[j] : 0.0) + (k == j ? phi[i] : 0.0) - (i == j ? phi[k] : 0.0);
                EXPECT_EQ(c.weyl[k](i, j) - c.levi_civita[k](i, j), expected);
            }
        }
    }
}

TEST(WeylConnection, CorrectionMatchesDefiningFormula) {
    CounterRng rng(31);
    for (const auto& s : families()) {
        const Vec q = random_point(s, rng);
        const LocalGeometry geo = evaluate_geometry(s, q, GeometryOrder::Connection);
        for (int k = 0; k < s.dim(); ++k) {
            for (int i = 0; i < s.dim(); ++i) {
                for (int j = 0; j < s.dim(); ++j) {
                    const double expected = (k == i ? geo.field.form[j] : 0.0) +
                                            (k == j ? geo.field.form[i] : 0.0) -
                                            geo.metric.g(i, j) * geo.field.vector[k];
                    EXPECT_NEAR(geo.weyl[k](i, j) - geo.levi_civita[k](i, j), expected, 1e-12);
                }
            }
        }
    }
}

TEST(WeylConnection, CompatibilityWithConformalClass) {
    // (nabla-hat_X g)_ij = X^m d_m g_ij - Gamma-hat^k_mi X^m g_kj - Gamma-hat^k_mj X^m g_ik
    // must equal -2 phi(X) g_ij; d_m g by finite differences.
    CounterRng rng(32);
    const auto fams = families();
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const WeylScenario& s = fams[static_cast<std::size_t>(trial) % fams.size()];
        const int n = s.dim();
        const Vec q = random_point(s, rng);
        const Vec x = rng.normal_vector(n);
        const LocalGeometry geo = evaluate_geometry(s, q, GeometryOrder::Connection);
        Mat dg = Mat::Zero(n, n);
        for (int m = 0; m < n; ++m) {
            dg += x[m] * oracle::richardson_derivative([&](const Vec& p) -> Mat { return s.metric().g(p); }, q, m);
        }
        Mat lhs = dg;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                for (int k = 0; k < n; ++k) {
                    lhs(i, j) -= geo.weyl[k].row(i).dot(x) * geo.metric.g(k, j) +
                                 geo.weyl[k].row(j).dot(x) * geo.metric.g(i, k);
                }
            }
        }
        const Mat rhs = -2.0 * geo.phi(x) * geo.metric.g;
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    EXPECT_LT(worst, 1e-8);
}

// ---------------------------------------------------------------------------
// curvature_operator

TEST(CurvatureOperator, FlatTorusZeroFieldIsZero) {
    const Mat r = curvature_operator(scenarios::torus3_constant(0.0), vec({0.1, 0.2, 0.3}),
                                     vec({1, 0, 0}), vec({0, 1, 0}));
    EXPECT_EQ(r.cwiseAbs().maxCoeff(), 0.0);
}

TEST(CurvatureOperator, ConstantCurvatureClosedForm) {
    CounterRng rng(41);
    for (double K : {-1.0, -2.5, 0.6}) {
        for (int n : {2, 3}) {
            const WeylScenario s = scenarios::constant_curvature(n, K);
            for (int trial = 0; trial < 10; ++trial) {
                const Vec q = random_point(s, rng);
                const Vec x = rng.normal_vector(n);
                const Vec y = rng.normal_vector(n);
                const Vec z = rng.normal_vector(n);
                const Mat g = s.metric().g(q);
                const Vec expected = K * (y.dot(g * z) * x - x.dot(g * z) * y);
                const Vec got = curvature_operator(s, q, x, y) * z;
                EXPECT_LT((got - expected).cwiseAbs().maxCoeff(), 1e-6 * std::max(1.0, expected.norm()))
                    << "K=" << K << " n=" << n;
            }
        }
    }
}

TEST(CurvatureOperator, AntisymmetricInArguments) {
    CounterRng rng(42);
    for (const auto& s : families()) {
        const Vec q = random_point(s, rng);
        const Vec x = rng.normal_vector(s.dim());
        const Vec y = rng.normal_vector(s.dim());
        const Mat a = curvature_operator(s, q, x, y);
        const Mat b = curvature_operator(s, q, y, x);
        EXPECT_LT((a + b).cwiseAbs().maxCoeff(), 1e-10) << s.name();
    }
}

TEST(CurvatureOperator, MatchesFiniteDifferenceOfConnection) {
    CounterRng rng(43);
    for (const auto& s : families()) {
        const Vec q = random_point(s, rng);
        const Vec x = rng.normal_vector(s.dim());
        const Vec y = rng.normal_vector(s.dim());
        const Mat a = curvature_operator(s, q, x, y);
        const Mat b = oracle::fd_curvature_operator(s, q, x, y);
        EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-6 * std::max(1.0, a.cwiseAbs().maxCoeff())) << s.name();
    }
}

TEST(CurvatureOperator, DependentVectorsRejected) {
    const WeylScenario s = scenarios::torus3_constant(1.0);
    EXPECT_THROW(curvature_operator(s, vec({0.1, 0.1, 0.1}), vec({1, 2, 3}), vec({2, 4, 6})),
                 DegeneratePlaneError);
    EXPECT_THROW(sectional_weyl(s, vec({0.1, 0.1, 0.1}), vec({1, 2, 3}), vec({-1, -2, -3})),
                 DegeneratePlaneError);
}

// ---------------------------------------------------------------------------
// sectional_weyl / anosov_margin

TEST(SectionalWeyl, RoutesAgreeOnAllFamilies) {
    CounterRng rng(51);
    for (const auto& s : families()) {
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const Vec q = random_point(s, rng);
            const CurvatureSample c = sectional_weyl(s, q, rng.normal_vector(s.dim()), rng.normal_vector(s.dim()));
            worst = std::max(worst, c.discrepancy);
        }
        EXPECT_LT(worst, 1e-6) << s.name();
    }
}

TEST(SectionalWeyl, SplitIsExactAndBasisOrthonormal) {
    CounterRng rng(52);
    for (const auto& s : families()) {
        const Vec q = random_point(s, rng);
        const CurvatureSample c = sectional_weyl(s, q, rng.normal_vector(s.dim()), rng.normal_vector(s.dim()));
        const Mat g = s.metric().g(q);
        EXPECT_LT((c.weyl_operator_antisym + c.weyl_operator_sym - c.weyl_operator).cwiseAbs().maxCoeff(), 1e-14);
        // antisymmetric part is g-skew: g A + A^T g = 0
        const Mat skew = g * c.weyl_operator_antisym + c.weyl_operator_antisym.transpose() * g;
        EXPECT_LT(skew.cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, c.weyl_operator.cwiseAbs().maxCoeff()));
        EXPECT_NEAR(c.x.dot(g * c.y), 0.0, 1e-12);
        EXPECT_NEAR(c.x.dot(g * c.x), 1.0, 1e-12);
        EXPECT_NEAR(c.y.dot(g * c.y), 1.0, 1e-12);
    }
}

TEST(SectionalWeyl, FlatTorusPlaneContainingFieldIsZero) {
    const double a = 0.9;
    const auto c = sectional_weyl(scenarios::torus3_constant(a), vec({0.3, 0.2, 0.6}), vec({1, 0, 0}),
                                  vec({0, 0.6, 0.8}));
    EXPECT_NEAR(c.weyl, 0.0, 1e-10);
    EXPECT_NEAR(c.weyl_tensor, 0.0, 1e-10);
}

TEST(SectionalWeyl, FlatTorusPlaneOrthogonalToField) {
    const double a = 0.9;
    const auto c = sectional_weyl(scenarios::torus3_constant(a), vec({0.3, 0.2, 0.6}), vec({0, 1, 0}),
                                  vec({0, 0, 1}));
    EXPECT_NEAR(c.weyl, -a * a, 1e-12);
    EXPECT_NEAR(c.weyl_tensor, -a * a, 1e-12);
}

TEST(SectionalWeyl, SurfaceCurvatureIsGaussMinusDivergence) {
    CounterRng rng(53);
    for (const auto& s : families()) {
        if (s.dim() != 2) continue;
        for (int trial = 0; trial < 10; ++trial) {
            const Vec q = random_point(s, rng);
            const LocalGeometry geo = evaluate_geometry(s, q, GeometryOrder::Curvature);
            // div E = d_k E^k + Gamma^k_kj E^j
            double div = geo.field.d_vector.trace();
            for (int k = 0; k < 2; ++k) div += geo.levi_civita[k].row(k).dot(geo.field.vector);
            const CurvatureSample c = sectional_weyl(geo, rng.normal_vector(2), rng.normal_vector(2));
            EXPECT_NEAR(c.field_perp_sq, 0.0, 1e-12);
            EXPECT_NEAR(c.weyl, c.riemannian - div, 1e-10) << s.name();
        }
    }
}

TEST(SectionalWeyl, ZeroFieldReproducesRiemannianBitForBit) {
    CounterRng rng(54);
    for (const auto& s0 : families()) {
        if (std::holds_alternative<ProductMetric>(s0.metric().family())) continue;
        const WeylScenario s = s0.with_field("zero", VectorField::zero(s0.dim()));
        const Vec q = random_point(s, rng);
        const LocalGeometry geo = evaluate_geometry(s, q, GeometryOrder::Curvature);
        for (int k = 0; k < s.dim(); ++k) EXPECT_TRUE(geo.weyl[k] == geo.levi_civita[k]);
        const Vec x = rng.normal_vector(s.dim());
        const Vec y = rng.normal_vector(s.dim());
        EXPECT_TRUE(geo.weyl_riemann.operator_matrix(x, y) == geo.riemann.operator_matrix(x, y));
        const CurvatureSample c = sectional_weyl(geo, x, y);
        EXPECT_EQ(c.weyl, c.riemannian);
        EXPECT_NEAR(c.weyl_tensor, c.riemannian, 1e-12);
    }
}

TEST(AnosovMargin, ZeroFieldEqualsRiemannianCurvature) {
    const WeylScenario s = scenarios::constant_curvature(3, -1.3);
    const Vec q = vec({0.1, 0.2, 0.9});
    const auto c = sectional_weyl(s, q, vec({1, 0, 0}), vec({0.3, 1, 0}));
    EXPECT_EQ(anosov_margin(c), c.riemannian);
    EXPECT_NEAR(c.riemannian, -1.3, 1e-10);
}

TEST(AnosovMargin, FlatTorusPlaneContainingField) {
    const double a = 0.9;
    const double m = anosov_margin(scenarios::torus3_constant(a), vec({0.3, 0.2, 0.6}), vec({1, 0, 0}),
                                   vec({0, 1, 0}));
    EXPECT_NEAR(m, 0.25 * a * a, 1e-12);
}

TEST(AnosovMargin, HyperbolicChartWithSmallField) {
    // E = c d_y on H^3, |E| = c / z; margin stays negative while |E|^2 < 4/5.
    const double c = 0.5;
    CounterRng rng(55);
    const WeylScenario h3("h3_dy", Metric(ConstantCurvatureMetric{3, -1.0}),
                          VectorField(3, ConstantField{vec({0.0, c, 0.0})}));
    double worst = -1e9;
    for (int trial = 0; trial < 500; ++trial) {
        Vec q = random_point(h3, rng);
        q[2] = rng.uniform(0.8, 2.0);  // |E|^2 = c^2 / z^2 <= 0.39 < 4/5
        const CurvatureSample smp = sectional_weyl(h3, q, rng.normal_vector(3), rng.normal_vector(3));
        EXPECT_NEAR(smp.field_sq, c * c / (q[2] * q[2]), 1e-12);
        worst = std::max(worst, anosov_margin(smp));
    }
    EXPECT_LT(worst, 0.0);
}

// ---------------------------------------------------------------------------
// curvature_sign_scan / product_scenario

TEST(SignScan, FlatTorusGradientFieldHasBothSigns) {
    const auto scan = curvature_sign_scan(
        scenarios::flat_torus_gradient(FourierField(2, {{{1, 0}, 0.2, 0.0}, {{1, 1}, 0.0, 0.1}})), 200, 2, 5);
    EXPECT_GT(scan.census.count_negative, 0);
    EXPECT_GT(scan.census.count_positive, 0);
    EXPECT_LT(scan.census.max_route_discrepancy, 1e-6);
}

TEST(SignScan, FlatThreeTorusConstantFieldIsNonpositive) {
    const auto scan = curvature_sign_scan(scenarios::torus3_constant(1.0), 100, 10, 6);
    EXPECT_LT(scan.census.min, 0.0);
    EXPECT_LE(scan.census.max, kCurvatureZeroThreshold);
    EXPECT_EQ(scan.census.count_positive, 0);
}

TEST(SignScan, SolDistinguishedFieldIsNonpositiveWithNegatives) {
    const auto scan = curvature_sign_scan(scenarios::sol_scan(), 200, 20, 7);
    EXPECT_EQ(scan.census.count_positive, 0);
    EXPECT_GT(scan.census.count_negative, 0);
    EXPECT_LT(scan.census.max_route_discrepancy, 1e-6);
}

TEST(SignScan, SolRiemannianCurvatureIsMixed) {
    const WeylScenario s = scenarios::sol_scan().with_field("sol_riemannian", VectorField::zero(3));
    const auto scan = curvature_sign_scan(s, 50, 20, 8);
    EXPECT_GT(scan.census.count_negative, 0);
    EXPECT_GT(scan.census.count_positive, 0);
}

TEST(SignScan, DeterministicInSeed) {
    const auto a = curvature_sign_scan(scenarios::product_mixed(), 30, 5, 99, true);
    const auto b = curvature_sign_scan(scenarios::product_mixed(), 30, 5, 99, true);
    ASSERT_EQ(a.samples.size(), b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        EXPECT_EQ(a.samples[i].weyl, b.samples[i].weyl);
        EXPECT_TRUE(a.samples[i].q == b.samples[i].q);
    }
    EXPECT_EQ(a.census.count_negative, b.census.count_negative);
    const auto c = curvature_sign_scan(scenarios::product_mixed(), 30, 5, 100, true);
    EXPECT_NE(a.samples[0].weyl, c.samples[0].weyl);
}

namespace {

// Khat in the plane spanned by (E1, 0) and (0, E2).
double mixed_plane_curvature(const WeylScenario& p, const Vec& q) {
    const LocalGeometry geo = evaluate_geometry(p, q, GeometryOrder::Curvature);
    Vec x = Vec::Zero(p.dim());
    Vec y = Vec::Zero(p.dim());
    x.head(2) = geo.field.vector.head(2);
    y.tail(2) = geo.field.vector.tail(2);
    return sectional_weyl(geo, x, y).weyl;
}

}  // namespace

TEST(ProductScenario, ConstantFieldsGiveZeroMixedCurvature) {
    const WeylScenario p = scenarios::product_constant();
    CounterRng rng(61);
    for (int i = 0; i < 50; ++i) EXPECT_NEAR(mixed_plane_curvature(p, random_point(p, rng)), 0.0, 1e-12);
}

TEST(ProductScenario, NonconstantNormGivesMixedSigns) {
    const WeylScenario p = scenarios::product_mixed();
    CounterRng rng(62);
    SignCensus census;
    for (int i = 0; i < 400; ++i) add_to_census(census, mixed_plane_curvature(p, random_point(p, rng)));
    EXPECT_GT(census.count_negative, 0);
    EXPECT_GT(census.count_positive, 0);
}

TEST(ProductScenario, ZeroFieldsGiveRiemannianProduct) {
    const WeylScenario a("h", Metric(ConstantCurvatureMetric{2, -1.0}), VectorField::zero(2));
    const WeylScenario b("c", Metric(ConformalTorusMetric{sigma2()}), VectorField::zero(2));
    const WeylScenario p = product_scenario(a, b);
    CounterRng rng(63);
    for (int i = 0; i < 20; ++i) {
        const Vec q = random_point(p, rng);
        Vec x = Vec::Zero(4);
        Vec y = Vec::Zero(4);
        x.head(2) = rng.normal_vector(2);
        y.tail(2) = rng.normal_vector(2);
        const CurvatureSample c = sectional_weyl(p, q, x, y);
        EXPECT_NEAR(c.weyl, 0.0, 1e-12);
        EXPECT_EQ(c.weyl, c.riemannian);
        // plane inside the first factor: curvature of that factor
        Vec x1 = Vec::Zero(4);
        Vec y1 = Vec::Zero(4);
        x1.head(2) = rng.normal_vector(2);
        y1.head(2) = rng.normal_vector(2);
        EXPECT_NEAR(sectional_weyl(p, q, x1, y1).weyl, -1.0, 1e-10);
    }
}
