#include "weylflow/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "weylflow/errors.hpp"
#include "weylflow/rng.hpp"

namespace weylflow {

Mat metric_antisymmetric_part(const Mat& a, const Mat& g, const Mat& g_inv) {
    return 0.5 * (a - g_inv * a.transpose() * g);
}

Mat metric_symmetric_part(const Mat& a, const Mat& g, const Mat& g_inv) {
    return 0.5 * (a + g_inv * a.transpose() * g);
}

std::pair<Vec, Vec> orthonormal_plane(const LocalGeometry& geo, const Vec& x, const Vec& y) {
    const double nx = geo.norm(x);
    const double ny = geo.norm(y);
    if (!(nx > 0.0) || !(ny > 0.0)) throw DegeneratePlaneError("plane spanned by a zero vector");
    const Vec e1 = x / nx;
    Vec e2 = y - geo.inner(y, e1) * e1;
    const double n2 = geo.norm(e2);
    if (!(n2 > 1e-10 * ny)) throw DegeneratePlaneError("X and Y are linearly dependent");
    e2 /= n2;
    // second pass for orthogonality at rounding level
    e2 -= geo.inner(e2, e1) * e1;
    e2 /= geo.norm(e2);
    return {e1, e2};
}

Mat curvature_operator(const WeylScenario& scenario, const Vec& q, const Vec& x, const Vec& y) {
    const LocalGeometry geo = evaluate_geometry(scenario, q, GeometryOrder::Curvature);
    const double xx = geo.inner(x, x);
    const double yy = geo.inner(y, y);
    const double xy = geo.inner(x, y);
    if (!(xx * yy - xy * xy > 1e-20 * xx * yy)) {
        throw DegeneratePlaneError("X and Y are linearly dependent");
    }
    return geo.weyl_riemann.operator_matrix(x, y);
}

CurvatureSample sectional_weyl(const LocalGeometry& geo, const Vec& x_in, const Vec& y_in) {
    const auto [x, y] = orthonormal_plane(geo, x_in, y_in);
    CurvatureSample s;
    s.q = geo.q;
    s.x = x;
    s.y = y;

    s.weyl_operator = geo.weyl_riemann.operator_matrix(x, y);
    s.weyl_operator_antisym = metric_antisymmetric_part(s.weyl_operator, geo.metric.g, geo.g_inv);
    s.weyl_operator_sym = s.weyl_operator - s.weyl_operator_antisym;
    s.weyl_tensor = geo.inner(s.weyl_operator_antisym * y, x);

    s.riemannian = geo.inner(geo.riemann.operator_matrix(x, y) * y, x);

    const Vec& e = geo.field.vector;
    const double ex = geo.inner(e, x);
    const double ey = geo.inner(e, y);
    s.field_sq = geo.inner(e, e);
    s.field_plane_sq = ex * ex + ey * ey;
    s.field_perp_sq = std::max(0.0, s.field_sq - s.field_plane_sq);

    // (nabla E)^k_l = d_l E^k + Gamma^k_lm E^m
    const int n = geo.dim();
    Mat nabla_e = geo.field.d_vector;
    for (int k = 0; k < n; ++k) nabla_e.row(k) += (geo.levi_civita[k] * e).transpose();
    s.partial_divergence = geo.inner(nabla_e * x, x) + geo.inner(nabla_e * y, y);

    s.weyl = s.riemannian - s.field_perp_sq - s.partial_divergence;
    s.discrepancy = std::abs(s.weyl - s.weyl_tensor);
    return s;
}

CurvatureSample sectional_weyl(const WeylScenario& scenario, const Vec& q, const Vec& x,
                               const Vec& y) {
    const LocalGeometry geo = evaluate_geometry(scenario, q, GeometryOrder::Curvature);
    return sectional_weyl(geo, x, y);
}

double anosov_margin(const CurvatureSample& s) { return s.weyl + 0.25 * s.field_plane_sq; }

double anosov_margin(const WeylScenario& scenario, const Vec& q, const Vec& x, const Vec& y) {
    return anosov_margin(sectional_weyl(scenario, q, x, y));
}

void add_to_census(SignCensus& census, double value) {
    if (census.total() == 0) {
        census.min = value;
        census.max = value;
    } else {
        census.min = std::min(census.min, value);
        census.max = std::max(census.max, value);
    }
    if (std::abs(value) < kCurvatureZeroThreshold) {
        ++census.count_zero;
    } else if (value < 0.0) {
        ++census.count_negative;
    } else {
        ++census.count_positive;
    }
}

CurvatureScan curvature_sign_scan(const WeylScenario& scenario, int n_points, int n_planes,
                                  std::uint64_t seed, bool keep_samples) {
    if (n_points < 1 || n_planes < 1) throw ConfigError("scan needs positive point and plane counts");
    const int n = scenario.dim();
    const ChartDomain box = scenario.domain();
    CounterRng rng(seed);
    CurvatureScan scan;
    for (int p = 0; p < n_points; ++p) {
        Vec q(n);
        for (int i = 0; i < n; ++i) q[i] = rng.uniform(box.lower[i], box.upper[i]);
        const LocalGeometry geo = evaluate_geometry(scenario, q, GeometryOrder::Curvature);
        // Gaussian in the metric: a = L^{-T} z with g = L L^T.
        const Eigen::LLT<Mat> llt(geo.metric.g);
        const auto upper = llt.matrixU();
        for (int k = 0; k < n_planes; ++k) {
            const Vec a = upper.solve(rng.normal_vector(n));
            const Vec b = upper.solve(rng.normal_vector(n));
            CurvatureSample s = sectional_weyl(geo, a, b);
            add_to_census(scan.census, s.weyl);
            scan.census.max_route_discrepancy =
                std::max(scan.census.max_route_discrepancy, s.discrepancy);
            if (keep_samples) scan.samples.push_back(std::move(s));
        }
    }
    return scan;
}

}  // namespace weylflow
