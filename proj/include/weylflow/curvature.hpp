#pragma once

#include <cstdint>
#include <vector>

#include "weylflow/local_geometry.hpp"

namespace weylflow {

/// Weyl sectional curvature data for the plane spanned by an orthonormal pair.
struct CurvatureSample {
    Vec q;
    Vec x;  // orthonormal basis of the plane
    Vec y;
    double riemannian = 0.0;     // K(plane)
    double weyl = 0.0;           // Khat via K - E_perp^2 - div_plane E
    double weyl_tensor = 0.0;    // Khat via <Rhat_a(X,Y)Y, X>
    double discrepancy = 0.0;    // |weyl - weyl_tensor|
    Mat weyl_operator;           // Rhat(X, Y)
    Mat weyl_operator_antisym;   // g-antisymmetric part
    Mat weyl_operator_sym;       // g-symmetric part
    double field_perp_sq = 0.0;  // |E_perp|^2
    double field_plane_sq = 0.0; // |E_plane|^2
    double field_sq = 0.0;       // |E|^2
    double partial_divergence = 0.0;
};

/// g-antisymmetric part of an endomorphism: (A - g^{-1} A^T g) / 2.
Mat metric_antisymmetric_part(const Mat& a, const Mat& g, const Mat& g_inv);
Mat metric_symmetric_part(const Mat& a, const Mat& g, const Mat& g_inv);

/// Gram-Schmidt in the metric; throws DegeneratePlaneError for dependent input.
std::pair<Vec, Vec> orthonormal_plane(const LocalGeometry& geo, const Vec& x, const Vec& y);

/// Matrix of the Weyl curvature operator Rhat(X, Y).
Mat curvature_operator(const WeylScenario& scenario, const Vec& q, const Vec& x, const Vec& y);

CurvatureSample sectional_weyl(const WeylScenario& scenario, const Vec& q, const Vec& x,
                               const Vec& y);
/// Same, reusing an evaluated geometry (order Curvature).
CurvatureSample sectional_weyl(const LocalGeometry& geo, const Vec& x, const Vec& y);

/// Khat + E_plane^2 / 4; negative values certify the Anosov sufficient condition.
double anosov_margin(const WeylScenario& scenario, const Vec& q, const Vec& x, const Vec& y);
double anosov_margin(const CurvatureSample& sample);

struct SignCensus {
    double min = 0.0;
    double max = 0.0;
    long count_negative = 0;
    long count_zero = 0;
    long count_positive = 0;
    double max_route_discrepancy = 0.0;

    long total() const { return count_negative + count_zero + count_positive; }
};

inline constexpr double kCurvatureZeroThreshold = 1e-9;

struct CurvatureScan {
    SignCensus census;
    std::vector<CurvatureSample> samples;
};

/// Uniform points in the chart box, uniform planes from orthonormalized
/// Gaussian pairs. Deterministic in the seed.
CurvatureScan curvature_sign_scan(const WeylScenario& scenario, int n_points, int n_planes,
                                  std::uint64_t seed, bool keep_samples = false);

void add_to_census(SignCensus& census, double value);

}  // namespace weylflow
