#pragma once

#include <vector>

#include "weylflow/scenario.hpp"

namespace weylflow {

/// Christoffel symbols gamma[k](i, j) = Gamma^k_ij.
using Christoffel = std::vector<Mat>;

/// Levi-Civita and Weyl coefficients at a base point. Both arrays are
/// symmetric in the lower indices by construction.
struct ConnectionCoefficients {
    Vec q;
    Christoffel levi_civita;
    Christoffel weyl;
};

/// Curvature tensor R^a_{bcd}, with R(d_c, d_d) d_b = R^a_{bcd} d_a.
class RiemannTensor {
public:
    RiemannTensor() = default;
    explicit RiemannTensor(int n) : n_(n), data_(static_cast<std::size_t>(n * n * n * n), 0.0) {}

    int dim() const { return n_; }
    double& operator()(int a, int b, int c, int d) { return data_[index(a, b, c, d)]; }
    double operator()(int a, int b, int c, int d) const { return data_[index(a, b, c, d)]; }

    /// Matrix of Z -> R(X, Y) Z.
    Mat operator_matrix(const Vec& x, const Vec& y) const;

private:
    std::size_t index(int a, int b, int c, int d) const {
        return static_cast<std::size_t>(((a * n_ + b) * n_ + c) * n_ + d);
    }
    int n_ = 0;
    std::vector<double> data_;
};

enum class GeometryOrder { Metric = 0, Connection = 1, Curvature = 2 };

/// Everything the flows and the tangent dynamics need at one point.
/// Fields beyond the requested order are left empty.
struct LocalGeometry {
    Vec q;
    GeometryOrder order = GeometryOrder::Metric;
    MetricJet metric;
    Mat g_inv;
    FieldJet field;
    Christoffel levi_civita;
    Christoffel weyl;
    RiemannTensor riemann;       // Levi-Civita
    RiemannTensor weyl_riemann;  // Weyl

    int dim() const { return static_cast<int>(q.size()); }
    double inner(const Vec& a, const Vec& b) const { return a.dot(metric.g * b); }
    double norm(const Vec& a) const { return std::sqrt(inner(a, a)); }
    /// phi(X) = <E, X>.
    double phi(const Vec& x) const { return field.form.dot(x); }
};

LocalGeometry evaluate_geometry(const WeylScenario& scenario, const Vec& q, GeometryOrder order);

/// Gamma(x, y)^k = Gamma^k_ij x^i y^j.
Vec contract(const Christoffel& gamma, const Vec& x, const Vec& y);

/// Levi-Civita coefficients only (the weyl member is left empty).
ConnectionCoefficients christoffel(const WeylScenario& scenario, const Vec& q);
/// Levi-Civita and Weyl coefficients.
ConnectionCoefficients weyl_connection(const WeylScenario& scenario, const Vec& q);

}  // namespace weylflow
