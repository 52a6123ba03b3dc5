#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "weylflow/fourier.hpp"

namespace weylflow {

/// Metric coefficients and their coordinate derivatives at a point.
/// first[k] = d_k g, second[k * n + l] = d_k d_l g.
struct MetricJet {
    int order = 0;
    Mat g;
    std::vector<Mat> first;
    std::vector<Mat> second;

    const Mat& d2(int k, int l) const { return second[static_cast<std::size_t>(k * g.rows() + l)]; }
};

struct FlatTorusMetric {
    std::vector<double> periods;
};

/// Chart of constant sectional curvature K: upper half-space
/// delta / (|K| x_n^2) for K < 0, stereographic 4 delta / (1 + K|x|^2)^2 for
/// K > 0, Euclidean for K = 0.
struct ConstantCurvatureMetric {
    int dim = 2;
    double curvature = -1.0;
};

/// e^{2 sigma(q)} delta on the unit-period torus.
struct ConformalTorusMetric {
    FourierField sigma;
};

/// e^{2z} dx^2 + e^{-2z} dy^2 + dz^2.
struct SolMetric {};

/// (h - W(q)) delta on the unit-period torus.
struct MaupertuisMetric {
    FourierField potential;
    double energy = 1.0;
};

class Metric;

struct ProductMetric {
    std::shared_ptr<const Metric> first;
    std::shared_ptr<const Metric> second;
};

/// Sampling region and periodicity of a chart.
struct ChartDomain {
    Vec lower;
    Vec upper;
    /// Period per axis; nullopt for non-periodic axes.
    std::vector<std::optional<double>> periods;
};

class Metric {
public:
    using Family = std::variant<FlatTorusMetric, ConstantCurvatureMetric, ConformalTorusMetric,
                                SolMetric, MaupertuisMetric, ProductMetric>;

    explicit Metric(Family family);

    int dim() const { return dim_; }
    const Family& family() const { return family_; }
    std::string family_name() const;

    /// order 0: g only; 1: adds first derivatives; 2: adds second derivatives.
    MetricJet jet(const Vec& q, int order) const;
    Mat g(const Vec& q) const { return jet(q, 0).g; }

    /// Throws DomainError when q lies outside the chart.
    void check_domain(const Vec& q) const;
    ChartDomain domain() const;

private:
    Family family_;
    int dim_;
};

/// Reduces q modulo the chart periods (identity on non-periodic axes).
Vec wrap_to_domain(const ChartDomain& domain, const Vec& q);

}  // namespace weylflow
