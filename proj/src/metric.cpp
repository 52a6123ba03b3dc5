#include "weylflow/metric.hpp"

#include <cmath>
#include <sstream>

#include "weylflow/errors.hpp"

namespace weylflow {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

MetricJet empty_jet(int n, int order) {
    MetricJet jet;
    jet.order = order;
    jet.g = Mat::Identity(n, n);
    if (order >= 1) jet.first.assign(static_cast<std::size_t>(n), Mat::Zero(n, n));
    if (order >= 2) jet.second.assign(static_cast<std::size_t>(n * n), Mat::Zero(n, n));
    return jet;
}

// g = e^{2f} delta from f, its gradient and hessian.
MetricJet conformal_jet(double f, const Vec& df, const Mat& d2f, int order) {
    const int n = static_cast<int>(df.size());
    MetricJet jet = empty_jet(n, order);
    const double e2f = std::exp(2.0 * f);
    jet.g = e2f * Mat::Identity(n, n);
    if (order >= 1) {
        for (int k = 0; k < n; ++k) jet.first[k] = (2.0 * df[k] * e2f) * Mat::Identity(n, n);
    }
    if (order >= 2) {
        for (int k = 0; k < n; ++k) {
            for (int l = 0; l < n; ++l) {
                jet.second[k * n + l] =
                    ((4.0 * df[k] * df[l] + 2.0 * d2f(k, l)) * e2f) * Mat::Identity(n, n);
            }
        }
    }
    return jet;
}

void place_block(Mat& target, const Mat& block, int offset) {
    target.block(offset, offset, block.rows(), block.cols()) = block;
}

}  // namespace

Metric::Metric(Family family) : family_(std::move(family)) {
    dim_ = std::visit(
        Overloaded{
            [](const FlatTorusMetric& m) { return static_cast<int>(m.periods.size()); },
            [](const ConstantCurvatureMetric& m) { return m.dim; },
            [](const ConformalTorusMetric& m) { return m.sigma.dim(); },
            [](const SolMetric&) { return 3; },
            [](const MaupertuisMetric& m) { return m.potential.dim(); },
            [](const ProductMetric& m) {
                if (!m.first || !m.second) throw ConfigError("product metric needs two factors");
                return m.first->dim() + m.second->dim();
            },
        },
        family_);
    if (dim_ < 1) throw ConfigError("metric dimension must be positive");
    if (const auto* t = std::get_if<FlatTorusMetric>(&family_)) {
        for (double p : t->periods) {
            if (!(p > 0.0)) throw ConfigError("flat torus periods must be positive");
        }
    }
}

std::string Metric::family_name() const {
    return std::visit(Overloaded{
                          [](const FlatTorusMetric&) { return std::string("flat_torus"); },
                          [](const ConstantCurvatureMetric&) {
                              return std::string("constant_curvature_chart");
                          },
                          [](const ConformalTorusMetric&) { return std::string("conformal_torus"); },
                          [](const SolMetric&) { return std::string("sol_group"); },
                          [](const MaupertuisMetric&) { return std::string("maupertuis"); },
                          [](const ProductMetric&) { return std::string("product"); },
                      },
                      family_);
}

void Metric::check_domain(const Vec& q) const {
    if (q.size() != dim_) {
        throw DomainError("point has dimension " + std::to_string(q.size()) +
                          ", chart has dimension " + std::to_string(dim_));
    }
    if (!q.allFinite()) throw DomainError("non-finite point " + point_string(q));
    if (const auto* cc = std::get_if<ConstantCurvatureMetric>(&family_)) {
        if (cc->curvature < 0.0 && !(q[dim_ - 1] > 0.0)) {
            throw DomainError("point " + point_string(q) + " outside the half-space chart");
        }
    }
    if (const auto* p = std::get_if<ProductMetric>(&family_)) {
        const int n1 = p->first->dim();
        p->first->check_domain(q.head(n1));
        p->second->check_domain(q.tail(dim_ - n1));
    }
}

MetricJet Metric::jet(const Vec& q, int order) const {
    check_domain(q);
    const int n = dim_;
    MetricJet jet = std::visit(
        Overloaded{
            [&](const FlatTorusMetric&) { return empty_jet(n, order); },
            [&](const ConstantCurvatureMetric& m) {
                const double K = m.curvature;
                if (K == 0.0) return empty_jet(n, order);
                Vec df = Vec::Zero(n);
                Mat d2f = Mat::Zero(n, n);
                double f = 0.0;
                if (K < 0.0) {
                    const double y = q[n - 1];
                    f = -std::log(std::sqrt(-K) * y);
                    df[n - 1] = -1.0 / y;
                    d2f(n - 1, n - 1) = 1.0 / (y * y);
                } else {
                    const double denom = 1.0 + K * q.squaredNorm();
                    f = std::log(2.0) - std::log(denom);
                    df = (-2.0 * K / denom) * q;
                    d2f = (-2.0 * K / denom) * Mat::Identity(n, n) +
                          (4.0 * K * K / (denom * denom)) * (q * q.transpose());
                }
                return conformal_jet(f, df, d2f, order);
            },
            [&](const ConformalTorusMetric& m) {
                double f;
                Vec df;
                Mat d2f;
                m.sigma.evaluate(q, f, df, d2f);
                return conformal_jet(f, df, d2f, order);
            },
            [&](const SolMetric&) {
                MetricJet j = empty_jet(3, order);
                const double z = q[2];
                const double ep = std::exp(2.0 * z);
                const double em = std::exp(-2.0 * z);
                j.g(0, 0) = ep;
                j.g(1, 1) = em;
                if (order >= 1) {
                    j.first[2](0, 0) = 2.0 * ep;
                    j.first[2](1, 1) = -2.0 * em;
                }
                if (order >= 2) {
                    j.second[2 * 3 + 2](0, 0) = 4.0 * ep;
                    j.second[2 * 3 + 2](1, 1) = 4.0 * em;
                }
                return j;
            },
            [&](const MaupertuisMetric& m) {
                double w;
                Vec dw;
                Mat d2w;
                m.potential.evaluate(q, w, dw, d2w);
                const double rho = m.energy - w;
                if (!(rho > 0.0)) {
                    throw DegenerateMetricError("Maupertuis metric degenerate at q = " +
                                                point_string(q) + " (h - W = " +
                                                std::to_string(rho) + ")");
                }
                MetricJet j = empty_jet(n, order);
                j.g = rho * Mat::Identity(n, n);
                if (order >= 1) {
                    for (int k = 0; k < n; ++k) j.first[k] = -dw[k] * Mat::Identity(n, n);
                }
                if (order >= 2) {
                    for (int k = 0; k < n; ++k) {
                        for (int l = 0; l < n; ++l) {
                            j.second[k * n + l] = -d2w(k, l) * Mat::Identity(n, n);
                        }
                    }
                }
                return j;
            },
            [&](const ProductMetric& m) {
                const int n1 = m.first->dim();
                const int n2 = n - n1;
                const MetricJet a = m.first->jet(q.head(n1), order);
                const MetricJet b = m.second->jet(q.tail(n2), order);
                MetricJet j = empty_jet(n, order);
                j.g.setZero();
                place_block(j.g, a.g, 0);
                place_block(j.g, b.g, n1);
                if (order >= 1) {
                    for (int k = 0; k < n1; ++k) place_block(j.first[k], a.first[k], 0);
                    for (int k = 0; k < n2; ++k) place_block(j.first[n1 + k], b.first[k], n1);
                }
                if (order >= 2) {
                    for (int k = 0; k < n1; ++k) {
                        for (int l = 0; l < n1; ++l) place_block(j.second[k * n + l], a.d2(k, l), 0);
                    }
                    for (int k = 0; k < n2; ++k) {
                        for (int l = 0; l < n2; ++l) {
                            place_block(j.second[(n1 + k) * n + n1 + l], b.d2(k, l), n1);
                        }
                    }
                }
                return j;
            },
        },
        family_);

    Eigen::LLT<Mat> llt(jet.g);
    if (llt.info() != Eigen::Success || !jet.g.allFinite()) {
        throw DegenerateMetricError("metric not positive definite at q = " + point_string(q));
    }
    return jet;
}

ChartDomain Metric::domain() const {
    const int n = dim_;
    ChartDomain d;
    d.lower = Vec::Zero(n);
    d.upper = Vec::Ones(n);
    d.periods.assign(static_cast<std::size_t>(n), std::nullopt);
    std::visit(Overloaded{
                   [&](const FlatTorusMetric& m) {
                       for (int i = 0; i < n; ++i) {
                           d.upper[i] = m.periods[i];
                           d.periods[i] = m.periods[i];
                       }
                   },
                   [&](const ConstantCurvatureMetric& m) {
                       if (m.curvature < 0.0) {
                           d.lower.setConstant(-1.0);
                           d.upper.setConstant(1.0);
                           d.lower[n - 1] = 0.5;
                           d.upper[n - 1] = 2.0;
                       } else if (m.curvature > 0.0) {
                           d.lower.setConstant(-1.0);
                           d.upper.setConstant(1.0);
                       }
                   },
                   [&](const ConformalTorusMetric&) {
                       for (int i = 0; i < n; ++i) d.periods[i] = 1.0;
                   },
                   [&](const SolMetric&) {
                       d.lower.setConstant(-1.0);
                       d.upper.setConstant(1.0);
                   },
                   [&](const MaupertuisMetric&) {
                       for (int i = 0; i < n; ++i) d.periods[i] = 1.0;
                   },
                   [&](const ProductMetric& m) {
                       const ChartDomain a = m.first->domain();
                       const ChartDomain b = m.second->domain();
                       const int n1 = m.first->dim();
                       d.lower << a.lower, b.lower;
                       d.upper << a.upper, b.upper;
                       for (int i = 0; i < n1; ++i) d.periods[i] = a.periods[i];
                       for (int i = n1; i < n; ++i) d.periods[i] = b.periods[i - n1];
                   },
               },
               family_);
    return d;
}

Vec wrap_to_domain(const ChartDomain& domain, const Vec& q) {
    Vec out = q;
    for (int i = 0; i < q.size(); ++i) {
        if (const auto& p = domain.periods[i]) {
            out[i] = q[i] - *p * std::floor(q[i] / *p);
            if (out[i] >= *p) out[i] -= *p;
        }
    }
    return out;
}

}  // namespace weylflow
