#include "weylflow/local_geometry.hpp"

#include "weylflow/errors.hpp"

namespace weylflow {

namespace {

// Christoffel symbols of the first kind: first_kind[l](i, j) = Gamma_{l,ij}.
std::vector<Mat> first_kind(const MetricJet& jet) {
    const int n = static_cast<int>(jet.g.rows());
    std::vector<Mat> c(static_cast<std::size_t>(n), Mat::Zero(n, n));
    for (int l = 0; l < n; ++l) {
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                const double v = 0.5 * (jet.first[i](j, l) + jet.first[j](i, l) - jet.first[l](i, j));
                c[l](i, j) = v;
                c[l](j, i) = v;
            }
        }
    }
    return c;
}

Christoffel raise(const Mat& g_inv, const std::vector<Mat>& lowered) {
    const int n = static_cast<int>(g_inv.rows());
    Christoffel out(static_cast<std::size_t>(n), Mat::Zero(n, n));
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            if (g_inv(k, l) != 0.0) out[k] += g_inv(k, l) * lowered[l];
        }
    }
    return out;
}

Christoffel weyl_from(const Christoffel& lc, const MetricJet& jet, const FieldJet& field) {
    const int n = static_cast<int>(jet.g.rows());
    Christoffel w = lc;
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double corr = -jet.g(i, j) * field.vector[k];
                if (k == i) corr += field.form[j];
                if (k == j) corr += field.form[i];
                w[k](i, j) += corr;
            }
        }
    }
    return w;
}

RiemannTensor riemann_from(const Christoffel& gamma, const std::vector<Christoffel>& dgamma) {
    const int n = static_cast<int>(gamma.size());
    RiemannTensor r(n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                for (int d = 0; d < n; ++d) {
                    double v = dgamma[c][a](d, b) - dgamma[d][a](c, b);
                    for (int e = 0; e < n; ++e) {
                        v += gamma[a](c, e) * gamma[e](d, b) - gamma[a](d, e) * gamma[e](c, b);
                    }
                    r(a, b, c, d) = v;
                }
            }
        }
    }
    return r;
}

}  // namespace

Mat RiemannTensor::operator_matrix(const Vec& x, const Vec& y) const {
    Mat m = Mat::Zero(n_, n_);
    for (int a = 0; a < n_; ++a) {
        for (int b = 0; b < n_; ++b) {
            double v = 0.0;
            for (int c = 0; c < n_; ++c) {
                for (int d = 0; d < n_; ++d) v += (*this)(a, b, c, d) * x[c] * y[d];
            }
            m(a, b) = v;
        }
    }
    return m;
}

Vec contract(const Christoffel& gamma, const Vec& x, const Vec& y) {
    const int n = static_cast<int>(gamma.size());
    Vec out(n);
    for (int k = 0; k < n; ++k) out[k] = x.dot(gamma[k] * y);
    return out;
}

LocalGeometry evaluate_geometry(const WeylScenario& scenario, const Vec& q, GeometryOrder order) {
    const int n = scenario.dim();
    const int jet_order = std::max(1, static_cast<int>(order));
    LocalGeometry geo;
    geo.q = q;
    geo.order = order;
    geo.metric = scenario.metric().jet(q, jet_order);
    geo.g_inv = geo.metric.g.inverse();
    geo.field = scenario.field().evaluate(q, geo.metric);
    if (order == GeometryOrder::Metric) return geo;

    const std::vector<Mat> c1 = first_kind(geo.metric);
    geo.levi_civita = raise(geo.g_inv, c1);
    geo.weyl = weyl_from(geo.levi_civita, geo.metric, geo.field);
    if (order == GeometryOrder::Connection) return geo;

    // d_m Gamma^k_ij = (d_m g^{kl}) Gamma_{l,ij} + g^{kl} d_m Gamma_{l,ij}
    std::vector<Christoffel> dlc(static_cast<std::size_t>(n));
    std::vector<Christoffel> dweyl(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) {
        const Mat dginv = -geo.g_inv * geo.metric.first[m] * geo.g_inv;
        std::vector<Mat> dc1(static_cast<std::size_t>(n), Mat::Zero(n, n));
        for (int l = 0; l < n; ++l) {
            for (int i = 0; i < n; ++i) {
                for (int j = i; j < n; ++j) {
                    const double v = 0.5 * (geo.metric.d2(m, i)(j, l) + geo.metric.d2(m, j)(i, l) -
                                             geo.metric.d2(m, l)(i, j));
                    dc1[l](i, j) = v;
                    dc1[l](j, i) = v;
                }
            }
        }
        Christoffel d = raise(geo.g_inv, dc1);
        const Christoffel d2 = raise(dginv, c1);
        for (int k = 0; k < n; ++k) d[k] += d2[k];
        dlc[m] = d;

        Christoffel dw = d;
        for (int k = 0; k < n; ++k) {
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    double corr = -geo.metric.first[m](i, j) * geo.field.vector[k] -
                                  geo.metric.g(i, j) * geo.field.d_vector(k, m);
                    if (k == i) corr += geo.field.d_form(j, m);
                    if (k == j) corr += geo.field.d_form(i, m);
                    dw[k](i, j) += corr;
                }
            }
        }
        dweyl[m] = dw;
    }
    geo.riemann = riemann_from(geo.levi_civita, dlc);
    geo.weyl_riemann = riemann_from(geo.weyl, dweyl);
    return geo;
}

ConnectionCoefficients christoffel(const WeylScenario& scenario, const Vec& q) {
    const LocalGeometry geo = evaluate_geometry(scenario, q, GeometryOrder::Connection);
    return ConnectionCoefficients{q, geo.levi_civita, {}};
}

ConnectionCoefficients weyl_connection(const WeylScenario& scenario, const Vec& q) {
    const LocalGeometry geo = evaluate_geometry(scenario, q, GeometryOrder::Connection);
    return ConnectionCoefficients{q, geo.levi_civita, geo.weyl};
}

}  // namespace weylflow
