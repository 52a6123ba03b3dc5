#include "weylflow/dettmann_morriss.hpp"

#include <algorithm>
#include <cmath>

#include "weylflow/errors.hpp"
#include "weylflow/reparametrize.hpp"

namespace weylflow {

namespace {

constexpr double kPotentialThreshold = 1e-8;

}  // namespace

DettmannMorrissRecord dettmann_morriss(const Flow& flow, const Trajectory& traj, const FourierField& potential) {
    if (flow.kind() != FlowKind::Isokinetic) {
        throw UnsupportedConfigurationError("the Dettmann-Morriss transform applies to isokinetic trajectories");
    }
    if (traj.size() < 5) throw TooFewSamplesError("the Dettmann-Morriss transform needs at least five samples");
    const WeylScenario& sc = flow.scenario();
    const int n = sc.dim();
    if (potential.dim() != n) throw ConfigError("potential dimension does not match the scenario");

    DettmannMorrissRecord rec;
    std::vector<double> weight(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const Vec& q = traj.states[i].q;
        const LocalGeometry geo = evaluate_geometry(sc, q, GeometryOrder::Metric);
        double u;
        Vec du;
        Mat d2u;
        potential.evaluate(q, u, du, d2u);
        const double exact = (geo.field.form + du).cwiseAbs().maxCoeff();
        const double closed = (geo.field.d_form - geo.field.d_form.transpose()).cwiseAbs().maxCoeff();
        rec.potential_residual = std::max({rec.potential_residual, exact, closed});
        if (exact > kPotentialThreshold || closed > kPotentialThreshold) {
            throw NotLocallyPotentialError("field is not -dU at q = " + point_string(q) +
                                           " (residual " + std::to_string(std::max(exact, closed)) + ")");
        }
        weight[i] = std::exp(-u);
    }
    const std::vector<double> tau_of_t = cumulative_integral(weight, traj.dt);

    // resample at uniform tau
    const double h = traj.dt;
    const double dtau = traj.dt;
    std::size_t i = 0;
    const long count = static_cast<long>(std::floor(tau_of_t.back() / dtau + 1e-9));
    for (long k = 0; k <= count; ++k) {
        const double target = static_cast<double>(k) * dtau;
        while (i + 2 < traj.size() && tau_of_t[i + 1] < target) ++i;
        const double u = invert_hermite(tau_of_t[i], weight[i], tau_of_t[i + 1], weight[i + 1], h, target);
        const PhaseState& a = traj.states[i];
        const PhaseState& b = traj.states[i + 1];
        const PhaseDerivative da = flow.rhs(a);
        const PhaseDerivative db = flow.rhs(b);
        const Vec q = hermite(a.q, da.dq, b.q, db.dq, h, u);
        const Vec v = hermite(a.v, da.dv, b.v, db.dv, h, u);
        const Mat g = sc.metric().g(q);
        const double uq = potential.value(q);
        const Vec p = std::exp(-uq) * (g * v);
        rec.tau.push_back(target);
        rec.q.push_back(q);
        rec.p.push_back(p);
        rec.hamiltonian.push_back(0.5 * std::exp(2.0 * uq) * p.dot(g.ldlt().solve(p)));
    }

    // Hamilton's equations on interior samples
    const std::size_t m = rec.tau.size();
    for (std::size_t k = 2; k + 2 < m; ++k) {
        auto d4 = [&](const std::vector<Vec>& x) -> Vec {
            return (-x[k + 2] + 8.0 * x[k + 1] - 8.0 * x[k - 1] + x[k - 2]) / (12.0 * dtau);
        };
        const Vec& q = rec.q[k];
        const Vec& p = rec.p[k];
        const MetricJet jet = sc.metric().jet(q, 1);
        const Mat ginv = jet.g.inverse();
        double uq;
        Vec du;
        Mat d2u;
        potential.evaluate(q, uq, du, d2u);
        const double e2u = std::exp(2.0 * uq);
        const Vec gp = ginv * p;
        const Vec dh_dp = e2u * gp;
        Vec dh_dq = e2u * p.dot(gp) * du;
        for (int l = 0; l < n; ++l) dh_dq[l] -= 0.5 * e2u * gp.dot(jet.first[static_cast<std::size_t>(l)] * gp);
        const double rq = (d4(rec.q) - dh_dp).cwiseAbs().maxCoeff();
        const double rp = (d4(rec.p) + dh_dq).cwiseAbs().maxCoeff();
        rec.hamilton_residual = std::max({rec.hamilton_residual, rq, rp});
    }
    return rec;
}

double omega_form(const Vec& q, const Vec& v, const Vec& xi1, const Vec& eta1, const Vec& xi2, const Vec& eta2,
                  const FourierField& potential, const Mat& g) {
    const Vec du = potential.gradient(q);
    return (eta1.dot(g * xi2) - eta2.dot(g * xi1)) - (du.dot(xi1) * v.dot(g * xi2) - du.dot(xi2) * v.dot(g * xi1));
}

}  // namespace weylflow
