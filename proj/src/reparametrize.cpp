#include "weylflow/reparametrize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "weylflow/errors.hpp"

namespace weylflow {

Vec hermite(const Vec& a, const Vec& da, const Vec& b, const Vec& db, double h, double u) {
    const double u2 = u * u;
    const double u3 = u2 * u;
    const double h00 = 2 * u3 - 3 * u2 + 1;
    const double h10 = u3 - 2 * u2 + u;
    const double h01 = -2 * u3 + 3 * u2;
    const double h11 = u3 - u2;
    return h00 * a + (h10 * h) * da + h01 * b + (h11 * h) * db;
}

namespace {

double speed(const Metric& metric, const PhaseState& s) {
    const Mat g = metric.g(s.q);
    return std::sqrt(s.v.dot(g * s.v));
}

double speed(const Flow& flow, const PhaseState& s) { return speed(flow.scenario().metric(), s); }

double hermite_scalar(double a, double da, double b, double db, double h, double u) {
    Vec va(1), vda(1), vb(1), vdb(1);
    va << a;
    vda << da;
    vb << b;
    vdb << db;
    return hermite(va, vda, vb, vdb, h, u)[0];
}

double segment_distance(const Vec& p, const Vec& a, const Vec& b) {
    const Vec ab = b - a;
    const double len2 = ab.squaredNorm();
    double u = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
    u = std::clamp(u, 0.0, 1.0);
    return (p - a - u * ab).norm();
}

double directed(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    double worst = 0.0;
    for (const Vec& p : a) {
        double best = std::numeric_limits<double>::infinity();
        if (b.size() == 1) best = (p - b[0]).norm();
        for (std::size_t j = 0; j + 1 < b.size(); ++j) best = std::min(best, segment_distance(p, b[j], b[j + 1]));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

double invert_hermite(double s0, double ds0, double s1, double ds1, double h, double target) {
    double lo = 0.0, hi = 1.0;
    double u = (s1 > s0) ? std::clamp((target - s0) / (s1 - s0), 0.0, 1.0) : 0.0;
    for (int it = 0; it < 60; ++it) {
        const double f = hermite_scalar(s0, ds0, s1, ds1, h, u) - target;
        if (std::abs(f) < 1e-15 * std::max(1.0, std::abs(target))) break;
        if (f > 0) hi = u; else lo = u;
        // derivative of the cubic in u
        const double u2 = u * u;
        const double df = (6 * u2 - 6 * u) * s0 + (3 * u2 - 4 * u + 1) * h * ds0 + (-6 * u2 + 6 * u) * s1 +
                          (3 * u2 - 2 * u) * h * ds1;
        double next = df > 0 ? u - f / df : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        u = next;
    }
    return u;
}

std::vector<double> arc_length(const Flow& flow, const Trajectory& traj, const Metric* length_metric) {
    const Metric& m = length_metric ? *length_metric : flow.scenario().metric();
    std::vector<double> speeds;
    speeds.reserve(traj.size());
    for (const PhaseState& s : traj.states) speeds.push_back(speed(m, s));
    return cumulative_integral(speeds, traj.dt);
}

Trajectory resample_by_arc_length(const Flow& flow, const Trajectory& traj, double ds, double s_max,
                                  const Metric* length_metric) {
    if (traj.size() < 2) throw TooFewSamplesError("resampling needs at least two samples");
    if (!(ds > 0.0)) throw ConfigError("arc-length step must be positive");
    const Metric& m = length_metric ? *length_metric : flow.scenario().metric();
    const std::vector<double> s = arc_length(flow, traj, length_metric);
    std::vector<double> sp(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) sp[i] = speed(m, traj.states[i]);
    const double end = s_max > 0.0 ? std::min(s_max, s.back()) : s.back();

    std::vector<PhaseDerivative> rhs(traj.size());
    std::vector<bool> have(traj.size(), false);
    auto deriv = [&](std::size_t i) -> const PhaseDerivative& {
        if (!have[i]) {
            rhs[i] = flow.rhs(traj.states[i]);
            have[i] = true;
        }
        return rhs[i];
    };

    Trajectory out;
    out.kind = traj.kind;
    out.dt = ds;
    std::vector<double> phis;
    std::size_t i = 0;
    const long count = static_cast<long>(std::floor(end / ds + 1e-9));
    for (long k = 0; k <= count; ++k) {
        const double target = static_cast<double>(k) * ds;
        while (i + 2 < traj.size() && s[i + 1] < target) ++i;
        const double h = traj.dt;
        const double u = invert_hermite(s[i], sp[i], s[i + 1], sp[i + 1], h, target);
        const PhaseState& a = traj.states[i];
        const PhaseState& b = traj.states[i + 1];
        const PhaseDerivative& da = deriv(i);
        const PhaseDerivative& db = deriv(i + 1);
        PhaseState st;
        st.q = hermite(a.q, da.dq, b.q, db.dq, h, u);
        st.v = hermite(a.v, da.dv, b.v, db.dv, h, u);
        st.t = target;
        st.v /= speed(flow, st);
        out.states.push_back(st);
        out.speed_residual.push_back(0.0);
        out.energy_residual.push_back(0.0);
        const MetricJet jet = flow.scenario().metric().jet(st.q, 1);
        phis.push_back(flow.scenario().field().evaluate(st.q, jet).form.dot(st.v));
    }
    out.int_phi = cumulative_integral(phis, ds);
    return out;
}

std::vector<Vec> positions(const Trajectory& traj) {
    std::vector<Vec> out;
    out.reserve(traj.size());
    for (const PhaseState& s : traj.states) out.push_back(s.q);
    return out;
}

double hausdorff_distance(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    if (a.empty() || b.empty()) throw TooFewSamplesError("Hausdorff distance of an empty curve");
    return std::max(directed(a, b), directed(b, a));
}

}  // namespace weylflow
