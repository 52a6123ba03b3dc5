#include "weylflow/flows.hpp"

#include <cmath>
#include <string>

#include "weylflow/errors.hpp"

namespace weylflow {

namespace {

double potential_value(const IsoenergeticSpec& spec, const Vec& q, Vec* grad = nullptr) {
    double w;
    Vec dw;
    Mat d2w;
    spec.potential.evaluate(q, w, dw, d2w);
    if (grad) *grad = dw;
    return w;
}

void require_kinetic(const IsoenergeticSpec& spec, const Vec& q, double kinetic, const char* what) {
    if (!(kinetic > spec.kinetic_floor)) {
        throw SingularityError(std::string(what) + " = " + std::to_string(kinetic) + " below the kinetic floor at q = " +
                               point_string(q));
    }
}

}  // namespace

PhaseDerivative isokinetic_rhs(const WeylScenario& scenario, const PhaseState& state) {
    const LocalGeometry geo = evaluate_geometry(scenario, state.q, GeometryOrder::Connection);
    const Vec& e = geo.field.vector;
    const Vec& v = state.v;
    // <E,v>/<v,v> rather than <E,v>: identical on SM, and keeps Dv exactly
    // orthogonal to v at the RK4 stages where |v| drifts.
    const Vec dv = e - (geo.inner(e, v) / geo.inner(v, v)) * v - contract(geo.levi_civita, v, v);
    return {v, dv};
}

PhaseDerivative isoenergetic_rhs(const WeylScenario& scenario, const IsoenergeticSpec& spec,
                                 const PhaseState& state) {
    const LocalGeometry geo = evaluate_geometry(scenario, state.q, GeometryOrder::Connection);
    const Vec& v = state.v;
    Vec dw;
    const double w = potential_value(spec, state.q, &dw);
    require_kinetic(spec, state.q, 2.0 * (spec.energy - w), "2(h - W)");
    const double v2 = geo.inner(v, v);
    require_kinetic(spec, state.q, v2, "v^2");
    const Vec& e = geo.field.vector;
    const Vec dv = -(geo.g_inv * dw) + e - (geo.inner(e, v) / v2) * v - contract(geo.levi_civita, v, v);
    return {v, dv};
}

PhaseDerivative weyl_geodesic_rhs(const WeylScenario& scenario, const Vec& q, const Vec& w) {
    if (w.isZero(0.0)) throw ZeroVectorError("Weyl geodesic needs a nonzero initial vector");
    const LocalGeometry geo = evaluate_geometry(scenario, q, GeometryOrder::Connection);
    return {w, -contract(geo.weyl, w, w)};
}

VectorField reduce_to_wflow(const WeylScenario& scenario, const IsoenergeticSpec& spec) {
    const int n = scenario.dim();
    if (spec.potential.dim() != n) throw ConfigError("potential dimension does not match the scenario");
    const ChartDomain box = scenario.domain();
    const int per_axis = std::max(2, static_cast<int>(std::pow(4096.0, 1.0 / n)));
    long total = 1;
    for (int i = 0; i < n; ++i) total *= per_axis;
    Vec q(n);
    for (long idx = 0; idx < total; ++idx) {
        long rest = idx;
        for (int i = 0; i < n; ++i) {
            const int k = static_cast<int>(rest % per_axis);
            rest /= per_axis;
            const bool periodic = box.periods[i].has_value();
            const double frac = periodic ? static_cast<double>(k) / per_axis
                                         : static_cast<double>(k) / (per_axis - 1);
            q[i] = box.lower[i] + frac * (box.upper[i] - box.lower[i]);
        }
        const double gap = spec.energy - potential_value(spec, q);
        if (!(gap > 0.0)) {
            throw InvalidLevelError("h - W = " + std::to_string(gap) + " at q = " + point_string(q) +
                                    "; the level h = " + std::to_string(spec.energy) + " is not admissible");
        }
    }
    return VectorField(n, ReducedField{scenario.field_ptr(), spec.potential, spec.energy});
}

WeylScenario reduced_scenario(const WeylScenario& scenario, const IsoenergeticSpec& spec) {
    return scenario.with_field(scenario.name() + "_reduced", reduce_to_wflow(scenario, spec));
}

const char* flow_kind_name(FlowKind kind) {
    switch (kind) {
        case FlowKind::Isokinetic: return "isokinetic";
        case FlowKind::Isoenergetic: return "isoenergetic";
        case FlowKind::WeylGeodesic: return "weyl_geodesic";
    }
    return "?";
}

Flow::Flow(FlowKind kind, WeylScenario scenario, std::shared_ptr<const IsoenergeticSpec> spec)
    : kind_(kind), scenario_(std::make_shared<const WeylScenario>(std::move(scenario))), spec_(std::move(spec)) {}

Flow Flow::isokinetic(WeylScenario scenario) { return Flow(FlowKind::Isokinetic, std::move(scenario), nullptr); }

Flow Flow::isoenergetic(WeylScenario scenario, IsoenergeticSpec spec) {
    if (spec.potential.dim() != scenario.dim()) throw ConfigError("potential dimension does not match the scenario");
    return Flow(FlowKind::Isoenergetic, std::move(scenario), std::make_shared<const IsoenergeticSpec>(std::move(spec)));
}

Flow Flow::weyl_geodesic(WeylScenario scenario) { return Flow(FlowKind::WeylGeodesic, std::move(scenario), nullptr); }

PhaseDerivative Flow::rhs(const PhaseState& state) const {
    switch (kind_) {
        case FlowKind::Isokinetic: return isokinetic_rhs(*scenario_, state);
        case FlowKind::Isoenergetic: return isoenergetic_rhs(*scenario_, *spec_, state);
        case FlowKind::WeylGeodesic: return weyl_geodesic_rhs(*scenario_, state.q, state.v);
    }
    throw ConfigError("unknown flow kind");
}

void Flow::project(PhaseState& state) const {
    if (kind_ == FlowKind::WeylGeodesic) return;
    const Mat g = scenario_->metric().g(state.q);
    const double speed = std::sqrt(state.v.dot(g * state.v));
    if (kind_ == FlowKind::Isokinetic) {
        state.v /= speed;
        return;
    }
    const double kinetic = 2.0 * (spec_->energy - potential_value(*spec_, state.q));
    require_kinetic(*spec_, state.q, kinetic, "2(h - W)");
    state.v *= std::sqrt(kinetic) / speed;
}

double Flow::phi(const PhaseState& state) const {
    const MetricJet jet = scenario_->metric().jet(state.q, 1);
    return scenario_->field().evaluate(state.q, jet).form.dot(state.v);
}

double Flow::speed_residual(const PhaseState& state) const {
    const Mat g = scenario_->metric().g(state.q);
    const double speed = std::sqrt(state.v.dot(g * state.v));
    switch (kind_) {
        case FlowKind::Isokinetic: return speed - 1.0;
        case FlowKind::Isoenergetic:
            return speed - std::sqrt(std::max(0.0, 2.0 * (spec_->energy - potential_value(*spec_, state.q))));
        case FlowKind::WeylGeodesic: return speed;
    }
    return 0.0;
}

double Flow::energy_residual(const PhaseState& state) const {
    if (kind_ != FlowKind::Isoenergetic) return 0.0;
    const Mat g = scenario_->metric().g(state.q);
    return 0.5 * state.v.dot(g * state.v) + potential_value(*spec_, state.q) - spec_->energy;
}

PhaseState rk4_step(const Flow& flow, const PhaseState& s, double dt) {
    auto shifted = [&](const PhaseDerivative& k, double h) {
        PhaseState st{s.q + h * k.dq, s.v + h * k.dv, s.t + h};
        if (!st.q.allFinite() || !st.v.allFinite()) throw IntegrationError("non-finite RK4 stage");
        return st;
    };
    const PhaseDerivative k1 = flow.rhs(s);
    const PhaseDerivative k2 = flow.rhs(shifted(k1, 0.5 * dt));
    const PhaseDerivative k3 = flow.rhs(shifted(k2, 0.5 * dt));
    const PhaseDerivative k4 = flow.rhs(shifted(k3, dt));
    PhaseState out;
    out.q = s.q + (dt / 6.0) * (k1.dq + 2.0 * k2.dq + 2.0 * k3.dq + k4.dq);
    out.v = s.v + (dt / 6.0) * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
    out.t = s.t + dt;
    return out;
}

std::vector<double> cumulative_integral(const std::vector<double>& f, double dt) {
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double piece;
        if (n == 2) {
            piece = 0.5 * dt * (f[0] + f[1]);
        } else if (i + 2 < n) {
            piece = dt / 12.0 * (5.0 * f[i] + 8.0 * f[i + 1] - f[i + 2]);
        } else {
            piece = dt / 12.0 * (-f[i - 1] + 8.0 * f[i] + 5.0 * f[i + 1]);
        }
        out[i + 1] = out[i] + piece;
    }
    return out;
}

Trajectory integrate(const Flow& flow, const PhaseState& initial, double T, double dt, bool renormalize) {
    if (!(dt > 0.0) || !(T >= dt)) {
        throw ConfigError("integrate needs dt > 0 and T >= dt (got dt = " + std::to_string(dt) +
                          ", T = " + std::to_string(T) + ")");
    }
    const long steps = static_cast<long>(std::ceil(T / dt - 1e-9));
    const bool project = renormalize && flow.kind() != FlowKind::WeylGeodesic;

    Trajectory traj;
    traj.kind = flow.kind();
    traj.dt = dt;
    traj.states.reserve(static_cast<std::size_t>(steps + 1));
    std::vector<double> phis;
    phis.reserve(static_cast<std::size_t>(steps + 1));

    auto record = [&](const PhaseState& s) {
        traj.states.push_back(s);
        traj.speed_residual.push_back(flow.speed_residual(s));
        traj.energy_residual.push_back(flow.energy_residual(s));
        phis.push_back(flow.phi(s));
    };

    PhaseState state = initial;
    record(state);
    for (long i = 0; i < steps; ++i) {
        PhaseState next;
        try {
            next = rk4_step(flow, state, dt);
        } catch (const IntegrationError& e) {
            throw IntegrationError(std::string(e.what()) + " at step " + std::to_string(i + 1));
        }
        next.t = initial.t + static_cast<double>(i + 1) * dt;
        if (!next.q.allFinite() || !next.v.allFinite()) {
            throw IntegrationError("non-finite state at step " + std::to_string(i + 1) + " (t = " +
                                   std::to_string(next.t) + ")");
        }
        if (project) flow.project(next);
        state = next;
        record(state);
    }
    traj.int_phi = cumulative_integral(phis, dt);
    return traj;
}

PhaseState reversed(const PhaseState& state) { return {state.q, -state.v, state.t}; }

}  // namespace weylflow
