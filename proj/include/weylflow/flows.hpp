#pragma once

#include <memory>
#include <vector>

#include "weylflow/local_geometry.hpp"

namespace weylflow {

/// Point of the phase space. q is kept on the universal cover (never wrapped)
/// so closed-form comparisons and interpolation see continuous paths.
struct PhaseState {
    Vec q;
    Vec v;
    double t = 0.0;
};

struct PhaseDerivative {
    Vec dq;
    Vec dv;
};

/// Potential W, energy h. The field E comes from the scenario.
struct IsoenergeticSpec {
    FourierField potential;
    double energy = 1.0;
    double kinetic_floor = 1e-6;
};

/// dq/dt = v, dv/dt = E - <E,v> v - Gamma(v, v).
PhaseDerivative isokinetic_rhs(const WeylScenario& scenario, const PhaseState& state);

/// dq/dt = v, dv/dt = -grad W + E - (<E,v>/v^2) v - Gamma(v, v).
PhaseDerivative isoenergetic_rhs(const WeylScenario& scenario, const IsoenergeticSpec& spec,
                                 const PhaseState& state);

/// dq/ds = w, dw/ds = -Gammahat(w, w).
PhaseDerivative weyl_geodesic_rhs(const WeylScenario& scenario, const Vec& q, const Vec& w);

/// The field (-grad W + E) / (2 (h - W)). Throws InvalidLevelError when
/// h - W <= 0 on a sample grid of the chart domain.
VectorField reduce_to_wflow(const WeylScenario& scenario, const IsoenergeticSpec& spec);

/// Same metric, reduced field.
WeylScenario reduced_scenario(const WeylScenario& scenario, const IsoenergeticSpec& spec);

enum class FlowKind { Isokinetic, Isoenergetic, WeylGeodesic };

const char* flow_kind_name(FlowKind kind);

/// A vector field on phase space together with its constraint.
class Flow {
public:
    static Flow isokinetic(WeylScenario scenario);
    static Flow isoenergetic(WeylScenario scenario, IsoenergeticSpec spec);
    static Flow weyl_geodesic(WeylScenario scenario);

    FlowKind kind() const { return kind_; }
    const WeylScenario& scenario() const { return *scenario_; }
    const IsoenergeticSpec* spec() const { return spec_ ? spec_.get() : nullptr; }

    PhaseDerivative rhs(const PhaseState& state) const;
    /// Restores |v| = 1 or H = h. No-op for Weyl geodesics.
    void project(PhaseState& state) const;
    /// phi(v) at the state.
    double phi(const PhaseState& state) const;
    /// |v|_g - 1, |v|_g - sqrt(2(h - W)), or |w|_g for geodesics.
    double speed_residual(const PhaseState& state) const;
    /// H - h for the isoenergetic flow, 0 otherwise.
    double energy_residual(const PhaseState& state) const;

private:
    Flow(FlowKind kind, WeylScenario scenario, std::shared_ptr<const IsoenergeticSpec> spec);

    FlowKind kind_;
    std::shared_ptr<const WeylScenario> scenario_;
    std::shared_ptr<const IsoenergeticSpec> spec_;
};

struct Trajectory {
    FlowKind kind = FlowKind::Isokinetic;
    double dt = 0.0;
    std::vector<PhaseState> states;
    std::vector<double> speed_residual;
    std::vector<double> energy_residual;
    std::vector<double> int_phi;  // cumulative integral of phi(v) dt

    std::size_t size() const { return states.size(); }
    const PhaseState& back() const { return states.back(); }
};

/// Classical RK4 with fixed step; projection after every step when renormalize
/// is set (ignored for Weyl geodesics). Throws IntegrationError on NaN.
Trajectory integrate(const Flow& flow, const PhaseState& initial, double T, double dt, bool renormalize = true);

/// Single RK4 step without projection.
PhaseState rk4_step(const Flow& flow, const PhaseState& state, double dt);

/// Cumulative integral of uniformly sampled values: Simpson-type three-point
/// rule per interval, exact for quadratics.
std::vector<double> cumulative_integral(const std::vector<double>& values, double dt);

/// (q, -v): the time-reversal involution.
PhaseState reversed(const PhaseState& state);

}  // namespace weylflow
