#include "weylflow/acceptance.hpp"

#include <cmath>
#include <sstream>

#include "weylflow/billiards.hpp"
#include "weylflow/curvature.hpp"
#include "weylflow/dettmann_morriss.hpp"
#include "weylflow/errors.hpp"
#include "weylflow/flows.hpp"
#include "weylflow/local_geometry.hpp"
#include "weylflow/lyapunov.hpp"
#include "weylflow/orbits.hpp"
#include "weylflow/output.hpp"
#include "weylflow/reparametrize.hpp"
#include "weylflow/rng.hpp"
#include "weylflow/scenarios.hpp"
#include "weylflow/tangent.hpp"

namespace weylflow {

namespace {

constexpr double kPi = 3.14159265358979323846;

class Recorder {
public:
    explicit Recorder(CriterionResult& r) : r_(r) {}

    void check(const std::string& name, double value, const std::string& rel, double threshold) {
        bool ok = false;
        if (rel == "<") ok = value < threshold;
        else if (rel == "<=") ok = value <= threshold;
        else if (rel == ">") ok = value > threshold;
        else if (rel == ">=") ok = value >= threshold;
        else if (rel == "==") ok = value == threshold;
        r_.measurements.push_back({name, value, rel, threshold, ok});
    }

private:
    CriterionResult& r_;
};

Vec vec2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

Vec vec3(double a, double b, double c) {
    Vec v(3);
    v << a, b, c;
    return v;
}

PhaseState unit_state(const WeylScenario& s, const Vec& q, const Vec& v) {
    const Mat g = s.metric().g(q);
    return {q, v / std::sqrt(v.dot(g * v)), 0.0};
}

Vec random_point(const WeylScenario& s, CounterRng& rng) {
    const ChartDomain box = s.domain();
    Vec q(s.dim());
    for (int i = 0; i < s.dim(); ++i) q[i] = rng.uniform(box.lower[i], box.upper[i]);
    return q;
}

std::vector<WeylScenario> preset_scenarios() {
    return {scenarios::example_1_2(1.0),         scenarios::torus3_constant(1.0), scenarios::hyperbolic_geodesic(),
            scenarios::hyperbolic_potential(0.2), scenarios::sol_scan(),           scenarios::product_mixed()};
}

// d_m g by Richardson-extrapolated central differences.
Mat metric_derivative(const WeylScenario& s, const Vec& q, int m) {
    auto central = [&](double h) {
        Vec a = q, b = q;
        a[m] += h;
        b[m] -= h;
        return Mat((s.metric().g(a) - s.metric().g(b)) / (2 * h));
    };
    const double h = 1e-3;
    return (4.0 * central(h / 2) - central(h)) / 3.0;
}

double lyapunov_trace_residual(const LyapunovReport& r) { return trace_check(r); }

// 1. closed-form trajectory on the flat torus
void example_1_2(Recorder& rec) {
    const double y0 = -1.2;
    const PhaseState s0{vec2(-std::log(std::cos(y0)), y0), vec2(std::sin(y0), std::cos(y0)), 0.0};
    const Trajectory tr = integrate(Flow::isokinetic(scenarios::example_1_2(1.0)), s0, 3.5, 1e-3);
    double worst = 0.0;
    long used = 0;
    for (const PhaseState& st : tr.states) {
        if (std::abs(st.q[1]) > 1.2) continue;
        worst = std::max(worst, std::abs(st.q[0] + std::log(std::cos(st.q[1]))));
        ++used;
    }
    rec.check("max |x + ln cos y|", worst, "<", 1e-6);
    rec.check("samples with |y| <= 1.2", static_cast<double>(used), ">=", 3000);
}

// 2. attractor and repellor
void attractor(Recorder& rec) {
    const Flow f = Flow::isokinetic(scenarios::example_1_2(1.0));
    const PhaseState s0{vec2(0.0, 0.0), vec2(std::cos(2.5), std::sin(2.5)), 0.0};
    const Trajectory fwd = integrate(f, s0, 200.0, 1e-3);
    rec.check("angle(v, E) forward", std::abs(std::atan2(fwd.back().v[1], fwd.back().v[0])), "<", 1e-4);
    const Vec vb = reversed(integrate(f, reversed(s0), 200.0, 1e-3).back()).v;
    rec.check("angle(v, -E) backward", std::abs(std::atan2(vb[1], -vb[0])), "<", 1e-4);
}

// 3. curvature routes and compatibility
void curvature_consistency(Recorder& rec) {
    CounterRng rng(3);
    double routes = 0.0, compat = 0.0;
    long samples = 0;
    for (const WeylScenario& s : preset_scenarios()) {
        const int n = s.dim();
        for (int trial = 0; trial < 100; ++trial, ++samples) {
            const Vec q = random_point(s, rng);
            const CurvatureSample c = sectional_weyl(s, q, rng.normal_vector(n), rng.normal_vector(n));
            routes = std::max(routes, c.discrepancy);

            const Vec x = rng.normal_vector(n);
            const LocalGeometry geo = evaluate_geometry(s, q, GeometryOrder::Connection);
            Mat lhs = Mat::Zero(n, n);
            for (int m = 0; m < n; ++m) lhs += x[m] * metric_derivative(s, q, m);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        lhs(i, j) -= geo.weyl[k].row(i).dot(x) * geo.metric.g(k, j) +
                                     geo.weyl[k].row(j).dot(x) * geo.metric.g(i, k);
            compat = std::max(compat, (lhs + 2.0 * geo.phi(x) * geo.metric.g).cwiseAbs().maxCoeff());
        }
    }
    rec.check("max route discrepancy", routes, "<", 1e-6);
    rec.check("max compatibility residual", compat, "<", 1e-8);
    rec.check("samples", static_cast<double>(samples), ">=", 600);
}

// 4. flat 3-torus signs
void torus_signs(Recorder& rec) {
    const WeylScenario s = scenarios::torus3_constant(1.0);
    const CurvatureScan scan = curvature_sign_scan(s, 100, 100, 4);
    rec.check("count_positive", static_cast<double>(scan.census.count_positive), "==", 0);
    rec.check("max Khat over random planes", scan.census.max, "<", 0.0);
    rec.check("samples", static_cast<double>(scan.census.total()), ">=", 10000);
    CounterRng rng(44);
    double containing = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const Vec q = random_point(s, rng);
        const CurvatureSample c = sectional_weyl(s, q, vec3(1, 0, 0), rng.normal_vector(3));
        containing = std::max(containing, std::abs(c.weyl));
    }
    rec.check("max |Khat| on planes containing E", containing, "<", 1e-9);
}

// 5. geodesic flow exponents
LyapunovReport hyperbolic_run() {
    const WeylScenario s = scenarios::hyperbolic_geodesic();
    LyapunovOptions o;
    o.T = 200.0;
    o.dt = 1e-3;
    return lyapunov_spectrum(Flow::isokinetic(s), unit_state(s, vec2(0.0, 1.0), vec2(1.0, 0.3)), o);
}

void geodesic_exponents(Recorder& rec) {
    const LyapunovReport r = hyperbolic_run();
    rec.check("|lambda1 - 1|", std::abs(r.exponents[0] - 1.0), "<", 0.02);
    rec.check("|lambda2 + 1|", std::abs(r.exponents[1] + 1.0), "<", 0.02);
}

// 6. trace identity and pairing
void pairing(Recorder& rec) {
    double worst = 0.0;
    LyapunovOptions o;
    o.T = 100.0;
    o.dt = 1e-2;
    const LyapunovReport ex = lyapunov_spectrum(Flow::isokinetic(scenarios::example_1_2(1.0)),
                                                {vec2(0.1, 0.2), vec2(std::cos(std::sqrt(2.0)), std::sin(std::sqrt(2.0))), 0.0}, o);
    worst = std::max(worst, lyapunov_trace_residual(ex));
    const LyapunovReport torus =
        lyapunov_spectrum(Flow::isokinetic(scenarios::torus3_constant(1.0)), {vec3(0.1, 0.2, 0.3), vec3(1, 0, 0), 0.0}, o);
    worst = std::max(worst, lyapunov_trace_residual(torus));
    o.dt = 1e-3;
    const WeylScenario hp = scenarios::hyperbolic_potential(0.2);
    worst = std::max(worst, lyapunov_trace_residual(
                                lyapunov_spectrum(Flow::isokinetic(hp), unit_state(hp, vec2(0.0, 1.0), vec2(1.0, 0.3)), o)));
    const WeylScenario pm = scenarios::product_mixed();
    o.T = 20.0;
    Vec q(4), v(4);
    q << 0.1, 0.2, 0.3, 0.4;
    v << 0.3, -0.5, 0.6, 0.2;
    worst = std::max(worst, lyapunov_trace_residual(lyapunov_spectrum(Flow::isokinetic(pm), unit_state(pm, q, v), o)));
    worst = std::max(worst, lyapunov_trace_residual(hyperbolic_run()));
    rec.check("max trace-identity residual over 5 runs", worst, "<", 0.02);
    rec.check("torus3 |(l1+l4) - (l2+l3)|",
              std::abs(torus.exponents[0] + torus.exponents[3] - torus.exponents[1] - torus.exponents[2]), "<", 0.02);
}

// 7. reduction theorem and Maupertuis
void reduction(Recorder& rec) {
    const FourierField W = FourierField::single({1, 0}, 0.2);
    const IsoenergeticSpec spec{W, 1.0};
    const Vec q0 = vec2(0.15, 0.35);
    const Vec dir = vec2(0.8, 0.6);
    const PhaseState e0{q0, std::sqrt(2.0 * (1.0 - W.value(q0))) * dir, 0.0};

    const WeylScenario s = scenarios::flat_torus(vec2(0.3, 0.1));
    const Flow iso = Flow::isoenergetic(s, spec);
    const Trajectory by_s = resample_by_arc_length(iso, integrate(iso, e0, 12.0, 1e-3), 0.01, 10.0);
    const Trajectory w = integrate(Flow::isokinetic(reduced_scenario(s, spec)), {q0, dir, 0.0}, 10.0, 1e-3);
    double worst = 0.0;
    for (std::size_t k = 0; k < by_s.size(); ++k)
        worst = std::max(worst, (by_s.states[k].q - w.states[10 * k].q).cwiseAbs().maxCoeff());
    rec.check("arc length covered", by_s.back().t, ">=", 10.0 - 1e-9);
    rec.check("max pointwise deviation from W-flow", worst, "<", 1e-6);

    const WeylScenario free = scenarios::flat_torus(vec2(0.0, 0.0));
    const Flow iso0 = Flow::isoenergetic(free, spec);
    const WeylScenario jacobi("jacobi", Metric(MaupertuisMetric{W, 1.0}), VectorField::zero(2));
    const Flow geo = Flow::isokinetic(jacobi);
    const Trajectory a = resample_by_arc_length(iso0, integrate(iso0, e0, 12.0, 1e-3), 1e-3, 10.0);
    const Trajectory b = resample_by_arc_length(geo, integrate(geo, unit_state(jacobi, q0, dir), 14.0, 1e-3), 1e-3,
                                                10.0, &free.metric());
    rec.check("Hausdorff distance to Maupertuis geodesic", hausdorff_distance(positions(a), positions(b)), "<", 1e-6);
}

// 8. Dettmann-Morriss
void dettmann_morriss_check(Recorder& rec) {
    const FourierField u = FourierField::single({1, 0}, 0.3);
    const Flow f = Flow::isokinetic(scenarios::flat_torus_gradient(u));
    const Trajectory tr = integrate(f, {vec2(0.1, 0.2), vec2(0.6, 0.8), 0.0}, 50.0, 1e-3);
    const DettmannMorrissRecord r = dettmann_morriss(f, tr, u);
    double drift = 0.0;
    for (double h : r.hamiltonian) drift = std::max(drift, std::abs(h - r.hamiltonian.front()));
    rec.check("H drift", drift, "<", 1e-8);
    rec.check("Hamilton residual", r.hamilton_residual, "<", 1e-5);
}

// 9. J identity
void jform_identity(Recorder& rec) {
    const std::vector<WeylScenario> pool{scenarios::hyperbolic_potential(0.2), scenarios::torus3_constant(1.0),
                                         scenarios::product_mixed(), scenarios::sol_scan(),
                                         scenarios::hyperbolic_geodesic()};
    CounterRng rng(9);
    double worst = 0.0;
    long near_zero = 0, violations = 0, up = 0, down = 0;
    for (int run_id = 0; run_id < 10; ++run_id) {
        const WeylScenario& s = pool[static_cast<std::size_t>(run_id) % pool.size()];
        const int n = s.dim();
        Vec q = random_point(s, rng);
        const LinearizedRun run = linearized_run(Flow::isokinetic(s), unit_state(s, q, rng.normal_vector(n)),
                                                 {0.0, rng.normal_vector(n - 1), rng.normal_vector(n - 1)}, 3.0, 1e-3);
        double scale = 1.0;
        for (std::size_t k = 0; k < run.t.size(); ++k)
            scale = std::max(scale, std::abs(jform_identity_rhs(run.tangent[k], run.phi_v[k], run.curvature[k])));
        worst = std::max(worst, jform_derivative_check(run) / scale);
    }
    rec.check("max |dJ/dt - rhs| / scale", worst, "<", 1e-5);

    // negative curvature: J can only cross zero upwards
    for (const WeylScenario& s : {scenarios::hyperbolic_potential(0.2), scenarios::hyperbolic_geodesic()}) {
        for (int trial = 0; trial < 10; ++trial) {
            const double theta = rng.uniform(0, 2 * kPi);
            const double xi = rng.normal();
            const double chi = trial == 0 ? 0.0 : -xi * rng.uniform(0.5, 3.0);
            const LinearizedRun run =
                linearized_run(Flow::isokinetic(s), unit_state(s, vec2(0.0, 1.0), vec2(std::cos(theta), std::sin(theta))),
                               {0.0, Vec::Constant(1, xi), Vec::Constant(1, chi)}, 3.0, 1e-3);
            for (std::size_t k = 0; k < run.t.size(); ++k) {
                const TangentVector& t = run.tangent[k];
                if (k > 0) {
                    const TangentVector& p = run.tangent[k - 1];
                    const double j0 = jform(p.xi, p.chi), j1 = jform(t.xi, t.chi);
                    if (j0 < 0 && j1 >= 0) ++up;
                    if (j0 > 0 && j1 <= 0) ++down;
                }
                if (std::abs(jform(t.xi, t.chi)) >= 1e-6) continue;
                ++near_zero;
                if (!(jform_identity_rhs(t, run.phi_v[k], run.curvature[k]) > 0)) ++violations;
            }
        }
    }
    rec.check("samples with |J| < 1e-6", static_cast<double>(near_zero), ">", 0);
    rec.check("of those with dJ/dt <= 0", static_cast<double>(violations), "==", 0);
    rec.check("upward zero crossings of J", static_cast<double>(up), ">", 0);
    rec.check("downward zero crossings of J", static_cast<double>(down), "==", 0);
}

// 10. billiard threshold, flights, Sinai exponent, exponential map
BilliardState rk4_flight(const Vec2& E, BilliardState s, double T, double dt) {
    auto f = [&](const Vec2& v) -> Vec2 { return E - E.dot(v) * v; };
    const long n = static_cast<long>(std::ceil(T / dt));
    const double h = T / static_cast<double>(n);
    for (long k = 0; k < n; ++k) {
        const Vec2 k1v = f(s.v);
        const Vec2 k2q = s.v + 0.5 * h * k1v, k2v = f(k2q);
        const Vec2 k3q = s.v + 0.5 * h * k2v, k3v = f(k3q);
        const Vec2 k4q = s.v + h * k3v, k4v = f(k4q);
        s.q += h / 6 * (s.v + 2 * k2q + 2 * k3q + k4q);
        s.v += h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
    }
    return s;
}

BilliardTable sinai_table(double field) {
    return BilliardTable(Vec2(1, 1), {{Vec2(0, 0), 0.36}, {Vec2(0.5, 0.5), 0.2}}, Vec2(field, 0));
}

void billiard_threshold(Recorder& rec) {
    double margin_err = 0.0;
    for (double r : {0.1, 0.2, 0.3}) {
        for (double e : {0.0, 1.0, 1.0 / r, 5.0}) {
            const BilliardTable t(Vec2(1, 1), {{Vec2(0.5, 0.5), r}}, Vec2(0.6 * e, 0.8 * e));
            const ConvexityReport c = weyl_convexity(t);
            margin_err = std::max(margin_err, std::abs(c.margin - (1.0 / r - t.field_norm())));
            if (c.convex != (r * t.field_norm() < 1.0) && std::abs(c.margin) > 1e-12) margin_err = INFINITY;
        }
    }
    rec.check("max |margin - (1/r - |E|)|", margin_err, "<=", 1e-15);

    CounterRng rng(10);
    double flight = 0.0;
    for (int k = 0; k < 100; ++k) {
        const BilliardTable t(Vec2(1, 1), {{Vec2(0, 0), 0.36}, {Vec2(0.5, 0.5), 0.2}},
                              Vec2(std::cos(rng.uniform(-kPi, kPi)), 0.0));
        BilliardState s;
        for (;;) {
            s = {Vec2(rng.uniform(0, 1), rng.uniform(0, 1)), Vec2(1, 0), 0.0};
            const double th = rng.uniform(-kPi, kPi);
            s.v = Vec2(std::cos(th), std::sin(th));
            try {
                const FlightResult fr = free_flight(t, s);
                if (!fr.hit) continue;
                const BilliardState o = rk4_flight(t.field(), s, fr.event.flight_time, 1e-6);
                flight = std::max(flight, (o.q - FlightCurve(t, s.q, s.v).position(fr.event.flight_time)).norm());
                break;
            } catch (const InvalidStateError&) {
            }
        }
    }
    rec.check("max |closed form - RK4| over 100 flights", flight, "<", 1e-8);

    const BilliardState start{Vec2(0.5, 0.1), Vec2(std::cos(0.3), std::sin(0.3)), 0.0};
    const BilliardTable table = sinai_table(0.2 / 0.36);
    const BilliardRun run = run_billiard(table, start, 10000, true);
    rec.check("finite horizon", table.finite_horizon() ? 1.0 : 0.0, "==", 1.0);
    rec.check("Sinai lambda1 at r|E| = 0.2", run.lambda1, ">", 0.0);

    std::vector<Vec2> z;
    for (int k = 0; k <= 40; ++k) {
        const double y = -1.0 + k / 20.0;
        z.emplace_back(-std::log(std::cos(y)), y);
    }
    double exp_res = exp_map_check(z, 1.0);
    for (int k = 0; k < 20; ++k) {
        const BilliardState s{Vec2(0.1, 0.2), Vec2(std::cos(0.3 * k), std::sin(0.3 * k)), 0.0};
        exp_res = std::max(exp_res, exp_map_check(flight_samples_aligned(table, s, 1.5, 30), table.field_norm()));
    }
    rec.check("max exponential-map collinearity residual", exp_res, "<", 1e-9);
}

// 11. two-disk orbits
void two_disk(Recorder& rec) {
    double oracle = 0.0;
    for (double r : {0.1, 0.2, 0.3}) {
        for (double gap : {0.05, 0.2, 0.5}) {
            const OrbitStability o = periodic_orbit_stability(two_disk_table(r, gap, 0.0), 0, 1);
            Mat2 flight, kick;
            flight << 1, gap, 0, 1;
            kick << 1, 0, 2 / r, 1;
            oracle = std::max(oracle, std::abs(o.trace - (kick * flight * kick * flight).trace()));
        }
    }
    rec.check("max |trace - classical trace| at E = 0", oracle, "<", 1e-8);

    std::vector<double> rE, tilts;
    for (int k = 0; k <= 20; ++k) rE.push_back(0.1 * k);
    for (int k = 0; k <= 8; ++k) tilts.push_back(k * kPi / 16);
    const OrbitScan scan = orbit_scan(0.2, rE, {0.05, 0.1, 0.2, 0.4}, tilts, 360);
    long convex_chords = 0;
    for (const auto& row : scan.rows)
        if (row.convex) convex_chords += row.chords;
    rec.check("period-2 orbits checked with r|E| < 1", static_cast<double>(convex_chords), ">", 0);
    rec.check("all hyperbolic in the convex regime", scan.hyperbolic_in_convex_regime ? 1.0 : 0.0, "==", 1.0);
    const bool found = scan.first_elliptic_past_threshold.has_value();
    rec.check("elliptic orbit found past r|E| = 1", found ? 1.0 : 0.0, "==", 1.0);
    if (found) {
        const OrbitScanRow& row = *scan.first_elliptic_past_threshold;
        const OrbitStability& o = *row.first_elliptic;
        rec.check("first elliptic r|E|", row.r_times_E, ">", 1.0);
        rec.check("first elliptic gap", row.gap, ">", 0.0);
        rec.check("first elliptic field tilt", row.tilt, ">=", 0.0);
        rec.check("first elliptic |trace|", std::abs(o.trace), "<", 2.0);
        rec.check("max ||lambda| - 1|", std::max(std::abs(std::abs(o.eig1) - 1), std::abs(std::abs(o.eig2) - 1)), "<",
                  1e-8);
    }
}

// 12. reversibility and determinism
double round_trip(const Flow& f, const PhaseState& s0, double T) {
    const Trajectory fwd = integrate(f, s0, T, 1e-3);
    const PhaseState back = integrate(f, reversed(fwd.back()), T, 1e-3).back();
    return std::max((back.q - s0.q).cwiseAbs().maxCoeff(), (back.v + s0.v).cwiseAbs().maxCoeff());
}

std::string fingerprint() {
    std::ostringstream os;
    const Trajectory tr = integrate(Flow::isokinetic(scenarios::example_1_2(1.0)), {vec2(0, 0), vec2(0, 1), 0.0}, 10.0, 1e-3);
    for (const auto& s : tr.states) os << format_double(s.q[0]) << format_double(s.q[1]) << format_double(s.v[0]);
    const WeylScenario hp = scenarios::hyperbolic_potential(0.2);
    LyapunovOptions o;
    o.T = 10.0;
    const LyapunovReport r = lyapunov_spectrum(Flow::isokinetic(hp), unit_state(hp, vec2(0, 1), vec2(1, 0.3)), o);
    for (int i = 0; i < r.exponents.size(); ++i) os << format_double(r.exponents[i]);
    const CurvatureScan scan = curvature_sign_scan(scenarios::sol_scan(), 20, 20, 12);
    os << format_double(scan.census.min) << format_double(scan.census.max) << scan.census.count_negative;
    const BilliardRun br = run_billiard(sinai_table(0.9), {Vec2(0.5, 0.1), Vec2(0.6, 0.8), 0.0}, 500, true);
    for (const auto& e : br.events) os << format_double(e.impact.x()) << format_double(e.impact.y());
    os << format_double(br.lambda1);
    return sha256_hex(os.str());
}

void reversibility(Recorder& rec) {
    double worst = 0.0;
    for (const WeylScenario& s : preset_scenarios()) {
        const int n = s.dim();
        CounterRng rng(12);
        const Vec q = random_point(s, rng);
        worst = std::max(worst, round_trip(Flow::isokinetic(s), unit_state(s, q, rng.normal_vector(n)), 5.0));
        worst = std::max(worst, round_trip(Flow::weyl_geodesic(s), unit_state(s, q, rng.normal_vector(n)), 2.0));
    }
    const IsoenergeticSpec spec{FourierField::single({1, 0}, 0.2), 1.0};
    const Vec q0 = vec2(0.15, 0.35);
    const PhaseState e0{q0, std::sqrt(2.0 * (1.0 - spec.potential.value(q0))) * vec2(0.8, 0.6), 0.0};
    worst = std::max(worst, round_trip(Flow::isoenergetic(scenarios::flat_torus(vec2(0.3, 0.1)), spec), e0, 5.0));
    rec.check("max involution round-trip error (ODE flows)", worst, "<", 1e-6);

    const BilliardTable t = sinai_table(0.9);
    const BilliardRun run = run_billiard(t, {Vec2(0.5, 0.1), Vec2(std::cos(1.1), std::sin(1.1)), 0.0}, 101, false);
    rec.check("billiard retrace over 100 collisions", retrace_check(t, run, 100), "<", 1e-8);

    rec.check("repeat runs identical", fingerprint() == fingerprint() ? 1.0 : 0.0, "==", 1.0);
}

const char* title(int id) {
    switch (id) {
        case 1: return "example_1_2 closed form";
        case 2: return "attractor and repellor";
        case 3: return "curvature consistency";
        case 4: return "flat 3-torus curvature signs";
        case 5: return "geodesic flow exponents";
        case 6: return "trace identity and pairing";
        case 7: return "reduction to W-flows";
        case 8: return "Dettmann-Morriss Hamiltonian";
        case 9: return "J identity";
        case 10: return "billiard convexity threshold";
        case 11: return "two-disk periodic orbits";
        case 12: return "reversibility and determinism";
    }
    return "?";
}

}  // namespace

CriterionResult run_criterion(int id) {
    CriterionResult r;
    r.id = id;
    r.title = title(id);
    Recorder rec(r);
    try {
        switch (id) {
            case 1: example_1_2(rec); break;
            case 2: attractor(rec); break;
            case 3: curvature_consistency(rec); break;
            case 4: torus_signs(rec); break;
            case 5: geodesic_exponents(rec); break;
            case 6: pairing(rec); break;
            case 7: reduction(rec); break;
            case 8: dettmann_morriss_check(rec); break;
            case 9: jform_identity(rec); break;
            case 10: billiard_threshold(rec); break;
            case 11: two_disk(rec); break;
            case 12: reversibility(rec); break;
            default: r.error = "no criterion " + std::to_string(id);
        }
    } catch (const Error& e) {
        r.error = e.kind() + ": " + e.what();
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    r.passed = r.error.empty() && !r.measurements.empty();
    for (const auto& m : r.measurements) r.passed = r.passed && m.passed;
    return r;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids,
                                            const std::function<void(const CriterionResult&)>& progress) {
    std::vector<int> todo = ids;
    if (todo.empty())
        for (int i = 1; i <= kCriterionCount; ++i) todo.push_back(i);
    std::vector<CriterionResult> out;
    for (int id : todo) {
        out.push_back(run_criterion(id));
        if (progress) progress(out.back());
    }
    return out;
}

std::string summary_line(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.passed ? "PASS" : "FAIL") << "  " << r.id << "  " << r.title;
    for (const auto& m : r.measurements) {
        os << "  [" << m.name << " = ";
        os.precision(6);
        os << m.value << " " << m.relation << " " << m.threshold << (m.passed ? "" : " FAILED") << "]";
    }
    if (!r.error.empty()) os << "  error: " << r.error;
    return os.str();
}

}  // namespace weylflow
