#include "weylflow/dispatch.hpp"

#include <chrono>
#include <cmath>

#include "weylflow/acceptance.hpp"
#include "weylflow/curvature.hpp"
#include "weylflow/errors.hpp"
#include "weylflow/flows.hpp"
#include "weylflow/lyapunov.hpp"
#include "weylflow/orbits.hpp"
#include "weylflow/output.hpp"

namespace weylflow {

namespace {

using nlohmann::ordered_json;

ordered_json vec_json(const Vec& v) {
    ordered_json a = ordered_json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

ordered_json vec_json(const Vec2& v) { return ordered_json::array({v.x(), v.y()}); }

void header(CsvTable& csv, const RunConfig& cfg) {
    csv.comment(std::string("weylflow ") + WEYLFLOW_VERSION + " task " + task_name(cfg.task));
    csv.comment("config " + cfg.echo.dump());
}

// Rescales v to the speed the flow conserves.
PhaseState start_state(const Flow& flow, PhaseState s) {
    const Mat g = flow.scenario().metric().g(s.q);
    double speed = 1.0;
    if (const IsoenergeticSpec* spec = flow.spec()) {
        const double kinetic = spec->energy - spec->potential.value(s.q);
        if (kinetic <= 0) throw InvalidLevelError("initial point lies outside the energy level");
        speed = std::sqrt(2.0 * kinetic);
    }
    s.v *= speed / std::sqrt(s.v.dot(g * s.v));
    s.t = 0.0;
    return s;
}

Flow make_flow(const RunConfig& cfg) {
    switch (cfg.flow.kind) {
        case FlowKind::Isoenergetic: return Flow::isoenergetic(*cfg.scenario, *cfg.flow.isoenergetic);
        case FlowKind::WeylGeodesic: return Flow::weyl_geodesic(*cfg.scenario);
        case FlowKind::Isokinetic: break;
    }
    return Flow::isokinetic(*cfg.scenario);
}

ordered_json simulate(const RunConfig& cfg, OutputDirectory& out) {
    const Flow flow = make_flow(cfg);
    const PhaseState s0 = start_state(flow, *cfg.initial);
    const Trajectory tr = integrate(flow, s0, cfg.numerics.T, cfg.numerics.dt);
    const int n = cfg.scenario->dim();

    if (cfg.output.csv) {
        std::vector<std::string> cols{"t"};
        for (int i = 0; i < n; ++i) cols.push_back("q" + std::to_string(i));
        for (int i = 0; i < n; ++i) cols.push_back("v" + std::to_string(i));
        for (const char* c : {"speed_residual", "energy_residual", "int_phi"}) cols.emplace_back(c);
        CsvTable csv(cols);
        header(csv, cfg);
        const std::size_t every = static_cast<std::size_t>(cfg.output.every);
        for (std::size_t k = 0; k < tr.size(); ++k) {
            if (k % every != 0 && k + 1 != tr.size()) continue;
            const PhaseState& st = tr.states[k];
            csv.row().add(st.t);
            for (int i = 0; i < n; ++i) csv.add(st.q[i]);
            for (int i = 0; i < n; ++i) csv.add(st.v[i]);
            csv.add(tr.speed_residual[k]).add(tr.energy_residual[k]).add(tr.int_phi[k]);
        }
        out.write("trajectory.csv", csv.str());
    }

    double speed = 0.0, energy = 0.0;
    for (std::size_t k = 0; k < tr.size(); ++k) {
        speed = std::max(speed, std::abs(tr.speed_residual[k]));
        energy = std::max(energy, std::abs(tr.energy_residual[k]));
    }
    return {{"flow", flow_kind_name(flow.kind())},
            {"steps", tr.size() - 1},
            {"final_q", vec_json(tr.back().q)},
            {"final_v", vec_json(tr.back().v)},
            {"int_phi", tr.int_phi.back()},
            {"max_speed_residual", speed},
            {"max_energy_residual", energy}};
}

ordered_json lyapunov(const RunConfig& cfg, OutputDirectory& out) {
    const Flow flow = make_flow(cfg);
    LyapunovOptions o;
    o.T = cfg.numerics.T;
    o.dt = cfg.numerics.dt;
    o.renorm_every = cfg.numerics.renorm_every;
    o.seed = cfg.numerics.seed;
    const LyapunovReport r = lyapunov_spectrum(flow, start_state(flow, *cfg.initial), o);
    const int m = static_cast<int>(r.exponents.size());

    if (cfg.output.csv) {
        std::vector<std::string> cols{"t"};
        for (int i = 1; i <= m; ++i) cols.push_back("lambda" + std::to_string(i));
        cols.emplace_back("s_bar_running");
        cols.emplace_back("jsep_margin");
        CsvTable csv(cols);
        header(csv, cfg);
        csv.comment("exponents measured in the frame-coordinate Euclidean structure of the normalized frames");
        for (const LyapunovWindow& w : r.windows) {
            csv.row().add(w.t);
            for (int i = 0; i < m; ++i) csv.add(w.exponents[i]);
            csv.add(w.s_bar).add(w.jsep_margin);
        }
        out.write("lyapunov.csv", csv.str());
    }

    ordered_json rep{{"dim", r.dim},
                     {"exponents", vec_json(r.exponents)},
                     {"s_bar", r.s_bar},
                     {"pairing_residual", r.pairing_residual},
                     {"trace_residual", r.trace_residual},
                     {"jsep_margin_mean", r.jsep_margin_mean},
                     {"jsep_margin_min", r.jsep_margin_min},
                     {"growth_rate", r.growth_rate},
                     {"decay_rate", r.decay_rate},
                     {"T", r.T},
                     {"dt", r.dt},
                     {"renorm_every", r.renorm_every},
                     {"seed", r.seed},
                     {"finite_time", r.finite_time},
                     {"inner_product", "frame-coordinate Euclidean"},
                     {"final_q", vec_json(r.final_state.q)},
                     {"final_v", vec_json(r.final_state.v)}};
    if (cfg.output.json) out.write_json("lyapunov.json", rep);
    return rep;
}

ordered_json curvature_scan(const RunConfig& cfg, OutputDirectory& out) {
    const WeylScenario& s = *cfg.scenario;
    const CurvatureScan scan =
        curvature_sign_scan(s, cfg.scan.points, cfg.scan.planes, cfg.numerics.seed, cfg.output.csv);
    const int n = s.dim();

    if (cfg.output.csv) {
        std::vector<std::string> cols;
        for (const char* p : {"q", "X", "Y"})
            for (int i = 0; i < n; ++i) cols.push_back(p + std::to_string(i));
        for (const char* c : {"K", "Khat_tensor", "Khat_formula", "margin"}) cols.emplace_back(c);
        CsvTable csv(cols);
        header(csv, cfg);
        for (const CurvatureSample& c : scan.samples) {
            csv.row();
            for (const Vec* v : {&c.q, &c.x, &c.y})
                for (int i = 0; i < n; ++i) csv.add((*v)[i]);
            csv.add(c.riemannian).add(c.weyl_tensor).add(c.weyl).add(anosov_margin(c));
        }
        out.write("curvature_scan.csv", csv.str());
    }

    const SignCensus& c = scan.census;
    ordered_json rep{{"scenario", s.name()},
                     {"samples", c.total()},
                     {"count_negative", c.count_negative},
                     {"count_zero", c.count_zero},
                     {"count_positive", c.count_positive},
                     {"zero_threshold", kCurvatureZeroThreshold},
                     {"min", c.min},
                     {"max", c.max},
                     {"max_route_discrepancy", c.max_route_discrepancy}};
    if (cfg.output.json) out.write_json("curvature_census.json", rep);
    return rep;
}

// Elliptic normal chords between any pair of scatterers.
bool has_elliptic_chord(const BilliardTable& t) {
    const int m = static_cast<int>(t.scatterers().size());
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (const OrbitStability& o : normal_chord_orbits(t, i, j))
                if (o.kind == OrbitClass::Elliptic) return true;
    return false;
}

ordered_json billiard(const RunConfig& cfg, OutputDirectory& out) {
    const BilliardOptions& b = *cfg.billiard;
    const BilliardTable table(b.periods, b.scatterers, b.field);
    const long n = cfg.numerics.n_collisions;
    const BilliardRun run = run_billiard(table, b.initial, n, b.with_tangent);
    const ConvexityReport conv = weyl_convexity(table);

    if (cfg.output.csv) {
        CsvTable csv({"index", "t", "scatterer", "impact_x", "impact_y", "angle_in", "angle_out"});
        header(csv, cfg);
        for (std::size_t k = 0; k < run.events.size(); ++k) {
            const CollisionEvent& e = run.events[k];
            csv.row()
                .add(static_cast<long>(k))
                .add(run.times[k])
                .add(e.scatterer)
                .add(e.impact.x())
                .add(e.impact.y())
                .add(e.angle_in)
                .add(e.angle_out);
        }
        out.write("collisions.csv", csv.str());
    }

    ordered_json rep{{"collisions", run.events.size()},
                     {"total_time", run.total_time},
                     {"grazing_count", run.grazing_count},
                     {"capped_flights", run.capped_flights},
                     {"convex", conv.convex},
                     {"convexity_margin", conv.margin},
                     {"r_min_times_E", table.min_radius() * table.field_norm()},
                     {"finite_horizon", table.finite_horizon()},
                     {"final_q", vec_json(run.final_state.q)},
                     {"final_v", vec_json(run.final_state.v)}};
    if (run.with_tangent) {
        rep["lambda1"] = run.lambda1;
        rep["lambda1_per_collision"] = run.lambda1_per_collision;
    }

    if (!b.sweep.empty()) {
        const Vec2 dir = b.field.norm() > 0 ? Vec2(b.field / b.field.norm()) : Vec2(1.0, 0.0);
        CsvTable csv({"parameter", "lambda1", "grazing_count", "elliptic_flag"});
        header(csv, cfg);
        csv.comment("parameter = r_min |E|; elliptic_flag = an elliptic normal-chord period-2 orbit exists");
        ordered_json rows = ordered_json::array();
        for (double p : b.sweep) {
            const BilliardTable t = table.with_field(dir * (p / table.min_radius()));
            const BilliardRun r = run_billiard(t, b.initial, n, true);
            const bool elliptic = has_elliptic_chord(t);
            csv.row().add(p).add(r.lambda1).add(r.grazing_count).add(elliptic ? 1 : 0);
            rows.push_back({{"parameter", p}, {"lambda1", r.lambda1}, {"grazing_count", r.grazing_count},
                            {"elliptic_flag", elliptic}});
        }
        if (cfg.output.csv) out.write("sweep_summary.csv", csv.str());
        rep["sweep"] = rows;
    }
    if (cfg.output.json) out.write_json("billiard.json", rep);
    return rep;
}

ordered_json stability_json(const OrbitStability& o) {
    return {{"kind", orbit_class_name(o.kind)},
            {"trace", o.trace},
            {"det", o.det},
            {"eig1_abs", std::abs(o.eig1)},
            {"eig2_abs", std::abs(o.eig2)},
            {"on_axis", o.on_axis},
            {"departure_angle", o.departure_angle},
            {"impact_first", vec_json(o.impact_first)},
            {"impact_second", vec_json(o.impact_second)}};
}

ordered_json orbit_stability(const RunConfig& cfg, OutputDirectory& out) {
    const OrbitOptions& o = *cfg.orbit;
    const OrbitScan scan = orbit_scan(o.radius, o.r_times_E, o.gaps, o.tilts, o.chord_samples);

    if (cfg.output.csv) {
        CsvTable csv({"r_times_E", "gap", "tilt", "convex", "axis_trace", "axis_kind", "chords", "elliptic_chords",
                      "elliptic_flag"});
        header(csv, cfg);
        for (const OrbitScanRow& r : scan.rows) {
            csv.row().add(r.r_times_E).add(r.gap).add(r.tilt).add(r.convex ? 1 : 0);
            if (r.axis) csv.add(r.axis->trace).add(std::string(orbit_class_name(r.axis->kind)));
            else csv.add(std::string()).add(std::string());
            csv.add(r.chords).add(r.elliptic_chords).add(r.elliptic_chords > 0 ? 1 : 0);
        }
        out.write("orbit_scan.csv", csv.str());
    }

    ordered_json rep{{"rows", scan.rows.size()},
                     {"hyperbolic_in_convex_regime", scan.hyperbolic_in_convex_regime}};
    if (const auto& f = scan.first_elliptic_past_threshold) {
        rep["first_elliptic"] = {{"r_times_E", f->r_times_E}, {"gap", f->gap}, {"tilt", f->tilt},
                                 {"orbit", stability_json(*f->first_elliptic)}};
    } else {
        rep["first_elliptic"] = nullptr;
    }
    if (cfg.output.json) out.write_json("orbit_stability.json", rep);
    return rep;
}

ordered_json verify(OutputDirectory& out, bool& all_passed) {
    const std::vector<CriterionResult> results = run_acceptance();
    CsvTable csv({"criterion", "title", "measurement", "value", "relation", "threshold", "passed"});
    ordered_json list = ordered_json::array();
    all_passed = true;
    for (const CriterionResult& r : results) {
        all_passed = all_passed && r.passed;
        ordered_json ms = ordered_json::array();
        for (const Measurement& m : r.measurements) {
            csv.row().add(r.id).add(r.title).add(m.name).add(m.value).add(m.relation).add(m.threshold).add(
                m.passed ? 1 : 0);
            ms.push_back({{"name", m.name},
                          {"value", m.value},
                          {"relation", m.relation},
                          {"threshold", m.threshold},
                          {"passed", m.passed}});
        }
        ordered_json entry{{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"measurements", ms}};
        if (!r.error.empty()) entry["error"] = r.error;
        list.push_back(entry);
    }
    out.write("acceptance.csv", csv.str());
    out.write_json("acceptance.json", list);
    return {{"criteria", list.size()}, {"all_passed", all_passed}, {"results", list}};
}

DispatchResult finish(OutputDirectory& out, ordered_json echo, const char* task, ordered_json summary,
                      std::chrono::steady_clock::time_point start, int status, const std::string& error_class,
                      const std::string& message) {
    DispatchResult r;
    r.status = status;
    r.error_class = error_class;
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.manifest = {{"artifact", "weylflow"},
                  {"version", WEYLFLOW_VERSION},
                  {"task", task},
                  {"status", error_class.empty() ? (status == 0 ? "ok" : "failed") : "error"},
                  {"config", std::move(echo)},
                  {"summary", std::move(summary)},
                  {"files", out.file_list()},
                  {"wall_time_seconds", wall}};
    if (!error_class.empty()) r.manifest["error"] = {{"class", error_class}, {"message", message}};
    out.write_json("manifest.json", r.manifest);
    return r;
}

}  // namespace

DispatchResult dispatch(const RunConfig& cfg, const std::filesystem::path& dir) {
    if (cfg.task == Task::Verify) return dispatch_verify(dir);
    const auto start = std::chrono::steady_clock::now();
    OutputDirectory out(dir);
    try {
        ordered_json summary;
        switch (cfg.task) {
            case Task::Simulate: summary = simulate(cfg, out); break;
            case Task::Lyapunov: summary = lyapunov(cfg, out); break;
            case Task::CurvatureScan: summary = curvature_scan(cfg, out); break;
            case Task::Billiard: summary = billiard(cfg, out); break;
            case Task::OrbitStability: summary = orbit_stability(cfg, out); break;
            case Task::Verify: break;
        }
        return finish(out, cfg.echo, task_name(cfg.task), std::move(summary), start, 0, "", "");
    } catch (const Error& e) {
        return finish(out, cfg.echo, task_name(cfg.task), nullptr, start, 2, e.kind(), e.what());
    }
}

DispatchResult dispatch_verify(const std::filesystem::path& dir) {
    const auto start = std::chrono::steady_clock::now();
    OutputDirectory out(dir);
    bool ok = false;
    ordered_json summary = verify(out, ok);
    return finish(out, {{"task", "verify"}}, "verify", std::move(summary), start, ok ? 0 : 1, "", "");
}

}  // namespace weylflow
