#include "weylflow/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "weylflow/errors.hpp"
#include "weylflow/scenarios.hpp"

namespace weylflow {

using nlohmann::ordered_json;

const char* task_name(Task t) {
    switch (t) {
        case Task::Simulate: return "simulate";
        case Task::Lyapunov: return "lyapunov";
        case Task::CurvatureScan: return "curvature-scan";
        case Task::Billiard: return "billiard";
        case Task::OrbitStability: return "orbit-stability";
        case Task::Verify: return "verify";
    }
    return "?";
}

std::optional<Task> parse_task(const std::string& name) {
    for (Task t : {Task::Simulate, Task::Lyapunov, Task::CurvatureScan, Task::Billiard, Task::OrbitStability,
                   Task::Verify})
        if (name == task_name(t)) return t;
    return std::nullopt;
}

namespace {

enum class Range { Any, Positive, NonNegative };

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// Walks a document, recording every problem and inserting defaults so that
// the document ends up as a complete echo of the configuration.
class Checker {
public:
    std::vector<std::string> errors;

    void fail(const std::string& path, const std::string& msg) { errors.push_back(path + ": " + msg); }

    bool object(ordered_json& j, const std::string& path, const std::set<std::string>& allowed) {
        if (!j.is_object()) {
            fail(path, "expected an object");
            return false;
        }
        for (auto it = j.begin(); it != j.end(); ++it)
            if (!allowed.count(it.key())) fail(join(path, it.key()), "unknown key");
        return true;
    }

    double number(ordered_json& obj, const std::string& path, const std::string& key, std::optional<double> def,
                  Range range = Range::Any) {
        const std::string p = join(path, key);
        if (!obj.contains(key)) {
            if (!def) {
                fail(p, "required");
                return 0.0;
            }
            obj[key] = *def;
            return *def;
        }
        return number_value(obj[key], p, range);
    }

    double number_value(const ordered_json& j, const std::string& p, Range range = Range::Any) {
        if (!j.is_number()) {
            fail(p, "expected a number");
            return 0.0;
        }
        const double x = j.get<double>();
        if (!std::isfinite(x)) fail(p, "must be finite");
        if (range == Range::Positive && !(x > 0)) fail(p, "must be positive");
        if (range == Range::NonNegative && !(x >= 0)) fail(p, "must be non-negative");
        return x;
    }

    long integer(ordered_json& obj, const std::string& path, const std::string& key, long def, long min) {
        const std::string p = join(path, key);
        if (!obj.contains(key)) {
            obj[key] = def;
            return def;
        }
        const ordered_json& j = obj[key];
        if (!j.is_number_integer()) {
            fail(p, "expected an integer");
            return def;
        }
        const long x = j.get<long>();
        if (x < min) fail(p, "must be at least " + std::to_string(min));
        return x;
    }

    bool boolean(ordered_json& obj, const std::string& path, const std::string& key, bool def) {
        if (!obj.contains(key)) {
            obj[key] = def;
            return def;
        }
        if (!obj[key].is_boolean()) {
            fail(join(path, key), "expected true or false");
            return def;
        }
        return obj[key].get<bool>();
    }

    std::string string(ordered_json& obj, const std::string& path, const std::string& key,
                       std::optional<std::string> def) {
        if (!obj.contains(key)) {
            if (!def) {
                fail(join(path, key), "required");
                return {};
            }
            obj[key] = *def;
            return *def;
        }
        if (!obj[key].is_string()) {
            fail(join(path, key), "expected a string");
            return {};
        }
        return obj[key].get<std::string>();
    }

    std::vector<double> numbers(const ordered_json& j, const std::string& p, int size = -1, Range range = Range::Any) {
        std::vector<double> out;
        if (!j.is_array()) {
            fail(p, "expected an array of numbers");
            return out;
        }
        if (size >= 0 && static_cast<int>(j.size()) != size) {
            fail(p, "expected " + std::to_string(size) + " entries, got " + std::to_string(j.size()));
            return out;
        }
        for (std::size_t i = 0; i < j.size(); ++i)
            out.push_back(number_value(j[i], p + "[" + std::to_string(i) + "]", range));
        return out;
    }

    Vec vec(const ordered_json& j, const std::string& p, int size) {
        const std::vector<double> xs = numbers(j, p, size);
        Vec v = Vec::Zero(size);
        for (std::size_t i = 0; i < xs.size(); ++i) v[static_cast<int>(i)] = xs[i];
        return v;
    }

    FourierField fourier(ordered_json& j, const std::string& p, int dim) {
        std::vector<FourierField::Term> terms;
        if (!j.is_array()) {
            fail(p, "expected an array of {k, cos, sin} terms");
            return FourierField::zero(dim);
        }
        for (std::size_t i = 0; i < j.size(); ++i) {
            const std::string tp = p + "[" + std::to_string(i) + "]";
            ordered_json& t = j[i];
            if (!object(t, tp, {"k", "cos", "sin"})) continue;
            FourierField::Term term;
            if (!t.contains("k")) {
                fail(join(tp, "k"), "required");
            } else if (!t["k"].is_array() || static_cast<int>(t["k"].size()) != dim) {
                fail(join(tp, "k"), "expected " + std::to_string(dim) + " integers");
            } else {
                for (std::size_t a = 0; a < t["k"].size(); ++a) {
                    if (!t["k"][a].is_number_integer()) {
                        fail(join(tp, "k") + "[" + std::to_string(a) + "]", "expected an integer");
                        term.wavevector.push_back(0);
                    } else {
                        term.wavevector.push_back(t["k"][a].get<int>());
                    }
                }
            }
            term.cos_amplitude = number(t, tp, "cos", 0.0);
            term.sin_amplitude = number(t, tp, "sin", 0.0);
            terms.push_back(term);
        }
        try {
            if (static_cast<int>(terms.size()) == static_cast<int>(j.size())) return FourierField(dim, terms);
        } catch (const Error& e) {
            fail(p, e.what());
        }
        return FourierField::zero(dim);
    }

    std::optional<WeylScenario> scenario(ordered_json& j, const std::string& path);
    std::optional<Metric> metric(ordered_json& j, const std::string& path, int& dim);
    std::optional<VectorField> field(ordered_json& j, const std::string& path, int dim);
};

std::optional<Metric> Checker::metric(ordered_json& j, const std::string& path, int& dim) {
    if (!j.is_object()) {
        fail(path, "expected an object");
        return std::nullopt;
    }
    const std::string family = string(j, path, "family", std::nullopt);
    if (family == "flat_torus") {
        object(j, path, {"family", "dim", "periods"});
        dim = static_cast<int>(integer(j, path, "dim", 2, 2));
        std::vector<double> periods(dim, 1.0);
        if (j.contains("periods")) periods = numbers(j["periods"], join(path, "periods"), dim, Range::Positive);
        else j["periods"] = periods;
        if (static_cast<int>(periods.size()) != dim) return std::nullopt;
        return Metric(FlatTorusMetric{periods});
    }
    if (family == "constant_curvature") {
        object(j, path, {"family", "dim", "curvature"});
        dim = static_cast<int>(integer(j, path, "dim", 2, 2));
        return Metric(ConstantCurvatureMetric{dim, number(j, path, "curvature", -1.0)});
    }
    if (family == "conformal_torus") {
        object(j, path, {"family", "dim", "sigma"});
        dim = static_cast<int>(integer(j, path, "dim", 2, 2));
        if (!j.contains("sigma")) {
            fail(join(path, "sigma"), "required");
            return std::nullopt;
        }
        return Metric(ConformalTorusMetric{fourier(j["sigma"], join(path, "sigma"), dim)});
    }
    if (family == "sol") {
        object(j, path, {"family"});
        dim = 3;
        return Metric(SolMetric{});
    }
    if (family == "maupertuis") {
        object(j, path, {"family", "dim", "potential", "energy"});
        dim = static_cast<int>(integer(j, path, "dim", 2, 2));
        if (!j.contains("potential")) {
            fail(join(path, "potential"), "required");
            return std::nullopt;
        }
        FourierField w = fourier(j["potential"], join(path, "potential"), dim);
        return Metric(MaupertuisMetric{std::move(w), number(j, path, "energy", 1.0)});
    }
    if (!family.empty())
        fail(join(path, "family"), "unknown family '" + family +
                                       "' (flat_torus, constant_curvature, conformal_torus, sol, maupertuis)");
    return std::nullopt;
}

std::optional<VectorField> Checker::field(ordered_json& j, const std::string& path, int dim) {
    static const std::vector<std::string> kinds{"constant", "potential", "log_potential", "fourier",
                                                "closed_one_form", "sol_left_invariant"};
    if (!object(j, path, {kinds.begin(), kinds.end()})) return std::nullopt;
    std::vector<std::string> given;
    for (const auto& k : kinds)
        if (j.contains(k)) given.push_back(k);
    if (given.size() > 1) {
        std::string list;
        for (const auto& g : given) list += (list.empty() ? "" : ", ") + g;
        fail(path, "mutually exclusive fields given together: " + list);
        return std::nullopt;
    }
    if (given.empty()) {
        fail(path, "one of constant, potential, log_potential, fourier, closed_one_form, sol_left_invariant required");
        return std::nullopt;
    }
    const std::string& kind = given.front();
    const std::string p = join(path, kind);
    ordered_json& v = j[kind];
    if (kind == "constant") return VectorField(dim, ConstantField{vec(v, p, dim)});
    if (kind == "closed_one_form") return VectorField(dim, ClosedOneFormField{vec(v, p, dim)});
    if (kind == "sol_left_invariant") {
        if (dim != 3) fail(p, "only valid on the sol metric");
        return VectorField(3, SolLeftInvariantField{vec(v, p, 3)});
    }
    if (kind == "potential") return VectorField(dim, GradientField{fourier(v, p, dim)});
    if (kind == "fourier") {
        std::vector<FourierField> comps;
        if (!v.is_array() || static_cast<int>(v.size()) != dim) {
            fail(p, "expected " + std::to_string(dim) + " Fourier series, one per component");
            return std::nullopt;
        }
        for (int a = 0; a < dim; ++a) comps.push_back(fourier(v[a], p + "[" + std::to_string(a) + "]", dim));
        return VectorField(dim, FourierVectorField{comps});
    }
    // log_potential: U = c ln q[axis]
    if (!object(v, p, {"axis", "coefficient"})) return std::nullopt;
    const long axis = integer(v, p, "axis", dim - 1, 0);
    if (axis >= dim) fail(join(p, "axis"), "must be below the dimension");
    return VectorField(dim, GradientField{LogHeightPotential{dim, static_cast<int>(axis), number(v, p, "coefficient", std::nullopt)}});
}

std::optional<WeylScenario> Checker::scenario(ordered_json& j, const std::string& path) {
    if (!object(j, path, {"name", "metric", "field", "product"})) return std::nullopt;
    const std::string name = string(j, path, "name", std::string("custom"));
    if (j.contains("product")) {
        if (j.contains("metric") || j.contains("field")) {
            fail(path, "product is mutually exclusive with metric and field");
            return std::nullopt;
        }
        ordered_json& pr = j["product"];
        if (!pr.is_array() || pr.size() != 2) {
            fail(join(path, "product"), "expected two scenarios");
            return std::nullopt;
        }
        auto a = scenario(pr[0], join(path, "product") + "[0]");
        auto b = scenario(pr[1], join(path, "product") + "[1]");
        if (!a || !b) return std::nullopt;
        WeylScenario s = product_scenario(*a, *b);
        return WeylScenario(name, s.metric_ptr(), s.field_ptr());
    }
    if (!j.contains("metric")) {
        fail(join(path, "metric"), "required");
        return std::nullopt;
    }
    int dim = 2;
    auto m = metric(j["metric"], join(path, "metric"), dim);
    std::optional<VectorField> f;
    if (j.contains("field")) f = field(j["field"], join(path, "field"), dim);
    else f = VectorField::zero(dim);
    if (!m || !f) return std::nullopt;
    try {
        return WeylScenario(name, Metric(*m), *f);
    } catch (const Error& e) {
        fail(path, e.what());
    }
    return std::nullopt;
}

ordered_json fourier_json(std::initializer_list<std::tuple<std::vector<int>, double, double>> terms) {
    ordered_json out = ordered_json::array();
    for (const auto& [k, c, s] : terms) out.push_back({{"k", k}, {"cos", c}, {"sin", s}});
    return out;
}

ordered_json flat(int dim) { return {{"family", "flat_torus"}, {"dim", dim}}; }

}  // namespace

std::vector<std::string> preset_names() {
    return {"example_1_2",  "torus3_constant", "hyperbolic_geodesic", "hyperbolic_potential",
            "sol_scan",     "product_mixed",   "sinai_thermostat",    "two_disk_orbit"};
}

std::optional<ordered_json> preset_document(const std::string& name) {
    if (name == "example_1_2")
        return ordered_json{{"task", "simulate"},
                            {"scenario", {{"name", name}, {"metric", flat(2)}, {"field", {{"constant", {1.0, 0.0}}}}}},
                            {"initial", {{"q", {0.0, 0.0}}, {"v", {0.0, 1.0}}}}};
    if (name == "torus3_constant")
        return ordered_json{
            {"task", "lyapunov"},
            {"scenario", {{"name", name}, {"metric", flat(3)}, {"field", {{"constant", {1.0, 0.0, 0.0}}}}}},
            {"initial", {{"q", {0.1, 0.2, 0.3}}, {"v", {0.2, 0.6, 0.77}}}}};
    if (name == "hyperbolic_geodesic")
        return ordered_json{
            {"task", "lyapunov"},
            {"scenario",
             {{"name", name}, {"metric", {{"family", "constant_curvature"}, {"dim", 2}, {"curvature", -1.0}}}}},
            {"initial", {{"q", {0.0, 1.0}}, {"v", {1.0, 0.3}}}},
            {"numerics", {{"T", 200.0}}}};
    if (name == "hyperbolic_potential")
        return ordered_json{
            {"task", "lyapunov"},
            {"scenario",
             {{"name", name},
              {"metric", {{"family", "constant_curvature"}, {"dim", 2}, {"curvature", -1.0}}},
              {"field", {{"log_potential", {{"axis", 1}, {"coefficient", 0.2}}}}}}},
            {"initial", {{"q", {0.0, 1.0}}, {"v", {1.0, 0.3}}}},
            {"numerics", {{"T", 200.0}}}};
    if (name == "sol_scan")
        return ordered_json{{"task", "curvature-scan"},
                            {"scenario",
                             {{"name", name},
                              {"metric", {{"family", "sol"}}},
                              {"field", {{"sol_left_invariant", {0.0, 0.0, 1.0}}}}}}};
    if (name == "product_mixed")
        return ordered_json{
            {"task", "curvature-scan"},
            {"scenario",
             {{"name", name},
              {"product",
               {{{"metric", flat(2)},
                 {"field", {{"potential", fourier_json({{{1, 0}, 0.15, 0.0}, {{0, 1}, 0.0, 0.1}})}}}},
                {{"metric", flat(2)}, {"field", {{"constant", {0.4, 0.3}}}}}}}}}};
    if (name == "sinai_thermostat")
        return ordered_json{
            {"task", "billiard"},
            {"billiard",
             {{"periods", {1.0, 1.0}},
              {"scatterers",
               {{{"center", {0.0, 0.0}}, {"radius", 0.36}}, {{"center", {0.5, 0.5}}, {"radius", 0.2}}}},
              {"field", {0.2 / 0.36, 0.0}},
              {"initial", {{"q", {0.5, 0.1}}, {"v", {std::cos(0.3), std::sin(0.3)}}}}}}};
    if (name == "two_disk_orbit") {
        std::vector<double> rE, tilts;
        for (int k = 0; k <= 20; ++k) rE.push_back(0.1 * k);
        for (int k = 0; k <= 8; ++k) tilts.push_back(k * 3.14159265358979323846 / 16);
        return ordered_json{{"task", "orbit-stability"},
                            {"orbit",
                             {{"radius", 0.2},
                              {"r_times_E", rE},
                              {"gaps", {0.05, 0.1, 0.2, 0.4}},
                              {"tilts", tilts}}}};
    }
    return std::nullopt;
}

namespace {

void parse_initial(Checker& c, ordered_json& j, const std::string& path, int dim, RunConfig& cfg) {
    if (!c.object(j, path, {"q", "v"})) return;
    if (!j.contains("q") || !j.contains("v")) {
        c.fail(path, "needs both q and v");
        return;
    }
    const Vec q = c.vec(j["q"], join(path, "q"), dim);
    const Vec v = c.vec(j["v"], join(path, "v"), dim);
    if (v.norm() == 0) c.fail(join(path, "v"), "must be nonzero");
    cfg.initial = PhaseState{q, v, 0.0};
}

void parse_flow(Checker& c, ordered_json& j, const std::string& path, int dim, RunConfig& cfg) {
    if (!c.object(j, path, {"kind", "potential", "energy", "kinetic_floor"})) return;
    const std::string kind = c.string(j, path, "kind", std::string("isokinetic"));
    if (kind == "isokinetic") cfg.flow.kind = FlowKind::Isokinetic;
    else if (kind == "weyl_geodesic") cfg.flow.kind = FlowKind::WeylGeodesic;
    else if (kind == "isoenergetic") cfg.flow.kind = FlowKind::Isoenergetic;
    else c.fail(join(path, "kind"), "unknown flow kind '" + kind + "' (isokinetic, isoenergetic, weyl_geodesic)");
    const bool iso = cfg.flow.kind == FlowKind::Isoenergetic;
    for (const char* key : {"potential", "energy", "kinetic_floor"})
        if (!iso && j.contains(key)) c.fail(join(path, key), "only valid for the isoenergetic flow");
    if (!iso) return;
    IsoenergeticSpec spec;
    if (!j.contains("potential")) c.fail(join(path, "potential"), "required for the isoenergetic flow");
    else spec.potential = c.fourier(j["potential"], join(path, "potential"), dim);
    spec.energy = c.number(j, path, "energy", 1.0);
    spec.kinetic_floor = c.number(j, path, "kinetic_floor", 1e-6, Range::Positive);
    cfg.flow.isoenergetic = spec;
}

void parse_billiard(Checker& c, ordered_json& j, const std::string& path, RunConfig& cfg) {
    if (!c.object(j, path, {"periods", "scatterers", "field", "initial", "with_tangent", "sweep"})) return;
    BilliardOptions b;
    auto v2 = [&](const ordered_json& x, const std::string& p) {
        const Vec v = c.vec(x, p, 2);
        return Vec2(v[0], v[1]);
    };
    if (j.contains("periods")) b.periods = v2(j["periods"], join(path, "periods"));
    else j["periods"] = {1.0, 1.0};
    if (j.contains("field")) b.field = v2(j["field"], join(path, "field"));
    else j["field"] = {0.0, 0.0};
    if (!j.contains("scatterers") || !j["scatterers"].is_array() || j["scatterers"].empty()) {
        c.fail(join(path, "scatterers"), "expected a non-empty array of {center, radius}");
    } else {
        for (std::size_t i = 0; i < j["scatterers"].size(); ++i) {
            const std::string sp = join(path, "scatterers") + "[" + std::to_string(i) + "]";
            ordered_json& s = j["scatterers"][i];
            if (!c.object(s, sp, {"center", "radius"})) continue;
            Scatterer sc;
            if (!s.contains("center")) c.fail(join(sp, "center"), "required");
            else sc.center = v2(s["center"], join(sp, "center"));
            sc.radius = c.number(s, sp, "radius", std::nullopt, Range::Positive);
            b.scatterers.push_back(sc);
        }
    }
    if (j.contains("initial")) {
        ordered_json& in = j["initial"];
        const std::string ip = join(path, "initial");
        if (c.object(in, ip, {"q", "v"})) {
            if (!in.contains("q") || !in.contains("v")) {
                c.fail(ip, "needs both q and v");
            } else {
                b.initial.q = v2(in["q"], join(ip, "q"));
                b.initial.v = v2(in["v"], join(ip, "v"));
                if (b.initial.v.norm() == 0) c.fail(join(ip, "v"), "must be nonzero");
                else b.initial.v.normalize();
            }
        }
    } else {
        j["initial"] = {{"q", {b.initial.q.x(), b.initial.q.y()}}, {"v", {b.initial.v.x(), b.initial.v.y()}}};
    }
    b.with_tangent = c.boolean(j, path, "with_tangent", true);
    if (j.contains("sweep")) b.sweep = c.numbers(j["sweep"], join(path, "sweep"), -1, Range::NonNegative);
    else j["sweep"] = ordered_json::array();
    if (c.errors.empty()) {
        try {
            BilliardTable(b.periods, b.scatterers, b.field);
        } catch (const Error& e) {
            c.fail(path, e.what());
        }
    }
    cfg.billiard = b;
}

void parse_orbit(Checker& c, ordered_json& j, const std::string& path, RunConfig& cfg) {
    if (!c.object(j, path, {"radius", "r_times_E", "gaps", "tilts", "chord_samples"})) return;
    OrbitOptions o;
    o.radius = c.number(j, path, "radius", 0.2, Range::Positive);
    auto list = [&](const char* key, std::vector<double> def, Range range) {
        if (!j.contains(key)) {
            j[key] = def;
            return def;
        }
        return c.numbers(j[key], join(path, key), -1, range);
    };
    o.r_times_E = list("r_times_E", {0.0, 0.5, 1.0, 1.5, 2.0}, Range::NonNegative);
    o.gaps = list("gaps", {0.1}, Range::Positive);
    o.tilts = list("tilts", {0.0}, Range::Any);
    o.chord_samples = static_cast<int>(c.integer(j, path, "chord_samples", 360, 8));
    cfg.orbit = o;
}

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') ++line, col = 1;
        else ++col;
    }
    return {line, col};
}

}  // namespace

ConfigResult parse_config(const std::string& text) {
    ConfigResult result;
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        std::string what = e.what();
        // nlohmann prefixes "[json.exception...] parse error at line L, column C: "
        const auto cut = what.find("column");
        const auto colon = cut == std::string::npos ? cut : what.find(": ", cut);
        result.errors.push_back("syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                                ": " + (colon == std::string::npos ? what : what.substr(colon + 2)));
        return result;
    }
    Checker c;
    if (!doc.is_object()) {
        result.errors.push_back("document: expected an object");
        return result;
    }

    RunConfig cfg;
    if (doc.contains("preset")) {
        if (!doc["preset"].is_string()) {
            c.fail("preset", "expected a string");
        } else {
            cfg.preset = doc["preset"].get<std::string>();
            auto base = preset_document(cfg.preset);
            if (!base) {
                std::string names;
                for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
                c.fail("preset", "unknown preset '" + cfg.preset + "' (" + names + ")");
            } else {
                // billiard and orbit sections patch the preset's; a scenario would replace it
                if (doc.contains("scenario")) c.fail("scenario", "mutually exclusive with preset");
                ordered_json merged = *base;
                merged["preset"] = cfg.preset;
                for (auto it = doc.begin(); it != doc.end(); ++it) {
                    if (it.key() == "preset") continue;
                    if (merged.contains(it.key()) && merged[it.key()].is_object() && it.value().is_object())
                        merged[it.key()].merge_patch(it.value());
                    else
                        merged[it.key()] = it.value();
                }
                doc = merged;
            }
        }
    }

    c.object(doc, "", {"preset", "task", "scenario", "flow", "initial", "numerics", "scan", "billiard", "orbit",
                       "output"});
    const std::string task = c.string(doc, "", "task", std::nullopt);
    if (!task.empty()) {
        if (auto t = parse_task(task)) cfg.task = *t;
        else c.fail("task", "unknown task '" + task + "'");
    }

    int dim = 0;
    if (doc.contains("scenario")) {
        cfg.scenario = c.scenario(doc["scenario"], "scenario");
        if (cfg.scenario) dim = cfg.scenario->dim();
    }
    if (doc.contains("flow")) {
        // an invalid scenario is already reported
        if (dim > 0) parse_flow(c, doc["flow"], "flow", dim, cfg);
        else if (!doc.contains("scenario")) c.fail("flow", "needs a scenario");
    } else if (cfg.scenario) {
        doc["flow"] = {{"kind", "isokinetic"}};
    }
    if (doc.contains("initial")) {
        // an invalid scenario is already reported
        if (dim > 0) parse_initial(c, doc["initial"], "initial", dim, cfg);
        else if (!doc.contains("scenario")) c.fail("initial", "needs a scenario");
    }

    if (!doc.contains("numerics")) doc["numerics"] = ordered_json::object();
    ordered_json& num = doc["numerics"];
    if (c.object(num, "numerics", {"dt", "T", "renorm_every", "seed", "n_collisions"})) {
        cfg.numerics.dt = c.number(num, "numerics", "dt", 1e-3, Range::Positive);
        cfg.numerics.T = c.number(num, "numerics", "T", 100.0, Range::Positive);
        cfg.numerics.renorm_every = static_cast<int>(c.integer(num, "numerics", "renorm_every", 10, 1));
        cfg.numerics.seed = static_cast<std::uint64_t>(c.integer(num, "numerics", "seed", 0, 0));
        cfg.numerics.n_collisions = static_cast<int>(c.integer(num, "numerics", "n_collisions", 10000, 1));
    }
    if (cfg.task == Task::CurvatureScan || doc.contains("scan")) {
        if (!doc.contains("scan")) doc["scan"] = ordered_json::object();
        if (c.object(doc["scan"], "scan", {"points", "planes"})) {
            cfg.scan.points = static_cast<int>(c.integer(doc["scan"], "scan", "points", 100, 1));
            cfg.scan.planes = static_cast<int>(c.integer(doc["scan"], "scan", "planes", 100, 1));
        }
    }
    if (doc.contains("billiard")) parse_billiard(c, doc["billiard"], "billiard", cfg);
    if (doc.contains("orbit")) parse_orbit(c, doc["orbit"], "orbit", cfg);

    if (!doc.contains("output")) doc["output"] = ordered_json::object();
    ordered_json& out = doc["output"];
    if (c.object(out, "output", {"directory", "formats", "every"})) {
        cfg.output.directory = c.string(out, "output", "directory", std::string("out"));
        cfg.output.every = static_cast<int>(c.integer(out, "output", "every", 10, 1));
        if (!out.contains("formats")) out["formats"] = {"csv", "json"};
        if (!out["formats"].is_array()) {
            c.fail("output.formats", "expected an array");
        } else {
            cfg.output.csv = cfg.output.json = false;
            for (const auto& f : out["formats"]) {
                if (f == "csv") cfg.output.csv = true;
                else if (f == "json") cfg.output.json = true;
                else c.fail("output.formats", "unknown format " + f.dump() + " (csv, json)");
            }
        }
    }

    // sections each task needs
    const bool trajectory_task = cfg.task == Task::Simulate || cfg.task == Task::Lyapunov;
    if ((trajectory_task || cfg.task == Task::CurvatureScan) && !doc.contains("scenario"))
        c.fail("scenario", std::string("required for task ") + task_name(cfg.task));
    if (trajectory_task && !doc.contains("initial"))
        c.fail("initial", std::string("required for task ") + task_name(cfg.task));
    if (cfg.task == Task::Billiard && !doc.contains("billiard")) c.fail("billiard", "required for task billiard");
    if (cfg.task == Task::OrbitStability && !doc.contains("orbit")) {
        doc["orbit"] = ordered_json::object();
        parse_orbit(c, doc["orbit"], "orbit", cfg);
    }

    if (!c.errors.empty()) {
        result.errors = std::move(c.errors);
        return result;
    }
    cfg.echo = doc;
    result.config = std::move(cfg);
    return result;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    ConfigResult r = parse_config(ss.str());
    if (!r.config) {
        std::string msg = "invalid config " + path + ":";
        for (const auto& e : r.errors) msg += "\n  " + e;
        throw ConfigError(msg);
    }
    return std::move(*r.config);
}

}  // namespace weylflow
