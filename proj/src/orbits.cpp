#include "weylflow/orbits.hpp"

#include <cmath>

#include "weylflow/errors.hpp"

namespace weylflow {

namespace {

constexpr double kPi = 3.14159265358979323846;

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

Vec2 nearest_image(const Vec2& c, const Vec2& p, const Vec2& L) {
    return Vec2(c.x() + std::round((p.x() - c.x()) / L.x()) * L.x(),
                c.y() + std::round((p.y() - c.y()) / L.y()) * L.y());
}

struct Leg {
    FlightResult flight;
    Mat2 map;  // flight then reflection
};

std::optional<Leg> leg(const BilliardTable& table, const Vec2& q, const Vec2& v, int from, int to) {
    Leg out;
    out.flight = free_flight(table, {q, v, 0.0}, from);
    if (!out.flight.hit || out.flight.event.scatterer != to) return std::nullopt;
    CollisionEvent& e = out.flight.event;
    e.v_out = reflect(e);
    const FlightCurve curve(table, q, v);
    out.map = reflection_tangent_map(table, e) * flight_tangent_map(curve, e.flight_time);
    return out;
}

// Closes the orbit from the departure point and fills in the stability data.
std::optional<OrbitStability> close_orbit(const BilliardTable& table, int i, int j, const Vec2& p, const Vec2& n) {
    const auto out = leg(table, p, n, i, j);
    if (!out) return std::nullopt;
    const CollisionEvent& e1 = out->flight.event;
    if (std::abs(cross(e1.v_in, e1.normal)) > 1e-8) return std::nullopt;
    const auto back = leg(table, e1.impact, e1.v_out, j, i);
    if (!back) return std::nullopt;
    const CollisionEvent& e2 = back->flight.event;
    if (std::abs(cross(e2.v_in, e2.normal)) > 1e-8) return std::nullopt;

    OrbitStability o;
    o.first = i;
    o.second = j;
    o.impact_first = p;
    o.impact_second = e1.impact;
    o.departure_angle = std::atan2(n.y(), n.x());
    o.monodromy = back->map * out->map;
    o.trace = o.monodromy.trace();
    o.det = o.monodromy.determinant();
    const std::complex<double> disc = std::sqrt(std::complex<double>(o.trace * o.trace - 4.0 * o.det));
    o.eig1 = 0.5 * (o.trace + disc);
    o.eig2 = 0.5 * (o.trace - disc);
    o.kind = classify_monodromy(o.monodromy);
    return o;
}

}  // namespace

const char* orbit_class_name(OrbitClass c) {
    switch (c) {
        case OrbitClass::Hyperbolic: return "hyperbolic";
        case OrbitClass::Elliptic: return "elliptic";
        case OrbitClass::Parabolic: return "parabolic";
    }
    return "?";
}

OrbitClass classify_monodromy(const Mat2& m) {
    const double t = std::abs(m.trace());
    if (std::abs(t - 2.0) <= 1e-12) return OrbitClass::Parabolic;
    return t < 2.0 ? OrbitClass::Elliptic : OrbitClass::Hyperbolic;
}

OrbitStability periodic_orbit_stability(const BilliardTable& table, int i, int j) {
    const auto& sc = table.scatterers();
    const int n = static_cast<int>(sc.size());
    if (i < 0 || j < 0 || i >= n || j >= n || i == j)
        throw UnsupportedConfigurationError("orbit needs two distinct scatterer indices");
    const Vec2 ci = sc[i].center;
    const Vec2 cj = nearest_image(sc[j].center, ci, table.periods());
    const Vec2 axis = (cj - ci).normalized();
    if (table.field_norm() > 0 && std::abs(cross(axis, table.field().normalized())) > 1e-12)
        throw UnsupportedConfigurationError("line of centers is not parallel to the field");
    auto orbit = close_orbit(table, i, j, ci + sc[i].radius * axis, axis);
    if (!orbit) throw NoOrbitError("bouncing orbit between scatterers " + std::to_string(i) + " and " +
                                   std::to_string(j) + " is blocked");
    orbit->on_axis = true;
    return *orbit;
}

std::vector<OrbitStability> normal_chord_orbits(const BilliardTable& table, int i, int j, int samples) {
    const auto& sc = table.scatterers();
    const Vec2 ci = sc[i].center;
    const double ri = sc[i].radius;
    const Vec2 cj = nearest_image(sc[j].center, ci, table.periods());
    const double axis_angle = std::atan2(cj.y() - ci.y(), cj.x() - ci.x());

    struct Sample {
        bool hit = false;
        Vec2 image;
        double g = 0.0;
    };
    auto probe = [&](double beta) {
        const Vec2 n(std::cos(beta), std::sin(beta));
        Sample s;
        try {
            const FlightResult fr = free_flight(table, {ci + ri * n, n, 0.0}, i);
            if (fr.hit && fr.event.scatterer == j) {
                s.hit = true;
                s.image = fr.event.image_center;
                s.g = cross(fr.event.v_in, fr.event.normal);
            }
        } catch (const Error&) {
        }
        return s;
    };

    std::vector<double> roots;
    // grid anchored on the axis so the on-axis orbit is a sample point
    std::vector<double> betas(samples + 1);
    std::vector<Sample> probes(samples + 1);
    for (int k = 0; k <= samples; ++k) {
        betas[k] = axis_angle - kPi + 2.0 * kPi * k / samples;
        probes[k] = probe(betas[k]);
    }
    for (int k = 0; k < samples; ++k) {
        const Sample& a = probes[k];
        const Sample& b = probes[k + 1];
        if (a.hit && a.g == 0.0) {
            roots.push_back(betas[k]);
            continue;
        }
        if (!a.hit || !b.hit || (a.image - b.image).norm() > 1e-9 || a.g * b.g > 0) continue;
        if (b.g == 0.0) continue;  // picked up as the next sample
        double lo = betas[k], hi = betas[k + 1], glo = a.g;
        for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            const Sample m = probe(mid);
            if (!m.hit) break;
            if ((m.g > 0) == (glo > 0)) lo = mid, glo = m.g;
            else hi = mid;
        }
        roots.push_back(0.5 * (lo + hi));
    }

    std::vector<OrbitStability> out;
    for (double beta : roots) {
        const Vec2 n(std::cos(beta), std::sin(beta));
        auto o = close_orbit(table, i, j, ci + ri * n, n);
        if (!o) continue;
        o->on_axis = std::abs(std::remainder(beta - axis_angle, 2.0 * kPi)) < 1e-9;
        out.push_back(*o);
    }
    return out;
}

BilliardTable two_disk_table(double r, double gap, double field, double tilt) {
    const double d = 2.0 * r + gap;
    const Vec2 L(3.0 * d, 3.0 * d);
    const Vec2 E = tilt == 0.0 ? Vec2(field, 0.0) : Vec2(field * std::cos(tilt), field * std::sin(tilt));
    return BilliardTable(L, {{Vec2(d, 1.5 * d), r}, {Vec2(2.0 * d, 1.5 * d), r}}, E);
}

OrbitScan orbit_scan(double r, const std::vector<double>& r_times_E, const std::vector<double>& gaps,
                     const std::vector<double>& tilts, int chord_samples) {
    OrbitScan scan;
    for (double rE : r_times_E) {
        for (double gap : gaps) {
          for (double tilt : tilts) {
            const BilliardTable table = two_disk_table(r, gap, rE / r, tilt);
            OrbitScanRow row;
            row.r_times_E = rE;
            row.gap = gap;
            row.tilt = tilt;
            row.convex = weyl_convexity(table).convex;
            if (tilt == 0.0) row.axis = periodic_orbit_stability(table, 0, 1);
            const auto chords = normal_chord_orbits(table, 0, 1, chord_samples);
            row.chords = static_cast<int>(chords.size());
            for (const auto& c : chords) {
                if (c.kind == OrbitClass::Elliptic) {
                    ++row.elliptic_chords;
                    if (!row.first_elliptic) row.first_elliptic = c;
                }
                if (row.convex && c.kind != OrbitClass::Hyperbolic) scan.hyperbolic_in_convex_regime = false;
            }
            if (row.convex && row.axis && row.axis->kind != OrbitClass::Hyperbolic)
                scan.hyperbolic_in_convex_regime = false;
            if (rE > 1.0 && row.elliptic_chords > 0 && !scan.first_elliptic_past_threshold)
                scan.first_elliptic_past_threshold = row;
            scan.rows.push_back(row);
          }
        }
    }
    return scan;
}

}  // namespace weylflow
