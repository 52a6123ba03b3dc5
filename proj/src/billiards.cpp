#include "weylflow/billiards.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "weylflow/errors.hpp"

namespace weylflow {

namespace {

constexpr double kGrazing = 1e-10;
constexpr double kTimeTol = 1e-12;

Vec2 perp(const Vec2& v) { return Vec2(-v.y(), v.x()); }

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

Mat2 rotation_matrix(double angle) {
    Mat2 m;
    m << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return m;
}

std::string vec_string(const Vec2& v) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << v.x() << ", " << v.y() << ")";
    return os.str();
}

// Nearest torus image of center c to point p.
Vec2 nearest_image(const Vec2& c, const Vec2& p, const Vec2& L) {
    return Vec2(c.x() + std::round((p.x() - c.x()) / L.x()) * L.x(),
                c.y() + std::round((p.y() - c.y()) / L.y()) * L.y());
}

}  // namespace

BilliardTable::BilliardTable(Vec2 periods, std::vector<Scatterer> scatterers, Vec2 field)
    : periods_(periods), scatterers_(std::move(scatterers)), field_(field) {
    if (!(periods_.x() > 0 && periods_.y() > 0) || !periods_.allFinite())
        throw InvalidTableError("torus periods must be positive, got " + vec_string(periods_));
    if (scatterers_.empty()) throw InvalidTableError("table has no scatterers");
    if (!field_.allFinite()) throw InvalidTableError("field is not finite");
    for (std::size_t i = 0; i < scatterers_.size(); ++i) {
        const auto& s = scatterers_[i];
        if (!(s.radius > 0) || !std::isfinite(s.radius))
            throw InvalidTableError("scatterer " + std::to_string(i) + " has non-positive radius");
    }
    for (std::size_t i = 0; i < scatterers_.size(); ++i) {
        for (std::size_t j = i; j < scatterers_.size(); ++j) {
            const Vec2 base = nearest_image(scatterers_[j].center, scatterers_[i].center, periods_);
            for (int dx = -1; dx <= 1; ++dx) {
                for (int dy = -1; dy <= 1; ++dy) {
                    if (i == j && dx == 0 && dy == 0) continue;
                    const Vec2 img = base + Vec2(dx * periods_.x(), dy * periods_.y());
                    const double gap = (img - scatterers_[i].center).norm() - scatterers_[i].radius -
                                       scatterers_[j].radius;
                    if (!(gap > 1e-9))
                        throw InvalidTableError("scatterers " + std::to_string(i) + " and " + std::to_string(j) +
                                                " overlap or touch (gap " + std::to_string(gap) + ")");
                }
            }
        }
    }
    rotation_ = field_.norm() > 0 ? std::atan2(field_.y(), field_.x()) : 0.0;
    to_aligned_ = rotation_matrix(-rotation_);
    finite_horizon_ = has_finite_horizon(periods_, scatterers_);
}

double BilliardTable::min_radius() const {
    double r = scatterers_.front().radius;
    for (const auto& s : scatterers_) r = std::min(r, s.radius);
    return r;
}

Vec2 BilliardTable::wrap(const Vec2& q) const {
    Vec2 w(q.x() - std::floor(q.x() / periods_.x()) * periods_.x(),
           q.y() - std::floor(q.y() / periods_.y()) * periods_.y());
    if (w.x() >= periods_.x()) w.x() = 0.0;
    if (w.y() >= periods_.y()) w.y() = 0.0;
    return w;
}

bool has_finite_horizon(const Vec2& periods, const std::vector<Scatterer>& scatterers) {
    double r_max = 0.0;
    for (const auto& s : scatterers) r_max = std::max(r_max, s.radius);
    const double area = periods.x() * periods.y();
    const double len_max = area / (2.0 * r_max);
    const int pmax = static_cast<int>(std::ceil(len_max / periods.x()));
    const int qmax = static_cast<int>(std::ceil(len_max / periods.y()));
    for (int p = 0; p <= pmax; ++p) {
        for (int q = -qmax; q <= qmax; ++q) {
            if (p == 0 && q != 1) continue;
            if (std::gcd(p, std::abs(q)) != 1) continue;
            const Vec2 d(p * periods.x(), q * periods.y());
            const double len = d.norm();
            const double P = area / len;
            if (P <= 2.0 * r_max) continue;
            const Vec2 n = perp(d) / len;
            std::vector<std::pair<double, double>> blocked;
            for (const auto& s : scatterers) {
                double a = std::fmod(n.dot(s.center) - s.radius, P);
                if (a < 0) a += P;
                blocked.emplace_back(a, a + 2.0 * s.radius);
            }
            std::sort(blocked.begin(), blocked.end());
            const double start = blocked.front().first;
            double reach = blocked.front().second;
            bool gap = false;
            for (int pass = 0; pass < 2 && !gap; ++pass) {
                for (const auto& [a, b] : blocked) {
                    const double lo = a + pass * P, hi = b + pass * P;
                    if (lo > start + P) break;
                    if (lo > reach) {
                        gap = true;
                        break;
                    }
                    reach = std::max(reach, hi);
                }
            }
            if (!gap && reach < start + P) gap = true;
            if (gap) return false;
        }
    }
    return true;
}

FlightCurve::FlightCurve(const BilliardTable& table, const Vec2& q0, const Vec2& v0)
    : q0_(q0), from_aligned_(table.to_aligned().transpose()), a_(table.field_norm()) {
    const Vec2 va = (table.to_aligned() * v0).normalized();
    theta0_ = std::atan2(va.y(), va.x());
    tangent_branch_ = va.x() >= 0;
    w0_ = tangent_branch_ ? va.y() / (1.0 + va.x()) : va.y() / (1.0 - va.x());
}

Vec2 FlightCurve::aligned_displacement(double t) const {
    if (a_ == 0.0) return Vec2(std::cos(theta0_) * t, std::sin(theta0_) * t);
    const double a = a_;
    const double w2 = w0_ * w0_;
    if (tangent_branch_) {
        const double s2 = w2 / (1.0 + w2);  // sin^2(theta0/2)
        const double x = t + std::log1p(-s2 * -std::expm1(-2.0 * a * t)) / a;
        const double y = 2.0 / a * std::atan(w0_ * -std::expm1(-a * t) / (1.0 + w2 * std::exp(-a * t)));
        return Vec2(x, y);
    }
    const double c2 = w2 / (1.0 + w2);  // cos^2(theta0/2)
    const double x = -t + std::log1p(c2 * std::expm1(2.0 * a * t)) / a;
    const double y = 2.0 / a * std::atan(w0_ * std::expm1(a * t) / (1.0 + w2 * std::exp(a * t)));
    return Vec2(x, y);
}

Vec2 FlightCurve::position(double t) const { return q0_ + from_aligned_ * aligned_displacement(t); }

Vec2 FlightCurve::velocity(double t) const {
    Vec2 va;
    if (a_ == 0.0) {
        va = Vec2(std::cos(theta0_), std::sin(theta0_));
    } else if (tangent_branch_) {
        const double u = w0_ * std::exp(-a_ * t);
        const double d = 1.0 + u * u;
        va = Vec2((1.0 - u * u) / d, 2.0 * u / d);
    } else {
        const double c = w0_ * std::exp(a_ * t);
        const double d = 1.0 + c * c;
        va = Vec2((c * c - 1.0) / d, 2.0 * c / d);
    }
    return from_aligned_ * va;
}

double FlightCurve::phi_integral(double t) const { return a_ * aligned_displacement(t).x(); }

double FlightCurve::jacobi_integral(double t) const {
    if (a_ == 0.0) return t;
    const double w2 = w0_ * w0_;
    if (tangent_branch_) return (std::expm1(a_ * t) - w2 * std::expm1(-a_ * t)) / (a_ * (1.0 + w2));
    return (-std::expm1(-a_ * t) + w2 * std::expm1(a_ * t)) / (a_ * (1.0 + w2));
}

FlightResult free_flight(const BilliardTable& table, const BilliardState& state, std::optional<int> depart_from) {
    const Vec2& L = table.periods();
    const auto& scatterers = table.scatterers();
    const double cap = 10.0 * std::max(L.x(), L.y());
    double arc = table.min_radius() / 4.0;
    if (table.field_norm() > 0) arc = std::min(arc, 0.25 / table.field_norm());

    Vec2 depart_center;
    if (depart_from) {
        if (*depart_from < 0 || *depart_from >= static_cast<int>(scatterers.size()))
            throw InvalidStateError("departure scatterer index out of range");
        depart_center = nearest_image(scatterers[*depart_from].center, state.q, L);
    } else {
        for (const auto& s : scatterers) {
            const Vec2 c = nearest_image(s.center, state.q, L);
            if ((state.q - c).norm() <= s.radius)
                throw InvalidStateError("initial point " + vec_string(state.q) + " lies inside a scatterer");
        }
    }

    const FlightCurve curve(table, state.q, state.v);
    auto dist = [&](const Vec2& c, double r, double t) { return (curve.position(t) - c).norm() - r; };

    FlightResult result;
    for (double t0 = 0.0; t0 < cap; t0 += arc) {
        const double t1 = std::min(t0 + arc, cap);
        const Vec2 p0 = curve.position(t0);
        double best_t = INFINITY;
        int best_i = -1;
        Vec2 best_c;
        for (std::size_t i = 0; i < scatterers.size(); ++i) {
            const double r = scatterers[i].radius;
            const Vec2 base = nearest_image(scatterers[i].center, p0, L);
            for (int dx = -1; dx <= 1; ++dx) {
                for (int dy = -1; dy <= 1; ++dy) {
                    const Vec2 c = base + Vec2(dx * L.x(), dy * L.y());
                    double lo = t0;
                    if ((p0 - c).norm() - r > (t1 - t0) + 1e-12) continue;
                    const bool departing = depart_from && static_cast<int>(i) == *depart_from &&
                                           (c - depart_center).norm() < 1e-9 && t0 == 0.0;
                    if (departing) {
                        lo = 1e-9;
                        if (dist(c, r, lo) <= 0) continue;
                    } else if (dist(c, r, lo) <= 0) {
                        throw InvalidStateError("point " + vec_string(p0) + " lies inside scatterer " +
                                                std::to_string(i));
                    }
                    double hi = t1;
                    if (dist(c, r, hi) > 0) {
                        // golden-section search for an interior dip below zero
                        constexpr double g = 0.6180339887498949;
                        double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
                        double f1 = dist(c, r, x1), f2 = dist(c, r, x2);
                        double a = lo, b = hi;
                        while (b - a > kTimeTol && f1 > 0 && f2 > 0) {
                            if (f1 < f2) {
                                b = x2, x2 = x1, f2 = f1;
                                x1 = b - g * (b - a), f1 = dist(c, r, x1);
                            } else {
                                a = x1, x1 = x2, f1 = f2;
                                x2 = a + g * (b - a), f2 = dist(c, r, x2);
                            }
                        }
                        if (f1 <= 0) hi = x1;
                        else if (f2 <= 0) hi = x2;
                        else continue;
                    }
                    while (hi - lo > kTimeTol) {
                        const double mid = 0.5 * (lo + hi);
                        (dist(c, r, mid) > 0 ? lo : hi) = mid;
                    }
                    const double t_hit = 0.5 * (lo + hi);
                    if (t_hit < best_t) best_t = t_hit, best_i = static_cast<int>(i), best_c = c;
                }
            }
        }
        if (best_i >= 0) {
            const double r = scatterers[best_i].radius;
            const Vec2 p = curve.position(best_t);
            CollisionEvent& e = result.event;
            e.flight_time = best_t;
            e.scatterer = best_i;
            e.image_center = best_c;
            e.normal = (p - best_c).normalized();
            e.impact = best_c + r * e.normal;
            e.v_in = curve.velocity(best_t);
            e.angle_in = std::acos(std::clamp(-e.v_in.dot(e.normal), -1.0, 1.0));
            result.hit = true;
            result.end = {e.impact, e.v_in, state.t + best_t};
            return result;
        }
    }
    result.end = {curve.position(cap), curve.velocity(cap), state.t + cap};
    return result;
}

Vec2 reflect(const CollisionEvent& event) {
    const double vn = event.v_in.dot(event.normal);
    if (std::abs(vn) < kGrazing)
        throw GrazingError("grazing collision with scatterer " + std::to_string(event.scatterer) + " at " +
                           vec_string(event.impact));
    return event.v_in - 2.0 * vn * event.normal;
}

ConvexityReport weyl_convexity(const BilliardTable& table) {
    ConvexityReport rep;
    rep.margin = INFINITY;
    for (const auto& s : table.scatterers()) rep.margin = std::min(rep.margin, 1.0 / s.radius - table.field_norm());
    rep.convex = rep.margin > 0;
    return rep;
}

std::vector<Vec2> flight_samples_aligned(const BilliardTable& table, const BilliardState& state, double T,
                                         int count) {
    if (count < 1) throw TooFewSamplesError("need at least one sample");
    const FlightCurve curve(table, state.q, state.v);
    std::vector<Vec2> out;
    const Vec2 q0a = table.to_aligned() * state.q;
    for (int k = 0; k < count; ++k) {
        const double t = count == 1 ? 0.0 : T * k / (count - 1);
        out.push_back(q0a + curve.aligned_displacement(t));
    }
    return out;
}

double exp_map_check(const std::vector<Vec2>& z, double field_norm) {
    if (!(field_norm > 0)) throw ZeroFieldError("exponential map needs a nonzero field");
    if (z.size() < 3) throw TooFewSamplesError("exponential map check needs at least 3 samples, got " +
                                               std::to_string(z.size()));
    auto F = [&](const Vec2& p) {
        const double m = std::exp(field_norm * p.x());
        return Vec2(m * std::cos(field_norm * p.y()), m * std::sin(field_norm * p.y()));
    };
    const Vec2 w0 = F(z.front());
    const Vec2 dir = F(z.back()) - w0;
    if (dir.norm() == 0) throw TooFewSamplesError("first and last samples coincide");
    const Vec2 u = dir.normalized();
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < z.size(); ++k) worst = std::max(worst, std::abs(cross(u, F(z[k]) - w0)));
    return worst;
}

Mat2 flight_tangent_map(const FlightCurve& curve, double t) {
    const double damp = std::exp(-curve.phi_integral(t));
    Mat2 m;
    m << damp, damp * curve.jacobi_integral(t), 0.0, 1.0;
    return m;
}

Mat2 reflection_tangent_map(const BilliardTable& table, const CollisionEvent& event) {
    const Vec2& E = table.field();
    const Vec2& n = event.normal;
    const Vec2& vm = event.v_in;
    const Vec2 vp = event.v_out.squaredNorm() > 0 ? event.v_out : reflect(event);
    const double r = table.scatterers()[event.scatterer].radius;
    const double c = n.dot(vm);
    const Mat2 S = Mat2::Identity() - 2.0 * n * n.transpose();
    const Mat2 P = Mat2::Identity() - n * n.transpose();
    // d v_out / d q at fixed v_in
    const Mat2 dvq = -2.0 / r * (n * (vm.transpose() * P) + c * P);
    auto accel = [&](const Vec2& v) -> Vec2 { return E - E.dot(v) * v; };
    const Vec2 em = perp(vm), ep = perp(vp);

    Mat2 out;
    for (int col = 0; col < 2; ++col) {
        const double xi = col == 0 ? 1.0 : 0.0;
        const double chi = col == 1 ? 1.0 : 0.0;
        const Vec2 dq = xi * em;
        const Vec2 dv = (chi - E.dot(vm) * xi) * em;
        const double dt = -n.dot(dq) / c;
        const Vec2 dq_p = dq + (vm - vp) * dt;
        const Vec2 dv_p = dvq * dq + S * dv + (dvq * vm + S * accel(vm) - accel(vp)) * dt;
        const Vec2 chi_vec = dv_p + E.dot(vp) * dq_p - dq_p.dot(vp) * E;
        out(0, col) = dq_p.dot(ep);
        out(1, col) = chi_vec.dot(ep);
    }
    return out;
}

BilliardRun run_billiard(const BilliardTable& table, const BilliardState& initial, int n_collisions,
                         bool with_tangent, std::optional<int> depart_from) {
    BilliardRun run;
    run.with_tangent = with_tangent;
    BilliardState s = initial;
    std::optional<int> depart = depart_from;
    const Vec2 w_init = Vec2(1.0, 1.0).normalized();
    Vec2 w = w_init;
    double log_growth = 0.0, stat_time = 0.0;
    int counted = 0, consecutive_caps = 0;
    while (static_cast<int>(run.events.size()) < n_collisions) {
        const FlightResult fr = free_flight(table, s, depart);
        const FlightCurve curve(table, s.q, s.v);
        const double tf = fr.hit ? fr.event.flight_time : fr.end.t - s.t;
        Vec2 seg = with_tangent ? Vec2(flight_tangent_map(curve, tf) * w) : w;
        if (!fr.hit) {
            ++run.capped_flights;
            if (++consecutive_caps > 100)
                throw InfiniteHorizonError("more than 100 consecutive capped flights");
            s = {table.wrap(fr.end.q), fr.end.v, fr.end.t};
            depart.reset();
            if (with_tangent) {
                const double nrm = seg.norm();
                log_growth += std::log(nrm);
                stat_time += tf;
                w = seg / nrm;
            }
            continue;
        }
        consecutive_caps = 0;
        CollisionEvent e = fr.event;
        bool grazing = false;
        try {
            e.v_out = reflect(e);
        } catch (const GrazingError&) {
            grazing = true;
            ++run.grazing_count;
            e.v_out = e.v_in - 2.0 * e.v_in.dot(e.normal) * e.normal;
        }
        e.angle_out = std::acos(std::clamp(e.v_out.dot(e.normal), -1.0, 1.0));
        if (with_tangent) {
            if (grazing) {
                w = w_init;
            } else {
                seg = reflection_tangent_map(table, e) * seg;
                const double nrm = seg.norm();
                if (!std::isfinite(nrm) || nrm == 0)
                    throw OverflowError("tangent vector lost at collision " + std::to_string(run.events.size()));
                log_growth += std::log(nrm);
                stat_time += tf;
                ++counted;
                w = seg / nrm;
            }
        }
        const Vec2 shift = e.impact - table.wrap(e.impact);
        e.impact -= shift;
        e.image_center -= shift;
        run.events.push_back(e);
        run.times.push_back(fr.end.t);
        s = {e.impact, e.v_out, fr.end.t};
        depart = e.scatterer;
    }
    run.final_state = s;
    run.total_time = s.t - initial.t;
    if (with_tangent && stat_time > 0) {
        run.lambda1 = log_growth / stat_time;
        run.lambda1_per_collision = counted > 0 ? log_growth / counted : 0.0;
    }
    return run;
}

double retrace_check(const BilliardTable& table, const BilliardRun& run, int max_segments) {
    const Vec2& L = table.periods();
    auto torus_gap = [&](const Vec2& a, const Vec2& b) {
        Vec2 d = a - b;
        d.x() -= std::round(d.x() / L.x()) * L.x();
        d.y() -= std::round(d.y() / L.y()) * L.y();
        return d.norm();
    };
    double worst = 0.0;
    const int n = std::min<int>(static_cast<int>(run.events.size()) - 1, max_segments);
    for (int k = 0; k < n; ++k) {
        const CollisionEvent& from = run.events[k + 1];
        const CollisionEvent& to = run.events[k];
        const FlightResult back = free_flight(table, {from.impact, -from.v_in, 0.0}, from.scatterer);
        if (!back.hit || back.event.scatterer != to.scatterer) return INFINITY;
        worst = std::max(worst, torus_gap(back.event.impact, to.impact));
        worst = std::max(worst, (back.event.v_in + to.v_out).norm());
    }
    return worst;
}

}  // namespace weylflow
