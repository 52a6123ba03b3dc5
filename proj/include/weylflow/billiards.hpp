#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace weylflow {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

struct Scatterer {
    Vec2 center;
    double radius = 0.0;
};

/// Flat torus [0, Lx) x [0, Ly) with circular scatterers and a constant
/// field E. Flights are computed in field-aligned coordinates, obtained by
/// rotating the table frame by -rotation().
class BilliardTable {
public:
    /// Throws InvalidTableError for non-positive radii or overlapping
    /// scatterers (including torus translates; minimum gap 1e-9).
    BilliardTable(Vec2 periods, std::vector<Scatterer> scatterers, Vec2 field);

    const Vec2& periods() const { return periods_; }
    const std::vector<Scatterer>& scatterers() const { return scatterers_; }
    const Vec2& field() const { return field_; }
    double field_norm() const { return field_.norm(); }
    /// Angle of E in the table frame (0 when E = 0).
    double rotation() const { return rotation_; }
    /// Table frame -> field-aligned frame.
    const Mat2& to_aligned() const { return to_aligned_; }
    /// True when every straight line meets a scatterer.
    bool finite_horizon() const { return finite_horizon_; }
    double min_radius() const;
    Vec2 wrap(const Vec2& q) const;
    /// Same geometry, different field.
    BilliardTable with_field(const Vec2& field) const { return BilliardTable(periods_, scatterers_, field); }

private:
    Vec2 periods_;
    std::vector<Scatterer> scatterers_;
    Vec2 field_;
    double rotation_ = 0.0;
    Mat2 to_aligned_;
    bool finite_horizon_ = false;
};

/// True when every straight line on the torus meets a scatterer: checks all
/// rational directions whose line spacing exceeds the smallest blocking width.
bool has_finite_horizon(const Vec2& periods, const std::vector<Scatterer>& scatterers);

struct BilliardState {
    Vec2 q;
    Vec2 v;
    double t = 0.0;
};

/// Exact thermostat trajectory from (q0, v0) with |v0| = 1. In aligned
/// coordinates with E = (a, 0) and v = (cos th, sin th), th' = -a sin th,
/// so tan(th/2) = tan(th0/2) e^{-at}; for |th0| > pi/2 the cotangent form
/// cot(th/2) = cot(th0/2) e^{at} is used instead.
class FlightCurve {
public:
    FlightCurve(const BilliardTable& table, const Vec2& q0, const Vec2& v0);

    Vec2 position(double t) const;
    Vec2 velocity(double t) const;
    /// a times the aligned x-displacement: int_0^t phi(v) ds.
    double phi_integral(double t) const;
    /// int_0^t exp(int_0^s phi) ds.
    double jacobi_integral(double t) const;
    /// Aligned-frame displacement (x(t) - x0, y(t) - y0).
    Vec2 aligned_displacement(double t) const;

private:
    Vec2 q0_;
    Mat2 from_aligned_;
    double a_;
    bool tangent_branch_;  // true: tan(th/2) form, false: cot(th/2) form
    double w0_;            // tan(th0/2) or cot(th0/2)
    double theta0_;
};

struct CollisionEvent {
    double flight_time = 0.0;
    int scatterer = -1;
    Vec2 image_center;  // center of the scatterer image that was hit
    Vec2 impact;        // on the circle, table coordinates (unwrapped)
    Vec2 normal;        // outward unit normal at impact
    Vec2 v_in;
    Vec2 v_out;
    double angle_in = 0.0;  // angle between -v_in and N
    double angle_out = 0.0;
};

struct FlightResult {
    bool hit = false;
    CollisionEvent event;  // valid when hit (v_out left empty)
    BilliardState end;     // at impact (incoming v) or at the cap
};

/// Advances along the exact curve to the first scatterer crossing, or to the
/// cap length 10 max(Lx, Ly). depart_from skips the immediate root at the
/// scatterer image just left. Throws InvalidStateError when starting inside
/// a scatterer.
FlightResult free_flight(const BilliardTable& table, const BilliardState& state,
                         std::optional<int> depart_from = std::nullopt);

/// v' = v - 2 <v,N> N. Throws GrazingError when |<v,N>| < 1e-10.
Vec2 reflect(const CollisionEvent& event);

struct ConvexityReport {
    bool convex = false;  // strict: margin > 0
    double margin = 0.0;  // min over boundaries of 1/r + <N,E> = 1/r - |E|
};

ConvexityReport weyl_convexity(const BilliardTable& table);

/// Samples of one flight in aligned coordinates (x, y), unwrapped.
std::vector<Vec2> flight_samples_aligned(const BilliardTable& table, const BilliardState& state, double T, int count);

/// Maps aligned samples z through F(z) = e^{|E| z}, fits the line through the
/// first and last images and returns the largest distance of the others from
/// it. Throws ZeroFieldError for E = 0 and TooFewSamplesError below 3 samples.
double exp_map_check(const std::vector<Vec2>& aligned_samples, double field_norm);

/// Quotient tangent map (xi~, chi~) across a flight of duration t, frame
/// e = J v (v rotated by +90 degrees): chi~ constant, xi~ -> e^{-int phi}
/// (xi~ + J(t) chi~).
Mat2 flight_tangent_map(const FlightCurve& curve, double t);

/// Quotient tangent map across a reflection, from the saltation matrix of
/// the impact, with frame e = J v on both sides. At normal incidence it is
/// -[[1, 0], [2 (1/r + <N,E>), 1]].
Mat2 reflection_tangent_map(const BilliardTable& table, const CollisionEvent& event);

struct BilliardRun {
    std::vector<CollisionEvent> events;
    std::vector<double> times;  // elapsed time at each collision
    int grazing_count = 0;
    int capped_flights = 0;
    double total_time = 0.0;
    BilliardState final_state;
    bool with_tangent = false;
    double lambda1 = 0.0;  // top exponent per unit time
    double lambda1_per_collision = 0.0;
};

/// Iterates free_flight + reflect. Grazing events are reflected by the raw
/// formula, counted, and their tangent contribution dropped (tangent reset).
/// More than 100 consecutive capped flights raise InfiniteHorizonError.
/// depart_from marks an initial state sitting on that scatterer's boundary.
BilliardRun run_billiard(const BilliardTable& table, const BilliardState& initial, int n_collisions,
                         bool with_tangent, std::optional<int> depart_from = std::nullopt);

/// Per-segment retrace: from each impact k+1 with reversed incoming
/// velocity, one flight must land on impact k with velocity -v_out_k.
/// Returns the largest impact-point deviation.
double retrace_check(const BilliardTable& table, const BilliardRun& run, int max_segments = 100);

}  // namespace weylflow
