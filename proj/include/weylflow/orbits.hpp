#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "weylflow/billiards.hpp"

namespace weylflow {

enum class OrbitClass { Hyperbolic, Elliptic, Parabolic };

const char* orbit_class_name(OrbitClass c);

/// Period-2 orbit bouncing between two scatterers, hitting both normally.
struct OrbitStability {
    int first = -1, second = -1;
    Vec2 impact_first, impact_second;  // table coordinates (unwrapped pair)
    double departure_angle = 0.0;      // polar angle of the departure normal on `first`
    Mat2 monodromy;
    double trace = 0.0, det = 0.0;
    std::complex<double> eig1, eig2;
    OrbitClass kind = OrbitClass::Hyperbolic;
    bool on_axis = false;
};

/// Classifies by |trace| against 2 with a 1e-12 band for parabolic.
OrbitClass classify_monodromy(const Mat2& m);

/// The bouncing orbit along the line of centers of scatterers i and j
/// (nearest images). Needs that line parallel to E (any line when E = 0),
/// else UnsupportedConfigurationError; NoOrbitError when the axis segment
/// is blocked.
OrbitStability periodic_orbit_stability(const BilliardTable& table, int i, int j);

/// All period-2 normal chords from i to j found by sampling the departure
/// angle on i (samples points) and bisecting sign changes of the incidence
/// sine at j. Includes the on-axis orbit when it exists.
std::vector<OrbitStability> normal_chord_orbits(const BilliardTable& table, int i, int j, int samples = 720);

/// Two disks of radius r, gap L, along the x-axis of a torus sized so that no
/// other image interferes; E = field (cos tilt, sin tilt).
BilliardTable two_disk_table(double r, double gap, double field, double tilt = 0.0);

struct OrbitScanRow {
    double r_times_E = 0.0;
    double gap = 0.0;
    double tilt = 0.0;  // angle between E and the line of centers
    bool convex = true;
    std::optional<OrbitStability> axis;  // only for tilt = 0
    int chords = 0;            // normal chords found (including the axis)
    int elliptic_chords = 0;
    std::optional<OrbitStability> first_elliptic;
};

struct OrbitScan {
    std::vector<OrbitScanRow> rows;
    bool hyperbolic_in_convex_regime = true;   // every chord hyperbolic where r|E| < 1
    std::optional<OrbitScanRow> first_elliptic_past_threshold;
};

/// Scans r|E| (outer loop) x gaps x field tilts for fixed radius r.
OrbitScan orbit_scan(double r, const std::vector<double>& r_times_E, const std::vector<double>& gaps,
                     const std::vector<double>& tilts = {0.0}, int chord_samples = 360);

}  // namespace weylflow
