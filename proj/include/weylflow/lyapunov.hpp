#pragma once

#include <cstdint>
#include <vector>

#include "weylflow/tangent.hpp"

namespace weylflow {

struct LyapunovWindow {
    double t = 0.0;
    Vec exponents;  // running estimates, descending
    double s_bar = 0.0;
    double jsep_margin = 0.0;  // mean over the window
};

/// Exponents of the quotient system (xi~, chi~), in the frame-coordinate
/// Euclidean structure of the normalized frames.
struct LyapunovReport {
    int dim = 0;
    Vec exponents;  // descending, 2(n-1) entries
    double s_bar = 0.0;  // time average of -phi(v)
    double pairing_residual = 0.0;
    double trace_residual = 0.0;
    double jsep_margin_mean = 0.0;
    double jsep_margin_min = 0.0;
    double growth_rate = 0.0;  // sum of the leading n-1 exponents
    double decay_rate = 0.0;   // sum of the trailing n-1 exponents
    double T = 0.0;
    double dt = 0.0;
    int renorm_every = 10;
    std::uint64_t seed = 0;
    bool finite_time = false;  // chart is not compact
    PhaseState final_state;
    std::vector<LyapunovWindow> windows;
};

struct LyapunovOptions {
    double T = 100.0;
    double dt = 1e-3;
    int renorm_every = 10;
    /// Steps per recorded window; 0 picks about 100 windows.
    long window_steps = 0;
    std::uint64_t seed = 0;
};

/// Benettin/QR on 2(n-1) copies of the quotient linearization, starting
/// from the identity. On half-space charts whose Weyl structure is invariant
/// under x-translations and dilations the base point is moved back to height
/// 1 by that isometry at renormalization times, so long runs do not drift to
/// heights where the metric under- or overflows.
LyapunovReport lyapunov_spectrum(const Flow& flow, const PhaseState& initial, const LyapunovOptions& options);

/// max_i |lambda_i + lambda_{N+1-i} - s_bar|.
double pairing_check(const LyapunovReport& report);

/// |sum lambda - (n-1) s_bar|.
double trace_check(const LyapunovReport& report);

/// (sum of leading n-1 exponents, sum of trailing n-1 exponents).
std::pair<double, double> splitting_volume_rates(const LyapunovReport& report);

}  // namespace weylflow
