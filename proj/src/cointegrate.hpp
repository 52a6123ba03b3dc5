#pragma once

// Shared RK4 co-integration of the base flow, the normalized frame and a
// block of quotient tangent vectors (columns of xi / chi).

#include "weylflow/tangent.hpp"

namespace weylflow::detail {

struct CoState {
    PhaseState base;
    Mat frame;
    Mat xi;   // (n-1) x m
    Mat chi;  // (n-1) x m
    Vec xi0;  // m
    double phi_int = 0.0;
};

CoState co_derivative(const Flow& flow, const CoState& s);

/// One RK4 step of the whole system, then base projection.
CoState co_step(const Flow& flow, const CoState& s, double dt);

/// True when the scenario is a half-space chart whose Weyl structure is
/// invariant under (x, y) -> ((x - x0) / l, y / l): E = 0 or E = -grad(c ln y).
bool admits_recentring(const WeylScenario& scenario);

/// Moves the state back to height 1 (and x = 0) by that isometry when the
/// height leaves [1/4, 4]. Frame coordinates of tangent data are unchanged.
void recentre(CoState& s);

CoState co_initial(const Flow& flow, const PhaseState& initial, int tangent_columns);

}  // namespace weylflow::detail
