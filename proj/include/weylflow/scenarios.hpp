#pragma once

#include "weylflow/scenario.hpp"

// Ready-made Weyl scenarios used by the presets, the tests and the
// acceptance suite.
namespace weylflow::scenarios {

/// Flat torus with unit periods and a constant field.
WeylScenario flat_torus(const Vec& field);

/// Flat 2-torus, E = (a, 0).
WeylScenario example_1_2(double a = 1.0);

/// Flat 3-torus, E = (a, 0, 0).
WeylScenario torus3_constant(double a = 1.0);

/// Flat 2-torus, E = -grad U.
WeylScenario flat_torus_gradient(const FourierField& potential);

/// Constant curvature chart with E = 0.
WeylScenario constant_curvature(int dim, double curvature);

/// Upper half-plane, K = -1, E = 0.
WeylScenario hyperbolic_geodesic();

/// Upper half-plane, K = -1, E = -grad(c ln y): |E| = c, div E = c, Khat = -1 - c.
WeylScenario hyperbolic_potential(double c = 0.2);

/// SOL with the left-invariant field d_z.
WeylScenario sol_scan();

/// Product of a flat 2-torus with E1 = -grad U (|E1| nonconstant) and a flat
/// 2-torus with constant E2.
WeylScenario product_mixed();

/// Product of two flat 2-tori with constant fields.
WeylScenario product_constant();

}  // namespace weylflow::scenarios
