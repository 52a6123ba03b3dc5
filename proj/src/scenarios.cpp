#include "weylflow/scenarios.hpp"

namespace weylflow::scenarios {

WeylScenario flat_torus(const Vec& field) {
    const int n = static_cast<int>(field.size());
    return WeylScenario("flat_torus" + std::to_string(n),
                        Metric(FlatTorusMetric{std::vector<double>(static_cast<std::size_t>(n), 1.0)}),
                        VectorField(n, ConstantField{field}));
}

WeylScenario example_1_2(double a) {
    return WeylScenario("example_1_2", Metric(FlatTorusMetric{{1.0, 1.0}}),
                        VectorField(2, ConstantField{Vec::Unit(2, 0) * a}));
}

WeylScenario torus3_constant(double a) {
    return WeylScenario("torus3_constant", Metric(FlatTorusMetric{{1.0, 1.0, 1.0}}),
                        VectorField(3, ConstantField{Vec::Unit(3, 0) * a}));
}

WeylScenario flat_torus_gradient(const FourierField& potential) {
    const int n = potential.dim();
    return WeylScenario("flat_torus_gradient",
                        Metric(FlatTorusMetric{std::vector<double>(static_cast<std::size_t>(n), 1.0)}),
                        VectorField(n, GradientField{potential}));
}

WeylScenario constant_curvature(int dim, double curvature) {
    return WeylScenario("constant_curvature", Metric(ConstantCurvatureMetric{dim, curvature}),
                        VectorField::zero(dim));
}

WeylScenario hyperbolic_geodesic() {
    return WeylScenario("hyperbolic_geodesic", Metric(ConstantCurvatureMetric{2, -1.0}),
                        VectorField::zero(2));
}

WeylScenario hyperbolic_potential(double c) {
    return WeylScenario("hyperbolic_potential", Metric(ConstantCurvatureMetric{2, -1.0}),
                        VectorField(2, GradientField{LogHeightPotential{2, 1, c}}));
}

WeylScenario sol_scan() {
    return WeylScenario("sol_scan", Metric(SolMetric{}),
                        VectorField(3, SolLeftInvariantField{Vec::Unit(3, 2)}));
}

WeylScenario product_mixed() {
    const WeylScenario a = flat_torus_gradient(
        FourierField(2, {{{1, 0}, 0.15, 0.0}, {{0, 1}, 0.0, 0.1}}));
    Vec e2(2);
    e2 << 0.4, 0.3;
    const WeylScenario b = flat_torus(e2);
    return product_scenario(a, b);
}

WeylScenario product_constant() {
    Vec e1(2);
    e1 << 0.7, 0.2;
    Vec e2(2);
    e2 << -0.3, 0.5;
    return product_scenario(flat_torus(e1), flat_torus(e2));
}

}  // namespace weylflow::scenarios
