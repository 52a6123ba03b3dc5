#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "weylflow/metric.hpp"
#include "weylflow/potential.hpp"

namespace weylflow {

/// Thermostat field at a point, in both index positions.
/// d_vector(k, m) = d_m E^k and d_form(j, m) = d_m phi_j with phi_j = g_jk E^k.
struct FieldJet {
    Vec vector;
    Mat d_vector;
    Vec form;
    Mat d_form;
};

/// Constant contravariant components E^k.
struct ConstantField {
    Vec components;
};

/// E = -grad U, index raised with g.
struct GradientField {
    Potential potential;
};

/// E^k given componentwise by Fourier series.
struct FourierVectorField {
    std::vector<FourierField> components;
};

/// phi = constant covector; locally potential on a torus but not exact.
struct ClosedOneFormField {
    Vec covector;
};

/// Left-invariant field on SOL: a e^{-z} d_x + b e^{z} d_y + c d_z.
struct SolLeftInvariantField {
    Vec coefficients;
};

class VectorField;

/// (E1, E2) on a product chart; each factor sees only its own coordinates.
struct ProductField {
    std::shared_ptr<const VectorField> first;
    std::shared_ptr<const VectorField> second;
    int first_dim = 0;
};

/// (-grad W + E) / (2 (h - W)): the field whose W-flow reproduces the
/// isoenergetic dynamics on the level h.
struct ReducedField {
    std::shared_ptr<const VectorField> base;
    FourierField potential;
    double energy = 1.0;
};

class VectorField {
public:
    using Kind = std::variant<ConstantField, GradientField, FourierVectorField, ClosedOneFormField,
                              SolLeftInvariantField, ProductField, ReducedField>;

    VectorField(int dim, Kind kind);

    static VectorField zero(int dim) { return VectorField(dim, ConstantField{Vec::Zero(dim)}); }

    int dim() const { return dim_; }
    const Kind& kind() const { return kind_; }
    std::string kind_name() const;

    /// Requires a metric jet of order >= 1 at the same point.
    FieldJet evaluate(const Vec& q, const MetricJet& metric) const;

    /// True when E vanishes identically by construction.
    bool identically_zero() const;

private:
    int dim_;
    Kind kind_;
};

}  // namespace weylflow
